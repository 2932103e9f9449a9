"""Exact Γ-ratio conventions and truncated multivariate Puiseux series.

A series coefficient may carry a formal factor (−1)^r with rational r. The
integer part of r is folded into the rational value, so each exponent vector
maps to ``{phase: value}`` with phase in [0, 1). Only phase 0 is real.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (GammaPole, NonIntegerDifference,
                     NonIntegralPhaseInComparison, TruncationMismatch)


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def gamma_ratio(z1, z2):
    """Γ(z1)/Γ(z2) for z1 − z2 ∈ ℤ, as the limit of Γ(z1+x)/Γ(z2+x) at x → 0.

    Raises GammaPole when the limit is infinite.
    """
    z1, z2 = _frac(z1), _frac(z2)
    d = z1 - z2
    if d.denominator != 1:
        raise NonIntegerDifference(f"Γ({z1})/Γ({z2}): difference {d} is not an integer")
    d = int(d)
    if d >= 0:
        out = Fraction(1)
        for k in range(d):
            out *= z2 + k
        return out
    den = Fraction(1)
    for k in range(-d):
        den *= z1 + k
    if den == 0:
        raise GammaPole(f"Γ({z1})/Γ({z2}) is infinite")
    return 1 / den


def reciprocal_gamma_int(n):
    """1/Γ(n) for an integer n (zero at the poles)."""
    n = _frac(n)
    if n.denominator != 1:
        raise NonIntegerDifference(f"1/Γ({n}) is not rational")
    return Fraction(0) if n <= 0 else Fraction(1, factorial(int(n) - 1))


def falling_factorial(x, n):
    """(x)_n = x(x−1)⋯(x−n+1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = Fraction(1)
    for k in range(n):
        out = out * (x - k)
    return out


def psi_gamma_limit(n):
    """Limit of Ψ(x)/Γ(x) as x → −n: equals (−1)^{n+1} n!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Fraction((-1) ** (n + 1) * factorial(n))


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _strip_low(p):
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return k, p[k:]


class EpsFunction:
    """Exact rational function num(ε)/den(ε) of one infinitesimal ε.

    Products of factors (z + cε) and their reciprocals stay exact, so zeros
    and poles at ε = 0 cancel correctly before the Laurent expansion.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        self.num = [Fraction(x) for x in num]
        self.den = [Fraction(x) for x in den]
        if not any(self.den):
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def linear(cls, c0, c1):
        return cls([c0, c1])

    def _lift(self, other):
        return other if isinstance(other, EpsFunction) else EpsFunction([other])

    def __mul__(self, other):
        other = self._lift(other)
        return EpsFunction(_poly_mul(self.num, other.num), _poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if not any(other.num):
            raise ZeroDivisionError("division by zero function")
        return EpsFunction(_poly_mul(self.num, other.den), _poly_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __add__(self, other):
        other = self._lift(other)
        a = _poly_mul(self.num, other.den)
        b = _poly_mul(other.num, self.den)
        n = max(len(a), len(b))
        a += [Fraction(0)] * (n - len(a))
        b += [Fraction(0)] * (n - len(b))
        return EpsFunction([x + y for x, y in zip(a, b)], _poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return EpsFunction([-x for x in self.num], self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def expand(self, order):
        """Laurent coefficients {k: c} for all k ≤ order."""
        vn, num = _strip_low(self.num)
        vd, den = _strip_low(self.den)
        if not num:
            return {}
        shift = vn - vd
        count = order - shift + 1
        if count <= 0:
            return {}
        num = num + [Fraction(0)] * count
        den = den + [Fraction(0)] * count
        out = []
        for k in range(count):
            acc = num[k] - sum(out[j] * den[k - j] for j in range(max(0, k - len(den) + 1), k))
            out.append(acc / den[0])
        return {k + shift: c for k, c in enumerate(out) if c}

    def coefficient(self, k):
        return self.expand(k).get(k, Fraction(0))


def gamma_ratio_eps(z1, z2, eps_coef):
    """Γ(z1 + cε)/Γ(z2 + cε) as an exact rational function of ε."""
    z1, z2 = _frac(z1), _frac(z2)
    d = z1 - z2
    if d.denominator != 1:
        raise NonIntegerDifference(f"difference {d} is not an integer")
    d = int(d)
    out = EpsFunction([1])
    if d >= 0:
        for k in range(d):
            out = out * EpsFunction.linear(z2 + k, eps_coef)
        return out
    for k in range(-d):
        out = out / EpsFunction.linear(z1 + k, eps_coef)
    return out


def _key(exp):
    return tuple(Fraction(e) for e in exp)


def _norm_phase(phase):
    """Split a rational phase r into (sign (−1)^⌊r⌋, fractional part)."""
    phase = Fraction(phase)
    whole = phase.numerator // phase.denominator
    return (-1 if whole % 2 else 1), phase - whole


@dataclass
class QSeries:
    """Truncated series Σ c·(−1)^φ·∏ v^e with rational exponents e.

    ``terms`` maps exponent tuples to ``{φ: c}``, φ ∈ [0,1). ``degree`` bounds
    the total degree of retained terms (``None`` means untruncated).
    """

    vars: tuple
    terms: dict
    degree: object = None

    def __post_init__(self):
        self.vars = tuple(self.vars)
        if self.degree is not None:
            self.degree = Fraction(self.degree)
        clean = {}
        for exp, phases in self.terms.items():
            exp = _key(exp)
            if len(exp) != len(self.vars):
                raise TruncationMismatch("exponent length differs from variable count")
            if self.degree is not None and sum(exp) > self.degree:
                continue
            kept = {}
            for ph, val in phases.items():
                sign, frac = _norm_phase(ph)
                kept[frac] = kept.get(frac, 0) + sign * Fraction(val)
            kept = {ph: v for ph, v in kept.items() if v}
            if kept:
                clean[exp] = kept
        self.terms = clean

    @classmethod
    def zero(cls, vars, degree=None):
        return cls(vars, {}, degree)

    @classmethod
    def monomial(cls, vars, exp, coef=1, phase=0, degree=None):
        return cls(vars, {tuple(exp): {Fraction(phase): Fraction(coef)}}, degree)

    @classmethod
    def constant(cls, vars, coef=1, degree=None):
        return cls.monomial(vars, (0,) * len(vars), coef, 0, degree)

    @classmethod
    def from_real(cls, vars, coeffs, degree=None):
        """Build from a mapping exponent → rational (phase 0)."""
        return cls(vars, {e: {Fraction(0): c} for e, c in coeffs.items()}, degree)

    def _check(self, other):
        if self.vars != other.vars:
            raise TruncationMismatch(f"variables differ: {self.vars} vs {other.vars}")

    def _joint_degree(self, other):
        if self.degree is None:
            return other.degree
        if other.degree is None:
            return self.degree
        return min(self.degree, other.degree)

    def __add__(self, other):
        self._check(other)
        out = {e: dict(p) for e, p in self.terms.items()}
        for e, phases in other.terms.items():
            slot = out.setdefault(e, {})
            for ph, v in phases.items():
                slot[ph] = slot.get(ph, 0) + v
        return QSeries(self.vars, out, self._joint_degree(other))

    def __neg__(self):
        return self.scalar_mul(-1)

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, c, phase=0):
        out = {}
        for e, phases in self.terms.items():
            out[e] = {ph + phase: v * c for ph, v in phases.items()}
        return QSeries(self.vars, out, self.degree)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scalar_mul(Fraction(other))
        self._check(other)
        deg = self._joint_degree(other)
        out = {}
        for e1, p1 in self.terms.items():
            d1 = sum(e1)
            for e2, p2 in other.terms.items():
                if deg is not None and d1 + sum(e2) > deg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                slot = out.setdefault(e, {})
                for ph1, v1 in p1.items():
                    for ph2, v2 in p2.items():
                        slot[ph1 + ph2] = slot.get(ph1 + ph2, 0) + v1 * v2
        return QSeries(self.vars, out, deg)

    __rmul__ = __mul__

    def truncate(self, degree):
        return QSeries(self.vars, self.terms, degree)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.vars == other.vars and self.terms == other.terms

    def exponents(self):
        return sorted(self.terms)

    def is_real(self):
        return all(set(p) <= {0} for p in self.terms.values())

    def extract(self, exp):
        """Coefficient at ``exp``; requires a real (integral-phase) coefficient."""
        phases = self.terms.get(_key(exp), {})
        if any(ph != 0 for ph in phases):
            raise NonIntegralPhaseInComparison(f"coefficient at {exp} carries phase {set(phases)}")
        return phases.get(Fraction(0), Fraction(0))

    def real_items(self):
        """Sorted (exponent, rational) pairs; raises on non-real phases."""
        return [(e, self.extract(e)) for e in sorted(self.terms)]

    def map_coefficients(self, func):
        """Apply ``func(exp, value) -> value`` termwise, phases untouched."""
        out = {}
        for e, phases in self.terms.items():
            out[e] = {ph: func(e, v) for ph, v in phases.items()}
        return QSeries(self.vars, out, self.degree)

    def theta(self, var):
        """Logarithmic derivative v ∂/∂v."""
        k = self.vars.index(var)
        return self.map_coefficients(lambda e, v: e[k] * v)

    def monomial_substitute(self, mapping, new_vars, degree=None):
        """Replace each variable by a phased monomial in ``new_vars``.

        ``mapping[var] = (exponents over new_vars, phase)``; a term's phase
        picks up exponent·phase for each substituted variable.
        """
        new_vars = tuple(new_vars)
        subs = []
        for v in self.vars:
            exp, phase = mapping[v]
            subs.append((tuple(Fraction(x) for x in exp), Fraction(phase)))
        out = {}
        for e, phases in self.terms.items():
            new_e = [Fraction(0)] * len(new_vars)
            extra = Fraction(0)
            for k, (sub_exp, sub_phase) in zip(e, subs):
                for j, x in enumerate(sub_exp):
                    new_e[j] += k * x
                extra += k * sub_phase
            slot = out.setdefault(tuple(new_e), {})
            for ph, val in phases.items():
                slot[ph + extra] = slot.get(ph + extra, 0) + val
        return QSeries(new_vars, out, degree)

    def exp_of_series(self):
        """exp(self) for a series with no constant term, within the truncation."""
        if self.degree is None:
            raise TruncationMismatch("exp needs a truncation degree")
        zero = (Fraction(0),) * len(self.vars)
        if zero in self.terms:
            raise ValueError("exp_of_series requires zero constant term")
        if not self.terms:
            return QSeries.constant(self.vars, 1, self.degree)
        low = min(sum(e) for e in self.terms)
        if low <= 0:
            raise ValueError("exp_of_series requires positive-degree terms")
        result = QSeries.constant(self.vars, 1, self.degree)
        power = QSeries.constant(self.vars, 1, self.degree)
        n = 1
        while n * low <= self.degree:
            power = power * self * Fraction(1, n)
            result = result + power
            n += 1
        return result

    def to_json(self):
        def s(x):
            return str(Fraction(x))
        terms = []
        for e in sorted(self.terms):
            for ph in sorted(self.terms[e]):
                terms.append({"exp": [s(x) for x in e], "coef": s(self.terms[e][ph]), "phase": s(ph)})
        out = {"vars": list(self.vars), "terms": terms}
        if self.degree is not None:
            out["degree"] = s(self.degree)
        return out

    @classmethod
    def from_json(cls, data):
        terms = {}
        for t in data["terms"]:
            e = tuple(Fraction(x) for x in t["exp"])
            slot = terms.setdefault(e, {})
            ph = Fraction(t.get("phase", "0"))
            slot[ph] = slot.get(ph, 0) + Fraction(t["coef"])
        deg = data.get("degree")
        return cls(tuple(data["vars"]), terms, Fraction(deg) if deg is not None else None)

    def __repr__(self):
        parts = []
        for e in sorted(self.terms)[:8]:
            for ph, v in self.terms[e].items():
                ph_txt = f"(-1)^{ph}·" if ph else ""
                mono = "·".join(f"{n}^{x}" for n, x in zip(self.vars, e) if x)
                parts.append(f"{ph_txt}{v}·{mono or '1'}")
        more = " + …" if len(self.terms) > 8 else ""
        return f"QSeries({' + '.join(parts) or '0'}{more})"
