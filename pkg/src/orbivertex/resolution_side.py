"""Open-closed mirror map, superpotential and Picard-Fuchs checks on the resolution."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InternalInconsistency
from .hypergeom_series import (EpsFunction, QSeries, gamma_ratio,
                               gamma_ratio_eps, reciprocal_gamma_int)

OPEN_VAR = "q0"


def resolution_vars(cs):
    """Series variables: one q per age-one element in G_s order, then q0."""
    tp = cs.points
    return tuple(f"q_{tp.name(g)}" for g in cs.smalls) + (OPEN_VAR,)


def closed_var(cs, key):
    return f"q_{cs.points.name(cs.points.position(key))}"


def bounded_vectors(length, total):
    """Nonnegative integer vectors of the given length with sum ≤ total."""
    if length == 0:
        yield ()
        return
    for head in range(total + 1):
        for tail in bounded_vectors(length - 1, total - head):
            yield (head,) + tail


def pairing(cs, m, i):
    """⟨m, l_i⟩ = Σ_g m_g l_i^(g)."""
    return sum(mg * cs.charges[g][i] for mg, g in zip(m, cs.smalls))


def _indices(cs):
    return range(len(cs.points))


@dataclass
class MirrorMap:
    """Quantum corrections of the open-closed mirror map.

    ``closed`` maps each G_s position to its correction series, ``open`` is
    the correction of the open coordinate. All series use
    ``resolution_vars`` and never involve q0.
    """

    vars: tuple
    closed: dict
    open: QSeries
    degree: int

    def correction(self, cs, key):
        return self.closed[cs.points.position(key)]

    def flat_coordinates(self, cs):
        """Q_g = q_g·exp(C_g) and Q0 = q0·exp(C0), truncated at the same degree."""
        out = {}
        for k, g in enumerate(cs.smalls):
            unit = tuple(int(j == k) for j in range(len(self.vars)))
            out[g] = QSeries.monomial(self.vars, unit, degree=self.degree) * self.closed[g].exp_of_series()
        unit0 = (0,) * (len(self.vars) - 1) + (1,)
        out["0"] = QSeries.monomial(self.vars, unit0, degree=self.degree) * self.open.exp_of_series()
        return out

    def to_dict(self, cs):
        names = cs.points.keys
        return {
            "vars": list(self.vars),
            "degree": self.degree,
            "closed": {names[g]: s.to_json() for g, s in self.closed.items()},
            "open": self.open.to_json(),
        }

    @classmethod
    def from_dict(cls, data, cs):
        closed = {cs.points.position(k): QSeries.from_json(v) for k, v in data["closed"].items()}
        return cls(tuple(data["vars"]), closed, QSeries.from_json(data["open"]), data["degree"])


@dataclass
class Potential:
    """A disc potential as a truncated series, tagged by side and framing."""

    series: QSeries
    side: str
    framing: dict = field(default_factory=dict)

    def to_dict(self):
        return {"side": self.side,
                "framing": {k: str(v) for k, v in self.framing.items()},
                "series": self.series.to_json()}

    @classmethod
    def from_dict(cls, data):
        framing = {k: Fraction(v) for k, v in data.get("framing", {}).items()}
        return cls(QSeries.from_json(data["series"]), data["side"], framing)


def frobenius_coefficient(cs, m, m0, r=None, r0=0):
    """A_{m,m0}(r, r0) with every Γ-ratio read as a limit."""
    r = tuple(Fraction(x) for x in (r or (0,) * len(cs.smalls)))
    r0 = Fraction(r0)
    out = Fraction(1)
    for i in _indices(cs):
        l0 = cs.l0[i]
        base = 1 + r0 * l0 + pairing(cs, r, i)
        out *= gamma_ratio(base, base + m0 * l0 + pairing(cs, m, i))
        if out == 0:
            return out
    out *= gamma_ratio(1 + r0, 1 + r0 + m0)
    out *= gamma_ratio(1 - r0, 1 - r0 - m0)
    return out


def frobenius_eps(cs, m, m0, direction, direction0=0):
    """A_{m,m0}(ε·direction, ε·direction0) as an exact function of ε."""
    direction = tuple(Fraction(x) for x in direction)
    direction0 = Fraction(direction0)
    out = EpsFunction([1])
    for i in _indices(cs):
        l0 = cs.l0[i]
        slope = direction0 * l0 + pairing(cs, direction, i)
        out = out * gamma_ratio_eps(1, 1 + m0 * l0 + pairing(cs, m, i), slope)
    out = out * gamma_ratio_eps(1, 1 + m0, direction0)
    out = out * gamma_ratio_eps(1, 1 - m0, -direction0)
    return out


def frobenius_derivative(cs, m, m0, wrt):
    """∂A_{m,m0}/∂r at the origin, for ``wrt`` a G_s position or "0"."""
    s = len(cs.smalls)
    if wrt == "0":
        fn = frobenius_eps(cs, m, m0, (0,) * s, 1)
    else:
        k = cs.smalls.index(wrt)
        fn = frobenius_eps(cs, m, m0, tuple(int(j == k) for j in range(s)), 0)
    return fn.coefficient(1)


def _kernel_term(cs, m, h):
    """(−1)^⟨m,l_h⟩ Γ(−⟨m,l_h⟩) / ∏_{i≠h} Γ(1+⟨m,l_i⟩), zero unless ⟨m,l_h⟩ < 0."""
    k = pairing(cs, m, h)
    if k >= 0:
        return Fraction(0)
    value = Fraction((-1) ** (-k)) * gamma_ratio(-k, 1)
    for i in _indices(cs):
        if i != h:
            value *= reciprocal_gamma_int(1 + pairing(cs, m, i))
            if value == 0:
                break
    return value


def mirror_corrections(cs, degree, method="closed"):
    """Corrections C_g and C0 up to total q-degree ``degree``.

    ``method="closed"`` sums the closed Γ kernels; ``method="frobenius"``
    differentiates the Frobenius coefficients A_{m,0} instead.
    """
    vars_ = resolution_vars(cs)
    s = len(cs.smalls)
    closed = {g: {} for g in cs.smalls}
    opened = {}
    for m in bounded_vectors(s, degree):
        if not any(m):
            continue
        exp = m + (0,)
        if method == "frobenius":
            for g in cs.smalls:
                closed[g][exp] = frobenius_derivative(cs, m, 0, g)
            opened[exp] = frobenius_derivative(cs, m, 0, "0")
            continue
        kernels = {h: _kernel_term(cs, m, h) for h in cs.smalls}
        for g in cs.smalls:
            closed[g][exp] = -sum(cs.charges[g][h] * kernels[h] for h in cs.smalls)
        opened[exp] = -sum(cs.l0[h] * kernels[h] for h in cs.smalls)
    mm = MirrorMap(
        vars_,
        {g: QSeries.from_real(vars_, c, degree) for g, c in closed.items()},
        QSeries.from_real(vars_, opened, degree),
        degree,
    )
    _assert_closed_only(mm)
    return mm


def _assert_closed_only(mm):
    zero = Fraction(0)
    for series in list(mm.closed.values()) + [mm.open]:
        for exp in series.terms:
            if exp[-1] != 0:
                raise InternalInconsistency("mirror-map correction depends on q0")
            if all(x == zero for x in exp):
                raise InternalInconsistency("mirror-map correction has a constant term")


def _general_term(cs, m, m0):
    value = Fraction((-1) ** m0, m0)
    for i in _indices(cs):
        k = m0 * cs.l0[i] + pairing(cs, m, i)
        if cs.l0[i] < 0:
            if k >= 0:
                return Fraction(0)
            value *= Fraction((-1) ** (-k)) * gamma_ratio(-k, 1)
        else:
            if k < 0:
                return Fraction(0)
            value *= reciprocal_gamma_int(1 + k)
    return value


def _split_term(cs, m, m0):
    f = cs.framing
    i0, i1, i2 = cs.i0, cs.i1, cs.i2
    p1 = pairing(cs, m, i1)
    p2 = pairing(cs, m, i2)
    if f >= 0:
        if (f + 1) * m0 <= p2:
            return Fraction(0)
        sign = 1
    else:
        if f * m0 + p1 >= 0:
            return Fraction(0)
        sign = -1
    value = Fraction(sign)
    for i in _indices(cs):
        if i not in (i0, i1, i2):
            value *= reciprocal_gamma_int(1 + pairing(cs, m, i))
    value *= reciprocal_gamma_int(1 + m0 + pairing(cs, m, i0))
    if value == 0:
        return value
    value *= gamma_ratio((f + 1) * m0 - p2, 1 + f * m0 + p1)
    value *= Fraction((-1) ** ((f * m0) % 2), m0)
    # Sign of ∏ [(−1)^{l_{i2}^(g)} q_g]^{m_g}
    value *= (-1) ** (p2 % 2)
    return value


def superpotential(cs, degree, form="split"):
    """W(q, q0; f) up to total degree ``degree`` in (q, q0).

    ``form="split"`` uses the framing-sign specific expression, ``"general"``
    the sign-constrained sum over all divisors. They agree termwise.
    """
    if form not in ("split", "general"):
        raise ValueError(f"unknown form {form!r}")
    term = _split_term if form == "split" else _general_term
    vars_ = resolution_vars(cs)
    s = len(cs.smalls)
    coeffs = {}
    for m0 in range(1, degree + 1):
        for m in bounded_vectors(s, degree - m0):
            c = term(cs, m, m0)
            if c:
                coeffs[m + (m0,)] = c
    series = QSeries.from_real(vars_, coeffs, degree)
    return Potential(series, "resolution", {"f": Fraction(cs.framing)})


class LogSeries:
    """A + Σ_v B_v·log v with truncated series A, B_v."""

    def __init__(self, const, logs=None):
        self.const = const
        self.logs = {v: b for v, b in (logs or {}).items() if b}

    @property
    def vars(self):
        return self.const.vars

    def theta(self, var):
        const = self.const.theta(var)
        if var in self.logs:
            const = const + self.logs[var]
        return LogSeries(const, {v: b.theta(var) for v, b in self.logs.items()})

    def __add__(self, other):
        logs = dict(self.logs)
        for v, b in other.logs.items():
            logs[v] = logs[v] + b if v in logs else b
        return LogSeries(self.const + other.const, logs)

    def scale(self, c):
        return LogSeries(self.const * Fraction(c), {v: b * Fraction(c) for v, b in self.logs.items()})

    def times_monomial(self, exp, degree):
        mono = QSeries.monomial(self.vars, exp, degree=degree)
        return LogSeries(mono * self.const, {v: mono * b for v, b in self.logs.items()})

    def is_zero(self):
        return not self.const and not self.logs

    def first_nonzero(self):
        for part, series in [("const", self.const)] + sorted(self.logs.items()):
            if series:
                exp = min(series.terms)
                return part, exp, series.terms[exp]
        return None


def _linear(coeffs, series):
    out = None
    for var, c in coeffs.items():
        if c:
            term = series.theta(var).scale(c)
            out = term if out is None else out + term
    if out is None:
        return series.scale(0)
    return out


def _pochhammer(coeffs, n, series):
    """(L)_n applied to ``series`` for L = Σ coeffs[v]·Θ_v."""
    out = series
    for k in range(n):
        out = _linear(coeffs, out) + out.scale(-k)
    return out


def _divisor_operator(cs, vars_, i):
    coeffs = {v: cs.charges[g][i] for v, g in zip(vars_, cs.smalls)}
    coeffs[OPEN_VAR] = cs.l0[i]
    return coeffs


def _closed_operator(cs, vars_, g, series, degree):
    s = len(cs.smalls)
    pos = series
    for i in _indices(cs):
        n = cs.charges[g][i]
        if n > 0:
            pos = _pochhammer(_divisor_operator(cs, vars_, i), n, pos)
    neg = series
    for i in _indices(cs):
        n = cs.charges[g][i]
        if n < 0:
            neg = _pochhammer(_divisor_operator(cs, vars_, i), -n, neg)
    k = cs.smalls.index(g)
    shift = tuple(int(j == k) for j in range(s)) + (0,)
    return pos + neg.times_monomial(shift, degree).scale(-1)


def _open_operator(cs, vars_, series, degree):
    theta0 = {OPEN_VAR: 1}
    pos = _linear(theta0, series)
    neg = _linear(theta0, series)
    for i in _indices(cs):
        n = cs.l0[i]
        if n > 0:
            pos = _pochhammer(_divisor_operator(cs, vars_, i), n, pos)
        elif n < 0:
            neg = _pochhammer(_divisor_operator(cs, vars_, i), -n, neg)
    shift = (0,) * len(cs.smalls) + (1,)
    return pos + neg.times_monomial(shift, degree)


@dataclass
class PFReport:
    degree: int
    checked: list
    failures: list

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {"degree": self.degree, "ok": self.ok, "checked": self.checked,
                "failures": [{"operator": o, "function": f, "part": p,
                              "exp": [str(x) for x in e], "value": str(v)}
                             for o, f, p, e, v in self.failures]}


def pf_annihilation_check(cs, degree, mirror=None):
    """Apply every Picard-Fuchs operator to 1, Ω_g and Ω_0 and collect residuals.

    Θ-operators preserve degree and the q-shifts raise it, so the residual is
    exact through ``degree``; every coefficient there must vanish.
    """
    mirror = mirror or mirror_corrections(cs, degree)
    vars_ = mirror.vars
    names = cs.points.keys
    one = QSeries.constant(vars_, 1, degree)
    functions = {"1": LogSeries(one)}
    for k, g in enumerate(cs.smalls):
        functions[f"Omega_{names[g]}"] = LogSeries(mirror.closed[g], {vars_[k]: one})
    functions["Omega_0"] = LogSeries(mirror.open, {OPEN_VAR: one})

    checked, failures = [], []
    for fname, fn in functions.items():
        ops = {f"D_{names[g]}": _closed_operator(cs, vars_, g, fn, degree) for g in cs.smalls}
        ops["D_0"] = _open_operator(cs, vars_, fn, degree)
        for oname, residual in ops.items():
            checked.append((oname, fname))
            bad = residual.first_nonzero()
            if bad is not None:
                part, exp, phases = bad
                failures.append((oname, fname, part, exp, phases.get(0, phases)))
    return PFReport(degree, checked, failures)
