"""Orbifold mirror map, disc function and disc potential of [ℂ³/G] with an outer brane."""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InternalInconsistency, NotApplicable, WeightNotAdmissible
from .group_core import age, frac_part
from .hypergeom_series import (QSeries, falling_factorial, gamma_ratio,
                               reciprocal_gamma_int)
from .resolution_side import Potential, bounded_vectors

OPEN_VAR = "x0"


def _floor(x):
    return x.numerator // x.denominator


@dataclass(frozen=True)
class TorusWeights:
    lambda0: Fraction
    lambda1: Fraction
    lambda2: Fraction
    a: Fraction

    @property
    def weights(self):
        return (self.lambda0, self.lambda1, self.lambda2)


def torus_weights(group, a):
    """Weights (1/|G/G0|, −a, a − 1/|G/G0|); a must lie in (1/|G|)ℤ.

    Every framing produced by the brane correspondence lies in (1/|G|)ℤ,
    while (1/|G/G0|)ℤ would exclude them whenever G0 is nontrivial.
    """
    a = Fraction(a)
    quotient = group.quotient_order(0)
    if (a * group.order).denominator != 1:
        raise WeightNotAdmissible(f"a = {a} is not in (1/{group.order})ℤ")
    lam0 = Fraction(1, quotient)
    return TorusWeights(lam0, -a, a - lam0, a)


def orbifold_vars(group):
    return tuple(f"x_{group.label(g)}" for g in group.small) + (OPEN_VAR,)


def disc_function(group, k, d, weights):
    """D_k(d, a) for an element index ``k`` and winding ``d`` ≥ 1."""
    if d < 1:
        raise ValueError("winding d must be positive")
    torus_weights(group, weights.a)
    lam0, lam1, lam2 = weights.weights
    f0, f1, f2 = group.shifts(k)
    if f0 != frac_part(lam0 * d):
        return Fraction(0)
    inv = reciprocal_gamma_int(1 + lam0 * d - f0)
    if inv == 0:
        return inv
    value = Fraction(1, group.g0_order) * Fraction(d) ** (-age(group.elements[k])) * inv
    return value * gamma_ratio(-lam2 * d + f2, 1 + lam1 * d - f1)


@dataclass
class OrbifoldMirror:
    """X_h(x) for h ∈ G_s and the open rule X0 = (−1)^{1+λ2}·x0."""

    vars: tuple
    closed: dict
    open_phase: object = None

    def to_dict(self, group):
        out = {"vars": list(self.vars),
               "closed": {group.label(h): s.to_json() for h, s in self.closed.items()}}
        if self.open_phase is not None:
            out["X0"] = {"phase": str(self.open_phase), "var": OPEN_VAR}
        return out


def _shift_sums(group, k):
    sums = [Fraction(0)] * 3
    for kg, g in zip(k, group.small):
        for j, x in enumerate(group.shifts(g)):
            sums[j] += kg * x
    return sums


def _element_of(group, k):
    return group.index_of_shifts(tuple(_shift_sums(group, k)))


def orbifold_mirror_map(group, degree, weights=None):
    """X_h for every h ∈ G_s, summed over k with Σ k_g g = h and Σ k ≤ degree."""
    vars_ = orbifold_vars(group)
    s = len(group.small)
    coeffs = {h: {} for h in group.small}
    for k in bounded_vectors(s, degree):
        if not any(k):
            continue
        h = _element_of(group, k)
        if h not in coeffs:
            continue
        sums = _shift_sums(group, k)
        fh = group.shifts(h)
        value = Fraction(-1)
        for j in range(3):
            value *= gamma_ratio(sums[j], fh[j])
        sign = (-1) ** sum(k)
        denom = 1
        for kg in k:
            denom *= factorial(kg)
        value = value * sign / denom
        if value:
            coeffs[h][k + (0,)] = value
    closed = {h: QSeries.from_real(vars_, c, degree) for h, c in coeffs.items()}
    phase = None if weights is None else 1 + weights.lambda2
    for h, series in closed.items():
        unit = tuple(int(g == h) for g in group.small) + (0,)
        if series.extract(unit) != 1:
            raise InternalInconsistency(f"X_{group.label(h)} does not start with x_{group.label(h)}")
    return OrbifoldMirror(vars_, closed, phase)


def disc_coefficient(group, weights, k, d):
    """Real part of C(k; d): everything except the formal x0 phase."""
    lam0, lam1, lam2 = weights.weights
    s0, s1, s2 = _shift_sums(group, k)
    if frac_part(s0) != frac_part(lam0 * d):
        return Fraction(0)
    inv = reciprocal_gamma_int(1 - s0 + lam0 * d)
    if inv == 0:
        return inv
    value = inv * gamma_ratio(s2 - lam2 * d, 1 - s1 + lam1 * d)
    value *= (-1) ** (_floor(s2) % 2)
    for kg in k:
        value /= factorial(kg)
    return value / d


def orbifold_disc_potential(group, weights, degree, k_bounds=None):
    """The small disc potential F_{0,1} in (x_g, x0) with the x0 phase kept formal.

    Without ``k_bounds`` the sum runs over total degree Σk + d ≤ degree.
    With ``k_bounds`` (one bound per G_s element) it runs over the box
    d ≤ degree, k_g ≤ bound, and the result is left untruncated.
    """
    torus_weights(group, weights.a)
    vars_ = orbifold_vars(group)
    s = len(group.small)
    phase = 1 + weights.lambda2
    scale = Fraction(1, group.g0_order)
    terms = {}
    if k_bounds is None:
        domain = ((k, d) for d in range(1, degree + 1) for k in bounded_vectors(s, degree - d))
        trunc = degree
    else:
        domain = ((k, d) for d in range(1, degree + 1) for k in _box(k_bounds))
        trunc = None
    for k, d in domain:
        c = disc_coefficient(group, weights, k, d)
        if c:
            terms[k + (d,)] = {phase * d: scale * c}
    series = QSeries(vars_, terms, trunc)
    return Potential(series, "orbifold", {"a": weights.a})


def _box(bounds):
    if not bounds:
        yield ()
        return
    for head in range(bounds[0] + 1):
        for tail in _box(bounds[1:]):
            yield (head,) + tail


def orbifold_charge_vectors(group, weights, points=None):
    """Charge vectors l̂^(g) and l̂^(0) over (z0, z1, z2, z_g…, z+, z−)."""
    s = len(group.small)
    quotient = group.quotient_order(0)
    out = {}
    for pos, g in enumerate(group.small):
        n = group.elements[g].order
        row = [-n * x for x in group.shifts(g)] + [0] * s + [0, 0]
        row[3 + pos] = n
        out[g] = tuple(Fraction(x) for x in row)
    open_row = [lam * quotient for lam in weights.weights] + [0] * s + [quotient, -quotient]
    out["0"] = tuple(Fraction(x) for x in open_row)
    if points is not None:
        vt = points.vtilde
        for g in group.small:
            row = out[g]
            if any(sum(row[i] * vt[i][c] for i in range(3 + s)) for c in range(3)):
                raise InternalInconsistency(f"l̂ for {group.label(g)} is not a relation")
    return out


def recursion_check(group, weights, degree):
    """Verify the two shift recursions of C(k; d) on every index in range.

    C(k; d) includes the x0 phase, whose ratio between d + |G/G0| and d is
    an integer sign. The winding recursion uses the factor (−d)_{|G/G0|},
    matching the x0 part of the associated operator. It is stated for
    λ1 = −a ≥ 0 with a ∈ (1/|G/G0|)ℤ only and raises NotApplicable otherwise. Returns the number
    of identities checked.
    """
    lam = weights.weights
    quotient = group.quotient_order(0)
    if lam[1] < 0:
        raise NotApplicable("winding recursion assumes λ1 = −a ≥ 0")
    if (lam[1] * quotient).denominator != 1:
        raise NotApplicable("winding recursion needs a in (1/|G/G0|)ℤ")
    phase_step = (-1) ** (_floor((1 + lam[2]) * quotient) % 2)
    s = len(group.small)
    count = 0
    for d in range(1, degree + 1):
        for k in bounded_vectors(s, degree):
            base = disc_coefficient(group, weights, k, d)
            sums = _shift_sums(group, k)
            for pos, g in enumerate(group.small):
                n = group.elements[g].order
                shifted = list(k)
                shifted[pos] += n
                lhs = falling_factorial(k[pos] + n, n) * disc_coefficient(group, weights, tuple(shifted), d)
                rhs = base
                for j, fg in enumerate(group.shifts(g)):
                    rhs *= falling_factorial(-sums[j] + lam[j] * d, int(n * fg))
                if lhs != rhs:
                    raise InternalInconsistency(f"k-recursion fails at k={k}, d={d}, g={group.label(g)}")
                count += 1
            lhs = falling_factorial(d + quotient, quotient) * phase_step
            for j in (0, 1):
                lhs *= falling_factorial(-sums[j] + lam[j] * (d + quotient), int(lam[j] * quotient))
            lhs *= disc_coefficient(group, weights, k, d + quotient)
            rhs = (falling_factorial(-d, quotient)
                   * falling_factorial(-sums[2] + lam[2] * d, int(-lam[2] * quotient))
                   * base)
            if lhs != rhs:
                raise InternalInconsistency(f"d-recursion fails at k={k}, d={d}")
            count += 1
    return count
