"""Change of variables between the two sides and coefficientwise comparison."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import (InternalInconsistency, Mismatch, NoBasisFound,
                     NotEffective, Singular)
from .group_core import group_from_spec
from .hypergeom_series import QSeries
from .intlinalg import identity, inverse, matmul
from .lattice_geometry import triangle_points
from .orbifold_side import (orbifold_disc_potential, orbifold_vars,
                            torus_weights)
from .resolution_side import (OPEN_VAR, Potential, bounded_vectors, pairing,
                              resolution_vars, superpotential)
from .toric_charges import brane_extension, star_bases
from .triangulator import enumerate_triangulations

log = logging.getLogger(__name__)


def _floor(x):
    x = Fraction(x)
    return x.numerator // x.denominator


def charge_block(cs):
    """Matrix with rows h and columns g of the entries l_g^(h), both over G_s."""
    return [[Fraction(cs.charges[h][g]) for g in cs.smalls] for h in cs.smalls]


def b_matrix(cs):
    """The exact inverse b of the charge block, checked on both sides."""
    block = charge_block(cs)
    try:
        b = inverse(block)
    except Singular as exc:
        raise InternalInconsistency("charge block is singular") from exc
    eye = identity(len(block))
    if matmul(b, block) != eye or matmul(block, b) != eye:
        raise InternalInconsistency("b is not a two-sided inverse")
    return b


def framing_correspondence(cs):
    """Orbifold framing a with −a = l_1^(0) + Σ_g l_g^(0) F_g^(1)."""
    tp = cs.points
    lam1 = Fraction(cs.l0[1]) + sum(cs.l0[g] * tp.shifts(g)[1] for g in cs.smalls)
    a = -lam1
    if (a * tp.group.order).denominator != 1:
        raise InternalInconsistency(f"framing a = {a} is not in (1/|G|)ℤ")
    return a


@dataclass(frozen=True)
class Substitution:
    """x-variables as phased monomials in the q-variables.

    ``closed[g]`` is the exponent vector of x_g over ``q_vars``; ``open``
    is that of x0 and ``open_phase`` its formal phase.
    """

    q_vars: tuple
    x_vars: tuple
    closed: dict
    open: tuple
    open_phase: Fraction

    def mapping(self):
        out = {}
        for var, g in zip(self.x_vars, self.closed):
            out[var] = (self.closed[g], 0)
        out[self.x_vars[-1]] = (self.open, self.open_phase)
        return out

    def to_dict(self, names):
        def txt(v):
            return [str(x) for x in v]
        return {
            "q_vars": list(self.q_vars),
            "x_vars": list(self.x_vars),
            "x": {names[g]: txt(e) for g, e in self.closed.items()},
            "x0": {"exp": txt(self.open), "phase": str(self.open_phase)},
        }


def change_of_variables(cs, a=None):
    """x_g = ∏ q_h^{b_gh} and x0 = q0·∏ q_g^{−Σ_h l_h^(0) b_hg} with a formal phase.

    The phase is stored as f − 1 − λ2 so that, against ((−1)^{1+λ2} x0)^d on
    the orbifold side, the product is the integer sign (−1)^{fd}.
    """
    a = framing_correspondence(cs) if a is None else Fraction(a)
    group = cs.group
    weights = torus_weights(group, a)
    b = b_matrix(cs)
    s = len(cs.smalls)
    closed = {}
    for row, g in enumerate(cs.smalls):
        closed[g] = tuple(b[row][col] for col in range(s)) + (Fraction(0),)
    open_exp = []
    for col in range(s):
        open_exp.append(-sum(cs.l0[h] * b[row][col] for row, h in enumerate(cs.smalls)))
    open_exp = tuple(open_exp) + (Fraction(1),)
    phase = Fraction(cs.framing) - 1 - weights.lambda2
    sub = Substitution(resolution_vars(cs), orbifold_vars(group), closed, open_exp, phase)
    _check_z_monomials(cs, sub, weights)
    return sub


def _check_z_monomials(cs, sub, weights):
    """Compose with q(z) and compare against x(z) on the z-exponents."""
    tp = cs.points
    n = len(tp)
    smalls = cs.smalls
    for g in smalls:
        exps = sub.closed[g]
        for i in range(n):
            z = sum(exps[c] * cs.charges[h][i] for c, h in enumerate(smalls))
            want = Fraction(int(i == g)) if i >= 3 else -tp.shifts(g)[i]
            if z != want:
                raise InternalInconsistency(f"x_{tp.name(g)} disagrees with x(z) at z_{tp.name(i)}")
    for i in range(n):
        z = cs.l0[i] + sum(sub.open[c] * cs.charges[h][i] for c, h in enumerate(smalls))
        want = weights.weights[i] if i < 3 else Fraction(0)
        if z != want:
            raise InternalInconsistency(f"x0 disagrees with x0(z) at z_{tp.name(i)}")


def orbifold_index_to_resolution(cs, k, d, b=None):
    """(k, d) ↦ (m, m0) with m_g = Σ_h (k_h − d l_h^(0)) b_hg."""
    b = b or b_matrix(cs)
    s = len(cs.smalls)
    m = tuple(sum((k[r] - d * cs.l0[h]) * b[r][c] for r, h in enumerate(cs.smalls))
              for c in range(s))
    return m, d


def resolution_index_to_orbifold(cs, m, m0):
    """(m, m0) ↦ (k, d) with k_h = m0 l_h^(0) + ⟨m, l_h⟩."""
    return tuple(m0 * cs.l0[h] + pairing(cs, m, h) for h in cs.smalls), m0


def check_index_change(cs, degree):
    """Round-trip the index change on all (m, m0) up to ``degree`` and check the shift identity."""
    b = b_matrix(cs)
    tp = cs.points
    ratio = Fraction(tp.group.g0_order, tp.group.order)
    count = 0
    for m0 in range(1, degree + 1):
        for m in bounded_vectors(len(cs.smalls), degree - m0):
            k, d = resolution_index_to_orbifold(cs, m, m0)
            back, d2 = orbifold_index_to_resolution(cs, k, d, b)
            if back != tuple(Fraction(x) for x in m) or d2 != m0:
                raise InternalInconsistency(f"index change is not invertible at {m}, {m0}")
            lhs = sum(kh * tp.shifts(h)[0] for kh, h in zip(k, cs.smalls))
            rhs = ratio * d - m0 * cs.l0[0] - pairing(cs, m, 0)
            if lhs != rhs:
                raise InternalInconsistency(f"shift identity fails at {m}, {m0}")
            count += 1
    return count


def analytic_part(potential, degree=None):
    """Keep terms whose exponents are all nonnegative integers.

    Returns (potential, dropped) where ``dropped`` lists the exponent vectors
    removed for being fractional or negative. Analytic terms above
    ``degree`` are truncated without being logged.
    """
    series = potential.series
    kept, dropped = {}, []
    for exp, phases in series.terms.items():
        if all(x.denominator == 1 and x >= 0 for x in exp):
            kept[exp] = phases
        else:
            dropped.append(exp)
    if dropped:
        log.info("analytic part dropped %d non-analytic terms", len(dropped))
    out = QSeries(series.vars, kept, degree if degree is not None else series.degree)
    return Potential(out, potential.side, dict(potential.framing)), sorted(dropped)


def comparison_case(cs):
    if cs.group.g0_order == 1:
        return "effective"
    if cs.i1 == 1 and cs.framing < 0:
        return "ineffective-i1"
    if cs.i2 == 2 and cs.framing >= 0:
        return "ineffective-i2"
    return "disjoint"


def k_bounds(cs, degree):
    """Box on k that covers every (m, m0) of total degree ≤ ``degree``."""
    out = []
    for h in cs.smalls:
        widest = max(abs(cs.charges[g][h]) for g in cs.smalls)
        out.append(degree * abs(cs.l0[h]) + degree * widest)
    return tuple(out)


def winding_sign(cs, m0):
    """(−1)^{⌊m0 Σ_g l_g^(0) F_g^(2)⌋}."""
    tp = cs.points
    total = sum(cs.l0[g] * tp.shifts(g)[2] for g in cs.smalls)
    return -1 if _floor(m0 * total) % 2 else 1


@dataclass
class CorrespondenceReport:
    framing_f: int
    framing_a: Fraction
    case: str
    b: list
    substitution: Substitution
    degree: int
    verdicts: list
    dropped: list
    status: str
    signs: str = "none"
    twist: tuple = None
    relation: str = None
    resolution_series: QSeries = field(default=None, repr=False)
    orbifold_series: QSeries = field(default=None, repr=False)

    @property
    def first_mismatch(self):
        for v in self.verdicts:
            if v[1] == "mismatch":
                return v
        return None

    def raise_if_mismatch(self):
        bad = self.first_mismatch
        if self.status == "mismatch" and bad is not None:
            exp, _, w, f = bad
            raise Mismatch(f"first difference at {tuple(str(x) for x in exp)}: W = {w}, F = {f}")

    def to_dict(self, names):
        def txt(v):
            return [str(x) for x in v]
        out = {
            "framing": {"f": self.framing_f, "a": str(self.framing_a)},
            "case": self.case,
            "status": self.status,
            "signs": self.signs,
            "twist": list(self.twist) if self.twist else None,
            "relation": self.relation,
            "degree": self.degree,
            "b": [txt(r) for r in self.b],
            "substitution": self.substitution.to_dict(names),
            "verdicts": [{"exp": txt(e), "verdict": v, "W": str(w), "F": str(f)}
                         for e, v, w, f in self.verdicts],
            "dropped": [txt(e) for e in self.dropped],
        }
        if self.case == "disjoint":
            out["W"] = self.resolution_series.to_json()
            out["F"] = self.orbifold_series.to_json()
        return out


def _verdicts(w_coeffs, f_coeffs):
    out = []
    for exp in sorted(set(w_coeffs) | set(f_coeffs)):
        w = w_coeffs.get(exp, Fraction(0))
        f = f_coeffs.get(exp, Fraction(0))
        out.append((exp, "match" if w == f else "mismatch", w, f))
    return out


def _twisted(coeffs, twist):
    out = {}
    for exp, c in coeffs.items():
        sign = 1
        for e, t in zip(exp, twist):
            if t < 0 and int(e) % 2:
                sign = -sign
        out[exp] = sign * c
    return out


def compare(cs, W, F, degree, signs="none", framing_a=None):
    """Compare W against |G0|·(analytic part of F after substitution).

    ``signs="none"`` demands literal equality. ``signs="auto"`` also tries
    every twist q_v ↦ ±q_v; if none works it tests the winding-sign
    relation, with and without an overall sign, and records it while
    keeping the status "mismatch".
    """
    if signs not in ("none", "auto"):
        raise ValueError(f"unknown sign mode {signs!r}")
    a = framing_correspondence(cs) if framing_a is None else Fraction(framing_a)
    sub = change_of_variables(cs, a)
    q_vars = resolution_vars(cs)
    substituted = F.series.monomial_substitute(sub.mapping(), q_vars)
    analytic, dropped = analytic_part(Potential(substituted, "orbifold", F.framing), degree)
    scale = cs.group.g0_order
    f_coeffs = {e: scale * c for e, c in analytic.series.real_items()}
    w_coeffs = dict(W.series.truncate(degree).real_items())
    case = comparison_case(cs)
    report = CorrespondenceReport(
        cs.framing, a, case, b_matrix(cs), sub, degree, [], dropped, "disjoint", signs,
        resolution_series=W.series.truncate(degree),
        orbifold_series=analytic.series * Fraction(scale),
    )
    report.verdicts = _verdicts(w_coeffs, f_coeffs)
    if case == "disjoint":
        return report
    if report.first_mismatch is None:
        report.status = "match"
        return report
    report.status = "mismatch"
    if signs == "auto":
        for twist in product((1, -1), repeat=len(q_vars)):
            if twist == (1,) * len(q_vars):
                continue
            if _twisted(w_coeffs, twist) == f_coeffs:
                report.status = "match"
                report.twist = twist
                report.verdicts = _verdicts(_twisted(w_coeffs, twist), f_coeffs)
                return report
        rotated = {e: winding_sign(cs, int(e[-1])) * c for e, c in w_coeffs.items()}
        if rotated == f_coeffs:
            report.relation = "winding_sign"
        elif {e: -c for e, c in rotated.items()} == f_coeffs:
            report.relation = "negated_winding_sign"
    return report


def compare_pipeline(cs, degree, signs="none", framing_a=None):
    """Build W and F for ``cs`` and compare them up to ``degree``."""
    a = framing_correspondence(cs) if framing_a is None else Fraction(framing_a)
    W = superpotential(cs, degree)
    weights = torus_weights(cs.group, a)
    F = orbifold_disc_potential(cs.group, weights, degree, k_bounds=k_bounds(cs, degree))
    return compare(cs, W, F, degree, signs=signs, framing_a=a)


@dataclass
class ConjectureResult:
    order: tuple
    matrix: list
    inverse: list
    integral: bool
    nonnegative: bool

    def to_dict(self, names):
        return {"order": [names[p] for p in self.order],
                "matrix": [[str(x) for x in r] for r in self.matrix],
                "inverse": [[str(x) for x in r] for r in self.inverse],
                "integral": self.integral, "nonnegative": self.nonnegative}


def conjecture_matrix(cs):
    """Rows over G_s (i0 first), columns over G_s (i0 first) then divisor 0, plus (1,0,…,0)."""
    if cs.group.g0_order != 1:
        raise NotEffective("the conjecture concerns the effective case |G0| = 1")
    if cs.i0 not in cs.smalls:
        raise InternalInconsistency("effective brane apex is not an age-one point")
    order = (cs.i0,) + tuple(g for g in cs.smalls if g != cs.i0)
    rows = [[Fraction(cs.charges[h][g]) for g in order] + [Fraction(cs.charges[h][0])]
            for h in order]
    rows.append([Fraction(1)] + [Fraction(0)] * len(order))
    return order, rows


def conjecture_check(cs):
    order, rows = conjecture_matrix(cs)
    inv = inverse(rows)
    flat = [x for r in inv for x in r]
    return ConjectureResult(order, rows, inv,
                            all(x.denominator == 1 for x in flat),
                            all(x >= 0 for x in flat))


def effective_cyclic_groups(max_order):
    """Distinct groups ℤn(1,b,c) acting effectively on z0, for 2 ≤ n ≤ max_order."""
    seen = set()
    for n in range(2, max_order + 1):
        for b in range(n):
            c = (-1 - b) % n
            label = f"Z{n}(1,{b},{c})"
            group = group_from_spec(label)
            if not group.is_effective_on_z0:
                continue
            key = tuple(e.shifts for e in group.elements)
            if key in seen:
                continue
            seen.add(key)
            yield label, group


def rescuing_basis(tr, limit=5000):
    """Search other star-curve selections for one passing the conjecture check.

    Returns the passing ChargeSystem, or None if none of the first ``limit``
    selections passes.
    """
    for k, charges in enumerate(star_bases(tr)):
        if k >= limit:
            break
        cs = brane_extension(tr, charges=charges)
        result = conjecture_check(cs)
        if result.integral and result.nonnegative:
            return cs
    return None


@dataclass
class SweepReport:
    """Outcome of :func:`conjecture_sweep`.

    ``rows`` holds (label, triangulation id, integral, nonnegative) for the
    default star basis. ``counterexamples`` holds (label, id, result,
    rescued) where ``rescued`` tells whether another star selection passes.
    ``skipped`` lists (label, id) where no star selection is a ℤ-basis.
    """

    rows: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def unrescued(self):
        return [c for c in self.counterexamples if not c[3]]

    def summary(self):
        return {"triangulations": len(self.rows) + len(self.skipped),
                "checked": len(self.rows),
                "counterexamples": len(self.counterexamples),
                "unrescued": [[l, i] for l, i, _, _ in self.unrescued],
                "no_star_basis": [list(x) for x in self.skipped]}


def conjecture_sweep(max_order=12):
    """Run the conjecture checker on every triangulation of every effective cyclic group."""
    report = SweepReport()
    for label, group in effective_cyclic_groups(max_order):
        tp = triangle_points(group)
        for tr in enumerate_triangulations(tp):
            try:
                cs = brane_extension(tr)
            except NoBasisFound:
                report.skipped.append((label, tr.id))
                continue
            result = conjecture_check(cs)
            report.rows.append((label, tr.id, result.integral, result.nonnegative))
            if not (result.integral and result.nonnegative):
                rescued = rescuing_basis(tr) is not None
                report.counterexamples.append((label, tr.id, result, rescued))
    return report
