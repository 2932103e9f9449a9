"""Finite abelian subgroups of SL(3,ℂ) acting diagonally on ℂ³.

An element is stored by its three fermionic shifts: the rational rotation
angles (in units of 2π, reduced into [0,1)) on the coordinates z₀, z₁, z₂.
"""

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, prod

from .errors import (InternalInconsistency, Ineffective, NonSL, NotApplicable,
                     SpecParseError, TooLarge, TrivialGroup)

DEFAULT_MAX_GROUP = 10_000
ZERO = Fraction(0)


def max_group_order():
    raw = os.environ.get("ORBIVERTEX_MAX_GROUP")
    return int(raw) if raw else DEFAULT_MAX_GROUP


def frac_part(x):
    return x - (x.numerator // x.denominator)


def _lcm_of_denominators(values):
    out = 1
    for v in values:
        out = out * v.denominator // gcd(out, v.denominator)
    return out


@dataclass(frozen=True)
class GroupElement:
    index: int
    shifts: tuple
    order: int
    label: str

    @property
    def age(self):
        return age(self)

    @property
    def is_identity(self):
        return self.shifts == (ZERO, ZERO, ZERO)


def age(element):
    total = sum(element.shifts)
    if total.denominator != 1:
        raise NonSL(f"element {element.label} has non-integral age {total}")
    return int(total)


@dataclass(frozen=True)
class GroupModel:
    elements: tuple
    generators: tuple
    rotation: int
    alpha: int
    beta: int
    abc: tuple

    @property
    def order(self):
        return len(self.elements)

    @cached_property
    def _by_shifts(self):
        return {e.shifts: e.index for e in self.elements}

    @cached_property
    def _by_label(self):
        table = {}
        for e in self.elements:
            table[e.label] = e.index
            table[e.label.replace("xi", "ξ")] = e.index
        return table

    def shifts(self, i):
        return self.elements[i].shifts

    def label(self, i):
        return self.elements[i].label

    def index_of(self, label):
        key = str(label).strip().replace("ξ", "xi").replace(" ", "")
        if key in ("", "1xi"):
            key = "xi"
        if key not in self._by_label:
            raise KeyError(f"no element labelled {label!r}")
        return self._by_label[key]

    def index_of_shifts(self, shifts):
        return self._by_shifts[tuple(frac_part(Fraction(x)) for x in shifts)]

    def add(self, i, j):
        a, b = self.shifts(i), self.shifts(j)
        return self.index_of_shifts(tuple(x + y for x, y in zip(a, b)))

    def multiple(self, k, i):
        return self.index_of_shifts(tuple(k * x for x in self.shifts(i)))

    def negate(self, i):
        return self.multiple(-1, i)

    def isotropy(self, j):
        """Indices of G_j, the elements fixing coordinate z_j."""
        return tuple(e.index for e in self.elements if e.shifts[j] == 0)

    @property
    def g0_order(self):
        return len(self.isotropy(0))

    @property
    def g1_order(self):
        return len(self.isotropy(1))

    @property
    def g2_order(self):
        return len(self.isotropy(2))

    def quotient_order(self, j):
        """|G/G_j|."""
        return self.order // len(self.isotropy(j))

    @cached_property
    def small(self):
        return small_part(self)

    @property
    def is_effective_on_z0(self):
        return self.g0_order == 1

    def describe(self):
        return {
            "order": self.order,
            "rotation": self.rotation,
            "elements": [
                {"label": e.label, "shifts": [str(x) for x in e.shifts],
                 "order": e.order, "age": age(e)}
                for e in self.elements
            ],
            "isotropy_orders": [self.g0_order, self.g1_order, self.g2_order],
            "alpha": self.label(self.alpha),
            "beta": self.label(self.beta),
            "abc": list(self.abc),
            "small": [self.label(i) for i in self.small],
        }


def _coefficient_label(coeffs, single):
    if not any(coeffs):
        return "0"
    if single:
        k = coeffs[0]
        return "xi" if k == 1 else f"{k}xi"
    parts = []
    for pos, k in enumerate(coeffs, start=1):
        if k:
            parts.append(f"a{pos}" if k == 1 else f"{k}a{pos}")
    return "+".join(parts)


def _rotate(shifts, k):
    return tuple(shifts[(j + k) % 3] for j in range(3))


def build_group(generators):
    """Build the group generated by diagonal actions.

    ``generators`` is a sequence of ``(order, (w0, w1, w2))``; the generator
    acts on z_j by exp(2πi w_j / order).
    """
    gens = []
    for item in generators:
        n, weights = item
        n = int(n)
        weights = tuple(int(w) for w in weights)
        if n < 1 or len(weights) != 3:
            raise SpecParseError(f"bad generator {item!r}")
        if sum(weights) % n:
            raise NonSL(f"weights {weights} do not sum to 0 mod {n}")
        gens.append((n, weights))
    if not gens:
        raise TrivialGroup("no generators given")

    cap = max_group_order()
    declared = prod(n for n, _ in gens)
    gen_shifts = [tuple(frac_part(Fraction(w, n)) for w in ws) for n, ws in gens]

    # Enumerate coefficient vectors by total then lexicographically so the
    # first hit for each element gives its shortest label.
    ranges = [range(n) for n, _ in gens]
    if declared > cap:
        raise TooLarge(f"group order up to {declared} exceeds cap {cap}")
    seen = {}
    for coeffs in sorted(product(*ranges), key=lambda c: (sum(c), c)):
        s = tuple(frac_part(sum((k * g[j] for k, g in zip(coeffs, gen_shifts)), ZERO))
                  for j in range(3))
        seen.setdefault(s, coeffs)
    if len(seen) == 1:
        if declared == 1:
            raise TrivialGroup("the group is trivial")
        raise Ineffective("every generator acts trivially")
    if len(seen) < declared:
        raise Ineffective(
            f"declared order {declared} but only {len(seen)} distinct actions:"
            " a non-identity element fixes ℂ³ pointwise")

    for s in seen:
        total = sum(s)
        if total.denominator != 1:
            raise NonSL(f"element with shifts {s} has non-integral age")

    # If G acts trivially on z₁, rotate coordinates so that it does not.
    rotation = 0
    if all(s[1] == 0 for s in seen):
        rotation = 1 if any(s[2] != 0 for s in seen) else 2
    single = len(gens) == 1
    rows = sorted((_rotate(s, rotation), c) for s, c in seen.items())
    elements = tuple(
        GroupElement(i, s, _lcm_of_denominators(s), _coefficient_label(c, single))
        for i, (s, c) in enumerate(rows)
    )
    model = GroupModel(elements, tuple(gens), rotation, 0, 0, (0, 0, 0))
    alpha, beta, abc = _alpha_beta(model)
    model = GroupModel(elements, tuple(gens), rotation, alpha, beta, abc)
    _check_presentation(model)
    return model


def _alpha_beta(model):
    n = model.order
    q1 = model.quotient_order(1)
    g1 = model.g1_order
    candidates = [e for e in model.elements if e.shifts[1] == Fraction(1, q1)]
    if not candidates:
        raise InternalInconsistency("no element with F1 = 1/|G/G1|")
    g2 = model.g2_order

    def coprime(e):
        c = e.shifts[2] * model.quotient_order(2)
        if c.denominator != 1:
            return False
        return gcd(g1 // gcd(g1, int(c) * g2), int(c) * g2) == 1

    # The integral basis of M needs this coprimality, which the smallest
    # candidate does not always have (e.g. Z12(1,8,3)).
    alpha = min(candidates, key=lambda e: (not coprime(e), e.shifts))
    if g1 == 1:
        beta = model.elements[0]
    else:
        cands = [model.elements[i] for i in model.isotropy(1)
                 if model.elements[i].shifts[2] == Fraction(1, g1)]
        if not cands:
            raise InternalInconsistency("G1 has no generator with F2 = 1/|G1|")
        beta = min(cands, key=lambda e: e.shifts)
    a = beta.shifts[0] * g1
    b = alpha.shifts[0] * model.quotient_order(0)
    c = alpha.shifts[2] * model.quotient_order(2)
    if any(x.denominator != 1 for x in (a, b, c)):
        raise InternalInconsistency(f"non-integral (a,b,c) = {(a, b, c)} for |G|={n}")
    return alpha.index, beta.index, (int(a), int(b), int(c))


def presentation_shifts(model, k, l):
    """Shifts of kα+lβ from the closed formulas in terms of (a,b,c)."""
    a, b, c = model.abc
    q0, q1, q2 = (model.quotient_order(j) for j in range(3))
    g1 = model.g1_order
    return (frac_part(Fraction(k * b, q0) + Fraction(l * a, g1)),
            frac_part(Fraction(k, q1)),
            frac_part(Fraction(k * c, q2) + Fraction(l, g1)))


def _check_presentation(model):
    q1 = model.quotient_order(1)
    g1 = model.g1_order
    hit = set()
    for k in range(q1):
        for l in range(g1):
            direct = model.add(model.multiple(k, model.alpha), model.multiple(l, model.beta))
            if model.shifts(direct) != presentation_shifts(model, k, l):
                raise InternalInconsistency(f"shift formulas fail at (k,l)=({k},{l})")
            hit.add(direct)
    if len(hit) != model.order:
        raise InternalInconsistency("(k,l) -> kα+lβ is not a bijection")
    beta = model.shifts(model.beta)
    if beta[1] != 0 or beta[2] != (Fraction(1, g1) if g1 > 1 else 0):
        raise InternalInconsistency("β violates its defining shifts")


def small_part(model):
    return tuple(e.index for e in model.elements if age(e) == 1)


def find_age_one_with_min_shift(model):
    """First h in G_s with F⁽⁰⁾_h = 1/|G/G₀|, by exhaustive scan."""
    if model.order == model.g0_order:
        raise NotApplicable("|G| = |G0|: G fixes z0")
    target = Fraction(1, model.quotient_order(0))
    for i in model.small:
        if model.shifts(i)[0] == target:
            return i
    raise InternalInconsistency("no age-one element with minimal z0 shift")


_LABEL = re.compile(r"\s*Z_?(\d+)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*")


def parse_group_spec(spec):
    """Accept a generator dict, a list of generator dicts, or a "Zn(a,b,c)" label.

    Labels may be joined by "x", "×" or "*" for direct products.
    """
    if isinstance(spec, str):
        text = spec.replace("ℤ", "Z").replace("×", "x").replace("*", "x")
        parts = [p for p in re.split(r"\)\s*x\s*", text)]
        gens = []
        for i, part in enumerate(parts):
            if i < len(parts) - 1:
                part += ")"
            m = _LABEL.fullmatch(part)
            if not m:
                raise SpecParseError(f"cannot parse group label {spec!r}")
            n, w0, w1, w2 = map(int, m.groups())
            gens.append((n, (w0, w1, w2)))
        return gens
    if isinstance(spec, dict):
        if "generators" in spec:
            return parse_group_spec(spec["generators"])
        if "label" in spec:
            return parse_group_spec(spec["label"])
        raise SpecParseError("group spec needs 'generators' or 'label'")
    try:
        return [(int(g["order"]), tuple(int(w) for w in g["weights"])) for g in spec]
    except (TypeError, KeyError, ValueError) as exc:
        raise SpecParseError(f"bad generator list: {exc}") from exc


def group_from_spec(spec):
    return build_group(parse_group_spec(spec))
