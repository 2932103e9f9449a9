"""Lattice of invariant monomials, cone generators and the junior triangle."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InternalInconsistency
from .intlinalg import determinant


@dataclass(frozen=True)
class InvariantBasis:
    """Integral basis of the invariant lattice.

    ``epsilon[i][j]`` is the e_i-component of ε_j, so columns are basis
    vectors. Rows of the same matrix are the cone generators ṽ₀, ṽ₁, ṽ₂.
    """

    epsilon: tuple
    m1_star: int
    m2_star: int
    det: int

    def coordinates(self, vector):
        """Coordinates of an integer vector in the ε-basis."""
        from .intlinalg import solve
        return solve([list(r) for r in self.epsilon], vector)


def _extended_gcd(x, y):
    if y == 0:
        return (x, 1, 0) if x >= 0 else (-x, -1, 0)
    g, s, t = _extended_gcd(y, x % y)
    return g, t, s - (x // y) * t


def invariant_basis(group):
    n = group.order
    g1, g2 = group.g1_order, group.g2_order
    c = group.abc[2]
    den = gcd(g1, c * g2)
    coef_a = g1 // den
    coef_b = c * g2
    if gcd(coef_a, coef_b) != 1:
        raise InternalInconsistency(f"{coef_a} and {coef_b} are not coprime")
    if coef_b == 0:
        m1, m2 = 1, 0
    else:
        _, s, t = _extended_gcd(coef_a, coef_b)
        # Shift along the solution line so that 0 <= m1 < coef_b.
        k = s // coef_b
        m1, m2 = s - k * coef_b, t + k * coef_a
    if m1 * coef_a + m2 * coef_b != 1:
        raise InternalInconsistency("Bezout solution failed")
    rows = ((0, 0, 1), (m1 * n // den, -c * g2, 1), (m2 * n, g1, 1))
    det = determinant(rows)
    if abs(det) != n:
        raise InternalInconsistency(f"basis determinant {det} != |G| = {n}")
    for e in group.elements:
        for j in range(3):
            val = sum(Fraction(rows[i][j]) * e.shifts[i] for i in range(3))
            if val.denominator != 1:
                raise InternalInconsistency(f"ε{j} is not invariant under {e.label}")
    return InvariantBasis(rows, m1, m2, int(det))


def cross(o, a, b):
    """Twice the signed area of triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class TrianglePoints:
    """Lattice points of the junior triangle.

    Positions 0, 1, 2 are the corners; positions 3.. follow ``group.small``.
    ``keys`` holds the divisor names "0", "1", "2" and the element labels.
    """

    group: object
    vtilde: tuple
    keys: tuple
    element_of: tuple

    @property
    def v(self):
        return tuple(p[:2] for p in self.vtilde)

    @property
    def s(self):
        return len(self.vtilde) - 3

    def __len__(self):
        return len(self.vtilde)

    def position(self, key):
        """Position of a divisor given as "0"/"1"/"2", an element label, or an int."""
        if isinstance(key, int):
            return key
        text = str(key).strip()
        if text in ("0", "1", "2") and text in self.keys[:3]:
            return int(text)
        idx = self.group.index_of(text)
        return self.element_of.index(idx)

    def name(self, pos):
        return self.keys[pos]

    def is_interior(self, pos):
        if pos < 3:
            return False
        return all(x != 0 for x in self.group.shifts(self.element_of[pos]))

    def shifts(self, pos):
        """Shift triple of a position; corner j gets the unit vector e_j."""
        if pos < 3:
            return tuple(Fraction(int(j == pos)) for j in range(3))
        return self.group.shifts(self.element_of[pos])

    def area(self):
        v = self.v
        return Fraction(abs(cross(v[0], v[1], v[2])), 2)


def triangle_points(group, basis=None):
    basis = basis or invariant_basis(group)
    corners = tuple(tuple(r) for r in basis.epsilon)
    pts = list(corners)
    for idx in group.small:
        sh = group.shifts(idx)
        vec = [sum(sh[j] * corners[j][i] for j in range(3)) for i in range(3)]
        if any(x.denominator != 1 for x in vec):
            raise InternalInconsistency(f"point of {group.label(idx)} is not integral")
        pts.append(tuple(int(x) for x in vec))
    flat = [p[:2] for p in pts]
    if len(set(flat)) != len(flat):
        raise InternalInconsistency("lattice points are not distinct")
    v0, v1, v2 = flat[:3]
    orient = cross(v0, v1, v2)
    for p in flat[3:]:
        signs = (cross(v0, v1, p) * orient, cross(v1, v2, p) * orient, cross(v2, v0, p) * orient)
        if min(signs) < 0:
            raise InternalInconsistency(f"point {p} lies outside the triangle")
    if Fraction(abs(orient), 2) != Fraction(group.order, 2):
        raise InternalInconsistency("triangle area differs from |G|/2")
    keys = ("0", "1", "2") + tuple(group.label(i) for i in group.small)
    element_of = (None, None, None) + tuple(group.small)
    return TrianglePoints(group, tuple(pts), keys, element_of)


def _boundary_lattice_count(points):
    total = 0
    for i in range(3):
        a, b = points[i], points[(i + 1) % 3]
        total += gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
    return total


def pick_audit(tp):
    """Interior and boundary lattice-point counts of the triangle, and its area.

    The counts come from classifying the listed points; the area is the
    shoelace area. Both are cross-checked against Pick's theorem and against
    gcd-based boundary counting.
    """
    interior = sum(1 for p in range(3, len(tp)) if tp.is_interior(p))
    boundary = len(tp) - interior
    area = tp.area()
    corners = tp.v[:3]
    if boundary != _boundary_lattice_count(corners):
        raise InternalInconsistency("boundary count disagrees with edge gcds")
    if area != interior + Fraction(boundary, 2) - 1:
        raise InternalInconsistency("Pick's theorem fails: missing lattice points")
    return interior, boundary, area
