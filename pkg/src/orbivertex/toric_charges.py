"""Dual graph, intersection numbers, charge vectors and the brane extension.

Charge vectors are integer lists indexed by positions of the TrianglePoints:
0, 1, 2 for the corners, then one position per age-one element.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (InternalInconsistency, NoBasisFound, NotCompact,
                     NotOnV1V2)
from .intlinalg import hermite_normal_form, integer_kernel, inverse, rank
from .lattice_geometry import cross


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple
    finite_edges: tuple
    half_edges: tuple
    stars: dict = field(compare=False)

    def to_dot(self, names):
        lines = ["graph dual {"]
        for k, tri in enumerate(self.nodes):
            label = ",".join(names[i] for i in tri)
            lines.append(f'  t{k} [label="{label}"];')
        index = {tri: k for k, tri in enumerate(self.nodes)}
        for (a, b), (t1, t2) in self.finite_edges:
            lines.append(f'  t{index[t1]} -- t{index[t2]} [label="D{names[a]}.D{names[b]}"];')
        for h, ((a, b), t) in enumerate(self.half_edges):
            lines.append(f'  h{h} [shape=point]; t{index[t]} -- h{h} [label="D{names[a]}.D{names[b]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_graph(tr):
    finite, half = [], []
    for e, pairs in sorted(tr.edge_triangles.items()):
        if len(pairs) == 2:
            finite.append((e, (pairs[0][0], pairs[1][0])))
        else:
            half.append((e, pairs[0][0]))
    stars = {p: tuple(e for e, _ in tr.edges if p in e) for p in range(len(tr.points))}
    return DualGraph(tuple(tr.triangles), tuple(finite), tuple(half), stars)


def _edge_apexes(tr, edge):
    e = tuple(sorted(edge))
    pairs = tr.edge_triangles.get(e)
    if pairs is None:
        raise NotCompact(f"{edge} is not an edge of the triangulation")
    if len(pairs) != 2:
        raise NotCompact(f"{edge} lies on the boundary: its curve is non-compact")
    return e, pairs[0][1], pairs[1][1]


def curve_relation(tr, edge):
    """Relation Σ l_j ṽ_j = 0 for the compact curve of an interior edge.

    The two apexes get coefficient 1; the edge endpoints' coefficients are
    solved for, and every entry equals an intersection number C·D_j.
    """
    (p, q), r, t = _edge_apexes(tr, edge)
    vt = tr.points.vtilde
    target = [-(vt[r][k] + vt[t][k]) for k in range(3)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = vt[p][i] * vt[q][j] - vt[p][j] * vt[q][i]
        if det:
            x = Fraction(target[i] * vt[q][j] - target[j] * vt[q][i], det)
            y = Fraction(vt[p][i] * target[j] - vt[p][j] * target[i], det)
            break
    else:
        raise InternalInconsistency("edge endpoints are parallel")
    if any(x * vt[p][k] + y * vt[q][k] != target[k] for k in range(3)):
        raise InternalInconsistency("curve relation is inconsistent")
    if x.denominator != 1 or y.denominator != 1:
        raise InternalInconsistency("curve relation is not integral")
    row = [0] * len(vt)
    row[r] = row[t] = 1
    row[p], row[q] = int(x), int(y)
    return row


def _linear_equivalence_entry(tr, p, q, r, t):
    """C·D_p for C = D_p·D_q via a character vanishing on ṽ_q and ṽ_r."""
    vt = tr.points.vtilde
    inv = inverse([[vt[p][k], vt[q][k], vt[r][k]] for k in range(3)])
    dual = inv[0]
    return -sum(dual[k] * vt[t][k] for k in range(3))


def intersection_table(tr):
    """Rows C·D_j for every compact curve, keyed by its edge.

    The self-intersection-type entries are recomputed independently through
    linear equivalence and must agree with the relation solve.
    """
    table = {}
    for e in tr.interior_edges:
        row = curve_relation(tr, e)
        (p, q), r, t = _edge_apexes(tr, e)
        if (_linear_equivalence_entry(tr, p, q, r, t) != row[p]
                or _linear_equivalence_entry(tr, q, p, r, t) != row[q]):
            raise InternalInconsistency(f"linear equivalence disagrees on {e}")
        table[e] = row
    return table


def relation_lattice_basis(points):
    vt = points.vtilde
    return integer_kernel([[v[k] for v in vt] for k in range(3)])


def _candidate_edges(tr, pos, s_start):
    nbrs = [n for n in tr.neighbours(pos) if len(tr.edge_triangles[tuple(sorted((pos, n)))]) == 2]
    return sorted(nbrs, key=lambda n: (n < s_start, n))


def star_bases(tr, choices=None):
    """Yield every selection of one compact curve per age-one point that gives a ℤ-basis.

    Depth-first over G_s in canonical order; for each point, star edges to
    other age-one points come first (in G_s order), then edges to the corners.
    Each item is (charges, chosen_curves), both keyed by position.
    ``choices`` maps positions to neighbour positions to force a selection.
    """
    tp = tr.points
    n = len(tp)
    table = intersection_table(tr)
    reference = hermite_normal_form(relation_lattice_basis(tp))
    smalls = list(range(3, n))
    forced = dict(choices or {})
    chosen_edges, rows = [], []

    def options(pos):
        if pos in forced:
            return [forced[pos]]
        return _candidate_edges(tr, pos, 3)

    def dfs(k):
        if k == len(smalls):
            if hermite_normal_form(rows) == reference:
                yield ({pos: tuple(row) for pos, row in zip(smalls, rows)},
                       dict(zip(smalls, chosen_edges)))
            return
        pos = smalls[k]
        for nb in options(pos):
            e = tuple(sorted((pos, nb)))
            if e in chosen_edges or e not in table:
                continue
            chosen_edges.append(e)
            rows.append(table[e])
            if rank(rows) == len(rows):
                yield from dfs(k + 1)
            chosen_edges.pop()
            rows.pop()

    return dfs(0)


def charge_basis(tr, choices=None):
    """The first admissible selection of :func:`star_bases`."""
    for found in star_bases(tr, choices):
        return found
    raise NoBasisFound("no choice of star edges gives a ℤ-basis of the relation lattice")


def side_points(tp):
    """Positions on the segment v₁v₂, ordered from v₁ to v₂."""
    v = tp.v
    on = [p for p in range(len(v)) if cross(v[1], v[2], v[p]) == 0]
    return sorted(on, key=lambda p: (v[p][0] - v[1][0]) * (v[2][0] - v[1][0])
                  + (v[p][1] - v[1][1]) * (v[2][1] - v[1][1]))


def default_segment(tp):
    """Edge of v₁v₂ through its midpoint if unique, else the one ending at v₂."""
    line = side_points(tp)
    v = tp.v
    mid2 = (v[1][0] + v[2][0], v[1][1] + v[2][1])
    hits = []
    for a, b in zip(line, line[1:]):
        # midpoint M lies on [a,b] iff 2a ≤ 2M ≤ 2b along the line
        pa = (2 * v[a][0], 2 * v[a][1])
        pb = (2 * v[b][0], 2 * v[b][1])
        inside = all(min(x, y) <= m <= max(x, y) for x, y, m in zip(pa, pb, mid2))
        if inside:
            hits.append((a, b))
    if len(hits) == 1:
        return hits[0]
    return line[-2], line[-1]


@dataclass(frozen=True)
class ChargeSystem:
    triangulation: object = field(repr=False)
    charges: dict
    chosen_curves: dict
    i0: int
    i1: int
    i2: int
    framing: int
    l0: tuple

    @property
    def points(self):
        return self.triangulation.points

    @property
    def group(self):
        return self.points.group

    @property
    def smalls(self):
        return tuple(range(3, len(self.points)))

    def charge(self, key):
        return self.charges[self.points.position(key)]

    def column(self, pos):
        """Entries l_pos^(g) over g in G_s order."""
        return tuple(self.charges[g][pos] for g in self.smalls)

    def with_framing(self, f):
        l0 = list(self.l0)
        l0[self.i1] = f
        l0[self.i2] = -f - 1
        return ChargeSystem(self.triangulation, self.charges, self.chosen_curves,
                            self.i0, self.i1, self.i2, f, tuple(l0))

    def to_dict(self):
        tp = self.points
        names = tp.keys
        table = intersection_table(self.triangulation)
        return {
            "divisors": list(names),
            "triangulation": self.triangulation.id,
            "charges": {names[g]: list(v) for g, v in self.charges.items()},
            "curves": {names[g]: [names[a], names[b]] for g, (a, b) in self.chosen_curves.items()},
            "l0": list(self.l0),
            "i0i1i2": [names[self.i0], names[self.i1], names[self.i2]],
            "framing": self.framing,
            "intersections": [
                {"curve": [names[a], names[b]], "row": list(row)} for (a, b), row in table.items()
            ],
        }


def brane_extension(tr, segment=None, framing=0, charges=None):
    """Attach an outer brane on a segment of the v₁v₂ side with framing f."""
    tp = tr.points
    line = side_points(tp)
    if segment is None:
        seg = default_segment(tp)
    else:
        seg = tuple(tp.position(x) for x in segment)
    if seg[0] not in line or seg[1] not in line:
        raise NotOnV1V2(f"segment {seg} is not on the v1v2 side")
    i1, i2 = sorted(seg, key=line.index)
    if line.index(i2) != line.index(i1) + 1:
        raise NotOnV1V2(f"segment {seg} is not a primitive edge of v1v2")
    pairs = tr.edge_triangles[tuple(sorted((i1, i2)))]
    i0 = pairs[0][1]
    v = tp.v
    if cross(v[i0], v[i1], v[i2]) <= 0:
        raise InternalInconsistency("brane triangle is not anticlockwise")
    if i0 != 0:
        expected = Fraction(tp.group.g0_order, tp.group.order)
        if tp.shifts(i0)[0] != expected:
            raise InternalInconsistency("apex z0 shift differs from |G0|/|G|")
    if charges is None:
        charges = charge_basis(tr)
    l0 = [0] * len(tp)
    l0[i0] = 1
    l0[i1] = framing
    l0[i2] = -framing - 1
    basis, curves = charges
    return ChargeSystem(tr, basis, curves, i0, i1, i2, framing, tuple(l0))


def check_charge_system(cs):
    """Assert the defining linear identities of every charge vector."""
    tp = cs.points
    vt = tp.vtilde
    for g, row in cs.charges.items():
        if any(sum(row[i] * vt[i][k] for i in range(len(vt))) for k in range(3)):
            raise InternalInconsistency(f"charge {tp.name(g)} is not a relation")
        if sum(row):
            raise InternalInconsistency(f"charge {tp.name(g)} violates the CY condition")
        for j in range(3):
            total = sum(tp.shifts(h)[j] * row[h] for h in cs.smalls) + row[j]
            if total != 0:
                raise InternalInconsistency(f"charge {tp.name(g)} fails shift identity {j}")
    block = [[cs.charges[g][h] for h in cs.smalls] for g in cs.smalls]
    if rank(block) != len(block):
        raise InternalInconsistency("charge block is singular")
    rest = [p for p in range(len(tp)) if p not in (cs.i0, cs.i1, cs.i2)]
    others = [[cs.charges[g][p] for g in cs.smalls] for p in rest]
    if rank(others) != len(cs.smalls):
        raise InternalInconsistency("remaining charge columns do not span")
    return True
