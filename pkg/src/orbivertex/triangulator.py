"""Fine unimodular triangulations of the junior triangle, flops and regularity."""

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import TooLarge
from .lattice_geometry import cross

DEFAULT_NODE_BUDGET = 2_000_000


def _orient(tri, pts):
    a, b, c = tri
    return (a, b, c) if cross(pts[a], pts[b], pts[c]) > 0 else (a, c, b)


def _edge(i, j):
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of a TrianglePoints instance.

    ``triangles`` are anticlockwise position triples, sorted canonically.
    """

    points: object = field(repr=False, compare=False)
    triangles: tuple

    @property
    def key(self):
        return tuple(sorted(tuple(sorted(t)) for t in self.triangles))

    @cached_property
    def id(self):
        return hashlib.sha1(repr(self.key).encode()).hexdigest()[:12]

    @cached_property
    def edge_triangles(self):
        """Map edge → list of (triangle, apex) pairs."""
        table = {}
        for tri in self.triangles:
            for k in range(3):
                a, b, apex = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
                table.setdefault(_edge(a, b), []).append((tri, apex))
        return table

    @property
    def edges(self):
        """Sorted (edge, is_interior) pairs."""
        return tuple((e, len(ts) == 2) for e, ts in sorted(self.edge_triangles.items()))

    @property
    def interior_edges(self):
        return tuple(e for e, inner in self.edges if inner)

    @property
    def boundary_edges(self):
        return tuple(e for e, inner in self.edges if not inner)

    def neighbours(self, pos):
        out = set()
        for a, b in self.edge_triangles:
            if a == pos:
                out.add(b)
            elif b == pos:
                out.add(a)
        return sorted(out)

    def has_edge(self, i, j):
        return _edge(i, j) in self.edge_triangles

    def to_dot(self):
        tp = self.points
        lines = [f'graph "triangulation_{self.id}" {{', "  node [shape=point];"]
        for pos, (x, y) in enumerate(tp.v):
            lines.append(f'  p{pos} [label="{tp.name(pos)}", xlabel="D_{tp.name(pos)}", pos="{x},{y}!"];')
        for (a, b), inner in self.edges:
            style = "solid" if inner else "bold"
            lines.append(f"  p{a} -- p{b} [style={style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def unimodular_triangles(tp):
    pts = tp.v
    return [_orient(t, pts) for t in combinations(range(len(pts)), 3)
            if abs(cross(pts[t[0]], pts[t[1]], pts[t[2]])) == 1]


def _separated(t1, t2, pts):
    """True if the two triangles have disjoint interiors (separating axis)."""
    for tri, other in ((t1, t2), (t2, t1)):
        for k in range(3):
            a, b = pts[tri[k]], pts[tri[(k + 1) % 3]]
            # tri is anticlockwise, so its interior is on the left of a→b.
            if all(cross(a, b, pts[p]) <= 0 for p in other):
                return True
    return False


def enumerate_triangulations(tp, node_budget=DEFAULT_NODE_BUDGET):
    """All fine unimodular triangulations, ordered by their triangle keys.

    Advancing-front search: the smallest open edge (an edge with a triangle on
    one side only, or a boundary segment) is closed by each admissible apex in
    turn. Each triangulation arises exactly once, since the triangle on a given
    side of a given edge is unique in it.
    """
    pts = tp.v
    third = {}
    for t in unimodular_triangles(tp):
        for k in range(3):
            a, b, c = t[k], t[(k + 1) % 3], t[(k + 2) % 3]
            e = _edge(a, b)
            side = 1 if cross(pts[e[0]], pts[e[1]], pts[c]) > 0 else -1
            third.setdefault(e, []).append((c, side))
    target = tp.group.order

    # Open edges map ordered edge (a, b), a < b, to the side needing a triangle.
    open_edges = {}
    for k in range(3):
        a, b, c = k, (k + 1) % 3, (k + 2) % 3
        line = [p for p in range(len(pts)) if cross(pts[a], pts[b], pts[p]) == 0]
        line.sort(key=lambda p: (pts[p][0] - pts[a][0]) * (pts[b][0] - pts[a][0])
                  + (pts[p][1] - pts[a][1]) * (pts[b][1] - pts[a][1]))
        for p, q in zip(line, line[1:]):
            e = _edge(p, q)
            open_edges[e] = 1 if cross(pts[e[0]], pts[e[1]], pts[c]) > 0 else -1

    results = {}
    chosen = []
    closed = set()
    budget = [node_budget]

    def side_of(e, apex):
        return 1 if cross(pts[e[0]], pts[e[1]], pts[apex]) > 0 else -1

    def recurse():
        budget[0] -= 1
        if budget[0] < 0:
            raise TooLarge(f"triangulation search exceeded {node_budget} nodes")
        if not open_edges:
            if len(chosen) == target:
                tri = Triangulation(tp, tuple(sorted(chosen, key=lambda t: tuple(sorted(t)))))
                results[tri.key] = tri
            return
        if len(chosen) >= target:
            return
        e = min(open_edges)
        need = open_edges[e]
        for apex, side in third.get(e, ()):
            if side != need:
                continue
            tri = _orient((e[0], e[1], apex), pts)
            if any(not _separated(tri, t, pts) for t in chosen):
                continue
            new_edges = (_edge(e[0], apex), _edge(e[1], apex))
            if any(ne in closed for ne in new_edges):
                continue
            saved = {}
            ok = True
            for ne in new_edges:
                s = side_of(ne, e[1] if ne[0] == e[0] or ne[1] == e[0] else e[0])
                if ne in open_edges:
                    if open_edges[ne] != s:
                        ok = False
                        break
                    saved[ne] = open_edges.pop(ne)
                else:
                    saved[ne] = None
                    open_edges[ne] = -s
            if ok:
                del open_edges[e]
                closed.add(e)
                for ne, old in saved.items():
                    if old is not None:
                        closed.add(ne)
                chosen.append(tri)
                recurse()
                chosen.pop()
                for ne, old in saved.items():
                    if old is not None:
                        closed.discard(ne)
                closed.discard(e)
                open_edges[e] = need
            for ne, old in saved.items():
                if old is None:
                    open_edges.pop(ne, None)
                else:
                    open_edges[ne] = old

    recurse()
    return [results[k] for k in sorted(results)]


@dataclass(frozen=True)
class FlopGraph:
    nodes: tuple
    arcs: tuple

    def to_dot(self):
        lines = ["graph flops {"]
        lines += [f'  "{n}";' for n in self.nodes]
        lines += [f'  "{a}" -- "{b}";' for a, b in self.arcs]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def is_connected(self):
        if not self.nodes:
            return True
        adj = {n: set() for n in self.nodes}
        for a, b in self.arcs:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {self.nodes[0]}, [self.nodes[0]]
        while stack:
            for nxt in adj[stack.pop()] - seen:
                seen.add(nxt)
                stack.append(nxt)
        return len(seen) == len(self.nodes)


def _is_flop(t1, t2, pts):
    a = set(map(frozenset, t1.triangles))
    b = set(map(frozenset, t2.triangles))
    only_a, only_b = a - b, b - a
    if len(only_a) != 2 or len(only_b) != 2:
        return False
    quad = frozenset().union(*only_a)
    if len(quad) != 4 or quad != frozenset().union(*only_b):
        return False
    p = [pts[i] for i in quad]
    # A parallelogram has two pairs of vertices with equal midpoint sums.
    return any((p[0][0] + p[i][0], p[0][1] + p[i][1]) ==
               (sum(q[0] for q in p) - p[0][0] - p[i][0], sum(q[1] for q in p) - p[0][1] - p[i][1])
               for i in (1, 2, 3))


def flop_graph(triangulations):
    ts = list(triangulations)
    arcs = []
    for t1, t2 in combinations(ts, 2):
        if _is_flop(t1, t2, t1.points.v):
            arcs.append((t1.id, t2.id))
    graph = FlopGraph(tuple(t.id for t in ts), tuple(arcs))
    if not graph.is_connected():
        from .errors import InternalInconsistency
        raise InternalInconsistency("flop graph is disconnected")
    return graph


def _phase_one_feasible(rows, rhs):
    """Decide whether y ≥ 0 with rows·y ≥ rhs exists (rhs ≥ 0), exactly.

    Phase-I simplex on  rows·y − s + r = rhs  minimising Σr, Bland's rule.
    """
    m = len(rows)
    if m == 0:
        return True
    n = len(rows[0])
    width = n + 2 * m
    tab = []
    for i, row in enumerate(rows):
        line = [Fraction(x) for x in row]
        line += [Fraction(-1 if j == i else 0) for j in range(m)]
        line += [Fraction(1 if j == i else 0) for j in range(m)]
        line.append(Fraction(rhs[i]))
        tab.append(line)
    basis = [n + m + i for i in range(m)]
    # Objective: minimise the sum of artificials, i.e. reduced costs below.
    cost = [Fraction(0)] * (n + m) + [Fraction(1)] * m + [Fraction(0)]
    obj = cost[:]
    for i in range(m):
        obj = [o - t for o, t in zip(obj, tab[i])]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        ratios = [(tab[i][-1] / tab[i][enter], basis[i], i)
                  for i in range(m) if tab[i][enter] > 0]
        if not ratios:
            return True  # unbounded in phase one cannot happen; treat as feasible
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    return -obj[-1] == 0


def _barycentric(p, a, b, c):
    total = Fraction(cross(a, b, c))
    return (Fraction(cross(p, b, c)) / total, Fraction(cross(a, p, c)) / total,
            Fraction(cross(a, b, p)) / total)


def regularity_constraints(tr):
    """Rows (over heights of non-corner points) of the local-convexity system."""
    pts = tr.points.v
    free = list(range(3, len(pts)))
    col = {p: k for k, p in enumerate(free)}
    rows = []
    for e, pairs in tr.edge_triangles.items():
        if len(pairs) != 2:
            continue
        (tri, _), (_, apex) = pairs
        lam = _barycentric(pts[apex], *(pts[i] for i in tri))
        coef = [Fraction(0)] * len(free)
        if apex in col:
            coef[col[apex]] += 1
        for weight, vertex in zip(lam, tri):
            if vertex in col:
                coef[col[vertex]] -= weight
        rows.append(coef)
    return rows


def is_regular(tr):
    """Whether some convex piecewise-linear height function induces ``tr``.

    Corner heights are pinned to zero; each interior edge demands the far
    vertex be lifted at least one unit above the plane of the near triangle.
    """
    rows = regularity_constraints(tr)
    split = [row + [-x for x in row] for row in rows]
    return _phase_one_feasible(split, [1] * len(rows))
