"""Exact planar predicates and the embedded-graph model.

Point indices are 0-based.  All angular reasoning is done with orientation
signs only, so the whole module stays inside the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import GeneralPositionError, InvariantViolation, PreconditionError
from .exact import Q

Edge = tuple[int, int]


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Q(x), Q(y))

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)


def det3(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of abc: (b - a) x (c - a)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orientation(a: Point, b: Point, c: Point) -> int:
    d = det3(a, b, c)
    return (d > 0) - (d < 0)


def cross(u: Point, v: Point) -> Fraction:
    return u.x * v.y - u.y * v.x


def edge(i: int, j: int) -> Edge:
    if i == j:
        raise PreconditionError(f"self-loop at {i}")
    return (i, j) if i < j else (j, i)


class PointSet:
    """Immutable sequence of distinct points with no three collinear."""

    __slots__ = ("points", "_signs", "_yx_rank")

    def __init__(self, points: Iterable, validate: bool = True):
        pts = tuple(p if isinstance(p, Point) else Point.of(*p) for p in points)
        self.points = pts
        self._signs = None
        order = sorted(range(len(pts)), key=lambda i: (pts[i].y, pts[i].x))
        self._yx_rank = [0] * len(pts)
        for r, i in enumerate(order):
            self._yx_rank[i] = r
        if validate:
            self._check_general_position()

    def _check_general_position(self):
        seen = {}
        for i, p in enumerate(self.points):
            if p in seen:
                raise GeneralPositionError((seen[p], i), f"points {seen[p]} and {i} coincide")
            seen[p] = i
        for (i, j, k), s in self._triple_signs():
            if s == 0:
                raise GeneralPositionError((i, j, k))

    def _triple_signs(self):
        p = self.points
        for i, j, k in combinations(range(len(p)), 3):
            yield (i, j, k), orientation(p[i], p[j], p[k])

    def orient(self, i: int, j: int, k: int) -> int:
        """Cached orientation sign of the indexed triple."""
        if self._signs is None:
            n = len(self.points)
            table = [0] * (n * n * n)
            for (a, b, c), s in self._triple_signs():
                for x, y, z, t in ((a, b, c, s), (b, c, a, s), (c, a, b, s),
                                   (b, a, c, -s), (a, c, b, -s), (c, b, a, -s)):
                    table[(x * n + y) * n + z] = t
            self._signs = table
        n = len(self.points)
        return self._signs[(i * n + j) * n + k]

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        coords = ", ".join(f"({p.x}, {p.y})" for p in self.points)
        return f"PointSet([{coords}])"

    def det(self, i: int, j: int, k: int) -> Fraction:
        return det3(self.points[i], self.points[j], self.points[k])

    def pairs(self) -> list[Edge]:
        return list(combinations(range(len(self.points)), 2))

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet([self.points[i] for i in indices], validate=False)


@dataclass(frozen=True)
class EmbeddedGraph:
    """Straight-line graph on the points of ``base``; edges are sorted index pairs."""

    base: PointSet
    edges: frozenset

    def __init__(self, base: PointSet, edges: Iterable[Sequence[int]] = ()):
        n = len(base)
        norm = set()
        for e in edges:
            i, j = e
            if not (0 <= i < n and 0 <= j < n):
                raise PreconditionError(f"edge {tuple(e)} out of range for {n} points")
            ee = edge(i, j)
            if ee in norm:
                raise PreconditionError(f"duplicate edge {ee}")
            norm.add(ee)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def n(self) -> int:
        return len(self.base)

    def key(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, v: int) -> list[int]:
        return [j if i == v else i for i, j in self.edges if v in (i, j)]

    def adjacency(self) -> dict[int, list[int]]:
        adj = {v: [] for v in range(self.n)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> "EmbeddedGraph":
        es = set(self.edges)
        es.difference_update(edge(*e) for e in remove)
        es.update(edge(*e) for e in add)
        return EmbeddedGraph(self.base, es)

    def __repr__(self):
        return f"EmbeddedGraph(n={self.n}, edges={list(self.key())})"


# --- angular order ---------------------------------------------------------

def ccw_order(base: PointSet, v: int, nbrs: Iterable[int]) -> list[int]:
    """Neighbours of ``v`` sorted counter-clockwise by direction, starting at angle 0."""
    rank = base._yx_rank
    rv = rank[v]
    # direction v->u lies in the upper half-plane iff u is above v in (y, x) order
    half = {u: 0 if rank[u] > rv else 1 for u in nbrs}

    def cmp(a, b):
        if half[a] != half[b]:
            return half[a] - half[b]
        return -base.orient(v, a, b)

    return sorted(half, key=cmp_to_key(cmp))


def pointed_star(base: PointSet, v: int, nbrs: Sequence[int]) -> bool:
    """Whether the segments from ``v`` to ``nbrs`` leave a gap larger than a half-turn."""
    if len(nbrs) <= 2:
        return True
    order = ccw_order(base, v, nbrs)
    k = len(order)
    return any(base.orient(v, order[i], order[(i + 1) % k]) < 0 for i in range(k))


def is_pointed_at(g: EmbeddedGraph, v: int) -> bool:
    return pointed_star(g.base, v, g.neighbors(v))


def is_pointed(g: EmbeddedGraph) -> bool:
    adj = g.adjacency()
    return all(pointed_star(g.base, v, adj[v]) for v in adj)


def segments_cross(e1: Sequence[int], e2: Sequence[int], base: PointSet) -> bool:
    """Proper crossing of two edges; edges sharing an endpoint never cross."""
    a, b = e1
    c, d = e2
    if a == c or a == d or b == c or b == d:
        return False
    o = base.orient
    return o(a, b, c) != o(a, b, d) and o(c, d, a) != o(c, d, b)


def is_noncrossing(g: EmbeddedGraph) -> bool:
    return not any(segments_cross(e, f, g.base) for e, f in combinations(g.edges, 2))


def crossing_pairs(g: EmbeddedGraph) -> list[tuple[Edge, Edge]]:
    return [(e, f) for e, f in combinations(sorted(g.edges), 2) if segments_cross(e, f, g.base)]


# --- convex hull -----------------------------------------------------------

def convex_hull(ps: PointSet) -> list[int]:
    """Counter-clockwise hull cycle (monotone chain), starting at the lowest-leftmost point."""
    if len(ps) < 3:
        raise PreconditionError("convex hull needs at least 3 points")
    order = sorted(range(len(ps)), key=lambda i: (ps[i].x, ps[i].y))

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and det3(ps[out[-2]], ps[out[-1]], ps[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


@lru_cache(maxsize=64)
def hull_edges(ps: PointSet) -> frozenset:
    h = convex_hull(ps)
    return frozenset(edge(h[k], h[(k + 1) % len(h)]) for k in range(len(h)))


def in_convex_position(ps: PointSet) -> bool:
    return len(convex_hull(ps)) == len(ps)


def point_in_convex_polygon(q: Point, poly: Sequence[Point]) -> bool:
    """Strict containment in a counter-clockwise convex polygon."""
    k = len(poly)
    return all(det3(poly[i], poly[(i + 1) % k], q) > 0 for i in range(k))


# --- faces -----------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    cycle: tuple[int, ...]
    is_outer: bool
    convex_corners: int

    @property
    def is_simple(self) -> bool:
        return len(set(self.cycle)) == len(self.cycle)


@dataclass(frozen=True)
class FaceDecomposition:
    faces: tuple[Face, ...]

    @property
    def bounded(self) -> list[Face]:
        return [f for f in self.faces if not f.is_outer]

    @property
    def outer(self) -> list[Face]:
        return [f for f in self.faces if f.is_outer]


def _rotation_system(g: EmbeddedGraph):
    adj = g.adjacency()
    rot = {v: ccw_order(g.base, v, adj[v]) for v in adj}
    pos = {v: {u: k for k, u in enumerate(r)} for v, r in rot.items()}
    return rot, pos


def _next_half_edge(rot, pos, u: int, v: int) -> tuple[int, int]:
    r = rot[v]
    return v, r[(pos[v][u] - 1) % len(r)]


def face_walk(g: EmbeddedGraph, start: tuple[int, int], rot=None, pos=None) -> tuple[int, ...]:
    """Vertices of the face to the left of the directed edge ``start``."""
    if rot is None:
        rot, pos = _rotation_system(g)
    cycle = []
    he = start
    while True:
        cycle.append(he[0])
        he = _next_half_edge(rot, pos, *he)
        if he == start:
            return tuple(cycle)


def _signed_area2(base: PointSet, cycle: Sequence[int]) -> Fraction:
    total = Fraction(0)
    k = len(cycle)
    for i in range(k):
        a, b = base[cycle[i]], base[cycle[(i + 1) % k]]
        total += a.x * b.y - a.y * b.x
    return total


def _convex_corners(base: PointSet, cycle: Sequence[int]) -> int:
    k = len(cycle)
    count = 0
    for i in range(k):
        u, v, w = cycle[i - 1], cycle[i], cycle[(i + 1) % k]
        if u != w and base.orient(u, v, w) > 0:
            count += 1
    return count


def faces(g: EmbeddedGraph) -> FaceDecomposition:
    """Trace every face of a non-crossing graph.

    Bounded faces come out counter-clockwise.  Walks with non-positive signed
    area are outer boundaries; a connected graph has exactly one.
    """
    if not is_noncrossing(g):
        raise PreconditionError("face extraction needs a non-crossing graph")
    rot, pos = _rotation_system(g)
    seen = set()
    out = []
    for i, j in sorted(g.edges):
        for he in ((i, j), (j, i)):
            if he in seen:
                continue
            cycle = face_walk(g, he, rot, pos)
            for k in range(len(cycle)):
                seen.add((cycle[k], cycle[(k + 1) % len(cycle)]))
            outer = _signed_area2(g.base, cycle) <= 0
            corners = 0 if outer else _convex_corners(g.base, cycle)
            out.append(Face(cycle, outer, corners))
    return FaceDecomposition(tuple(out))


def is_connected(g: EmbeddedGraph) -> bool:
    adj = g.adjacency()
    if not adj:
        return True
    stack, seen = [0], {0}
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def _is_pt_by_faces(g: EmbeddedGraph) -> bool:
    if g.n < 3 or not is_noncrossing(g) or not is_connected(g):
        return False
    if not hull_edges(g.base) <= g.edges:
        return False
    return all(f.is_simple and f.convex_corners == 3 for f in faces(g).bounded)


def is_pseudo_triangulation(g: EmbeddedGraph) -> bool:
    """Non-crossing, covers the hull, and every bounded face is a pseudo-triangle."""
    return _is_pt_by_faces(g)


def is_pointed_pseudo_triangulation(g: EmbeddedGraph) -> bool:
    by_faces = _is_pt_by_faces(g) and is_pointed(g)
    if is_pointed(g) and is_noncrossing(g):
        by_count = len(g.edges) == 2 * g.n - 3
        if by_count != by_faces:
            raise InvariantViolation(
                f"edge-count and face criteria disagree on {g!r}: count={by_count}, faces={by_faces}"
            )
    return by_faces


def can_add_edge(g: EmbeddedGraph, e: Edge, adj=None) -> bool:
    """Adding ``e`` keeps ``g`` pointed and non-crossing (``g`` assumed both)."""
    i, j = e
    if e in g.edges:
        return False
    if any(segments_cross(e, f, g.base) for f in g.edges):
        return False
    if adj is None:
        adj = g.adjacency()
    for v, w in ((i, j), (j, i)):
        if not pointed_star(g.base, v, adj[v] + [w]):
            return False
    return True


def complete_to_ppt(g: EmbeddedGraph) -> EmbeddedGraph:
    """Greedily add edges in lexicographic order until a pointed pseudo-triangulation results."""
    if not (is_pointed(g) and is_noncrossing(g)):
        raise PreconditionError("completion needs a pointed non-crossing graph")
    n = g.n
    target = 2 * n - 3
    edges = set(g.edges)
    adj = g.adjacency()
    cur = g
    for i, j in combinations(range(n), 2):
        if len(edges) == target:
            break
        if (i, j) in edges:
            continue
        if can_add_edge(cur, (i, j), adj):
            edges.add((i, j))
            adj[i].append(j)
            adj[j].append(i)
            cur = EmbeddedGraph(g.base, edges)
    if len(edges) != target or not is_pointed_pseudo_triangulation(cur):
        raise InvariantViolation(f"greedy completion stopped at {len(edges)} edges, expected {target}")
    return cur
