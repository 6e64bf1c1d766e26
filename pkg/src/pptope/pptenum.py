"""Pointed pseudo-triangulations: flips, flip-graph enumeration and pte-mechanisms.

A pte-mechanism is a pointed pseudo-triangulation with one convex-hull edge
removed; it has a single normalized flex, which is expansive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import InvariantViolation, PreconditionError
from .geometry import (
    Edge,
    EmbeddedGraph,
    PointSet,
    can_add_edge,
    complete_to_ppt,
    convex_hull,
    edge,
    face_walk,
    hull_edges,
    is_pointed_pseudo_triangulation,
    point_in_convex_polygon,
    _convex_corners,
    _rotation_system,
    _next_half_edge,
)
from .rigidity import Motion, Normalization, all_strains, flex_space, scale_motion, strain

Key = tuple  # sorted tuple of edges


@dataclass(frozen=True)
class PPT:
    graph: EmbeddedGraph

    @classmethod
    def of(cls, g: EmbeddedGraph, check: bool = True) -> "PPT":
        if check and not is_pointed_pseudo_triangulation(g):
            raise PreconditionError(f"{g!r} is not a pointed pseudo-triangulation")
        return cls(g)

    @property
    def key(self) -> Key:
        return self.graph.key()

    @property
    def edges(self) -> frozenset:
        return self.graph.edges

    @property
    def base(self) -> PointSet:
        return self.graph.base

    def interior_edges(self) -> list[Edge]:
        h = hull_edges(self.base)
        return [e for e in sorted(self.edges) if e not in h]


def flip(t: PPT, e) -> tuple[PPT, Edge]:
    """Flip the interior edge ``e``; return the new PPT and the inserted edge."""
    e = edge(*e)
    g = t.graph
    if e not in g.edges:
        raise PreconditionError(f"edge {e} is not in the pseudo-triangulation")
    if e in hull_edges(g.base):
        raise PreconditionError(f"edge {e} is a convex hull edge and cannot be flipped")
    i, j = e
    rot, pos = _rotation_system(g)
    # the half-edge following i->j keeps bounding the merged face after removal
    start = _next_half_edge(rot, pos, i, j)
    h = g.with_edges(remove=[e])
    quad = face_walk(h, start)
    corners = _convex_corners(g.base, quad)
    if corners != 4:
        raise InvariantViolation(f"removing {e} left a face with {corners} convex corners, expected 4")
    adj = h.adjacency()
    found = []
    for a, b in combinations(sorted(set(quad)), 2):
        cand = (a, b)
        if cand == e or cand in h.edges:
            continue
        if can_add_edge(h, cand, adj):
            found.append(cand)
    if len(found) != 1:
        raise InvariantViolation(f"flip of {e} found {len(found)} replacement edges: {found}")
    new = h.with_edges(add=found)
    if not is_pointed_pseudo_triangulation(new):
        raise InvariantViolation(f"flip of {e} produced a non-PPT")
    return PPT(new), found[0]


@dataclass
class FlipGraph:
    base: PointSet
    nodes: list  # canonical keys in BFS order
    ppts: dict  # key -> PPT
    adjacency: dict  # key -> set of (neighbor key, edge out, edge in)

    def __len__(self):
        return len(self.nodes)

    def edges(self) -> list[tuple[Key, Key, Edge, Edge]]:
        out = []
        index = {k: i for i, k in enumerate(self.nodes)}
        for k in self.nodes:
            for nb, eo, ei in sorted(self.adjacency[k]):
                if index[k] < index[nb]:
                    out.append((k, nb, eo, ei))
        return out

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.nodes)
        for a, b, _, _ in self.edges():
            G.add_edge(a, b)
        return G


def seed_ppt(ps: PointSet) -> PPT:
    return PPT(complete_to_ppt(EmbeddedGraph(ps, hull_edges(ps))))


def enumerate_ppts(ps: PointSet) -> FlipGraph:
    """Breadth-first search of the flip graph from the greedy seed."""
    seed = seed_ppt(ps)
    ppts = {seed.key: seed}
    nodes = [seed.key]
    adjacency = {seed.key: set()}
    queue = deque([seed])
    while queue:
        t = queue.popleft()
        for e in t.interior_edges():
            t2, ins = flip(t, e)
            k2 = t2.key
            adjacency[t.key].add((k2, e, ins))
            if k2 not in ppts:
                ppts[k2] = t2
                nodes.append(k2)
                adjacency[k2] = set()
                queue.append(t2)
    return FlipGraph(ps, nodes, ppts, adjacency)


# --- mechanisms ------------------------------------------------------------

@dataclass(frozen=True)
class PteMechanism:
    graph: EmbeddedGraph
    removed_hull_edge: Edge
    flex: Motion
    norm: Normalization

    def pair_strains(self) -> dict:
        return all_strains(self.graph.base, self.flex)


def pte_mechanism(t: PPT, hull_edge, norm: Normalization | None = None) -> PteMechanism:
    hull_edge = edge(*hull_edge)
    ps = t.base
    norm = (norm or Normalization.default(ps)).validate(ps)
    if hull_edge not in t.edges or hull_edge not in hull_edges(ps):
        raise PreconditionError(f"{hull_edge} is not a hull edge of the pseudo-triangulation")
    g = t.graph.with_edges(remove=[hull_edge])
    basis = flex_space(g, norm)
    if len(basis) != 1:
        raise InvariantViolation(f"pte-mechanism has {len(basis)} degrees of freedom, expected 1")
    v = basis[0]
    s = strain(ps, v, *hull_edge)
    if s == 0:
        raise InvariantViolation(f"flex does not move the removed hull edge {hull_edge}")
    if s < 0:
        v = scale_motion(v, -1)
    bad = {e: x for e, x in all_strains(ps, v).items() if x < 0}
    if bad:
        raise InvariantViolation(f"pte-mechanism flex is not expansive on {sorted(bad)}")
    return PteMechanism(g, hull_edge, v, norm)


@dataclass(frozen=True)
class CollapsedMechanism:
    tight_pairs: frozenset

    def __eq__(self, other):
        return isinstance(other, CollapsedMechanism) and self.tight_pairs == other.tight_pairs

    def __hash__(self):
        return hash(self.tight_pairs)


def _zero_strain_graph(m: PteMechanism) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(m.graph.n))
    G.add_edges_from(e for e, s in m.pair_strains().items() if s == 0)
    return G


def rigid_components(m: PteMechanism) -> list[frozenset]:
    """Maximal point subsets moved rigidly by the flex, sorted."""
    if not flex_space(m.graph, m.norm):
        raise PreconditionError("a rigid graph is not a mechanism")
    G = _zero_strain_graph(m)
    comps = sorted((frozenset(c) for c in nx.find_cliques(G)), key=lambda c: sorted(c))
    ps = m.graph.base
    covered = set().union(*comps) if comps else set()
    if covered != set(range(ps.__len__())):
        raise InvariantViolation("rigid components do not cover all points")
    for c in comps:
        if len(c) == 2:
            if edge(*c) not in m.graph.edges:
                raise InvariantViolation(f"zero-strain pair {tuple(sorted(c))} outside any component")
            continue
        sub = sorted(c)
        hull = [sub[k] for k in convex_hull(ps.subset(sub))]
        poly = [ps[k] for k in hull]
        for q in range(len(ps)):
            if q not in c and point_in_convex_polygon(ps[q], poly):
                raise InvariantViolation(f"point {q} lies inside rigid component {sub} but is not in it")
        for k in range(len(hull)):
            if edge(hull[k], hull[(k + 1) % len(hull)]) not in m.graph.edges:
                raise InvariantViolation(f"rigid component {sub} misses a boundary edge")
    return comps


def collapse(m: PteMechanism) -> CollapsedMechanism:
    """Zero-strain pairs of the flex: complete graphs on rigid components plus the remaining edges."""
    tight = frozenset(e for e, s in m.pair_strains().items() if s == 0)
    closure = set()
    for c in rigid_components(m):
        closure.update(combinations(sorted(c), 2))
    if closure != tight or not m.graph.edges <= tight:
        raise InvariantViolation("zero-strain pairs are not a union of complete rigid components")
    return CollapsedMechanism(tight)
