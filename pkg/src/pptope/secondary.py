"""Convex position: GKZ coordinates and the affine map from the ppt-polytope.

Area is the *normalized* area ``|det(p, q, r)|``, i.e. twice the Euclidean
area of the triangle.  Points must be listed counter-clockwise.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .exact import rank
from .expansion import PerturbationTable, PolyhedronVertex, Polytope, realize_polytope
from .geometry import PointSet, convex_hull, edge
from .pptenum import PPT
from .rigidity import add_motions, all_strains, scale_motion


def ccw_reindex(ps: PointSet) -> tuple[PointSet, list[int]]:
    """Reorder a convex-position set counter-clockwise; ``perm[new] = old``."""
    perm = convex_hull(ps)
    if len(perm) != len(ps):
        raise PreconditionError("points are not in convex position")
    return ps.subset(perm), perm


def check_ccw_convex(ps: PointSet) -> None:
    n = len(ps)
    if n < 3:
        raise PreconditionError("need at least three points")
    for i in range(n):
        for k in range(n):
            if k not in (i, (i + 1) % n) and ps.det(i, (i + 1) % n, k) <= 0:
                raise PreconditionError("points are not in counter-clockwise convex position")


def gkz_vector(ps: PointSet, t: PPT) -> tuple[Fraction, ...]:
    """Per point, the total normalized area of incident triangles."""
    check_ccw_convex(ps)
    n = len(ps)
    if len(t.edges) != 2 * n - 3:
        raise PreconditionError("not a triangulation")
    adj = t.graph.adjacency()
    out = []
    for i in range(n):
        # neighbours in cyclic order i+1, ..., i-1
        nb = sorted(adj[i], key=lambda j: (j - i) % n)
        out.append(sum((ps.det(i, nb[k], nb[k + 1]) for k in range(len(nb) - 1)), Fraction(0)))
    return tuple(out)


def _ear(ps: PointSet, i: int) -> Fraction:
    n = len(ps)
    return ps.det((i - 1) % n, i, (i + 1) % n)


def almost_hull_delta(ps: PointSet, f: PerturbationTable, vertex: PolyhedronVertex) -> list[bool]:
    """Per index, whether the slack on the almost-hull edge ``(i-1, i+1)`` matches the area formula."""
    check_ccw_convex(ps)
    n = len(ps)
    if n < 4:
        raise PreconditionError("almost-hull edges need n >= 4")
    s = all_strains(ps, vertex.v)
    area = gkz_vector(ps, vertex.ppt)
    out = []
    for i in range(n):
        e = edge((i - 1) % n, (i + 1) % n)
        d = f[e] - s[e]
        ear = _ear(ps, i)
        out.append(d == -ear * (area[i] - ear))
    return out


def gkz_from_motion(ps: PointSet, f: PerturbationTable, v) -> tuple[Fraction, ...]:
    """The affine map ``a_i = -d_{i-1,i+1} / ear_i + ear_i`` with ``d = f - strain(v)``."""
    n = len(ps)
    s = all_strains(ps, v)
    out = []
    for i in range(n):
        e = edge((i - 1) % n, (i + 1) % n)
        ear = _ear(ps, i)
        out.append(-(f[e] - s[e]) / ear + ear)
    return tuple(out)


def affine_map_check(ps: PointSet, f: PerturbationTable | None = None,
                     polytope: Polytope | None = None) -> bool:
    """The affine map sends every vertex to its GKZ vector and flip midpoints to midpoints."""
    check_ccw_convex(ps)
    P = polytope or realize_polytope(ps, f)
    f = P.f
    images = {}
    for k, vx in P.vertices.items():
        a = gkz_from_motion(ps, f, vx.v)
        if a != gkz_vector(ps, vx.ppt):
            return False
        images[k] = a
    for a_key, b_key, _, _ in P.bounded_edges:
        mid = scale_motion(add_motions(P.vertices[a_key].v, P.vertices[b_key].v), Fraction(1, 2))
        expect = tuple((x + y) / 2 for x, y in zip(images[a_key], images[b_key]))
        if gkz_from_motion(ps, f, mid) != expect:
            return False
    return True


def gkz_affine_dimension(vectors) -> int:
    vs = list(vectors)
    if len(vs) < 2:
        return 0
    return rank([[a - b for a, b in zip(v, vs[0])] for v in vs[1:]])
