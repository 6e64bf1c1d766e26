"""The polyhedron of constrained expansions and the expansion cone.

For a perturbation table ``f`` the polyhedron is the set of normalized
motions with ``strain_ij(v) >= f_ij`` on every pair.  With a valid ``f`` its
vertices are the pointed pseudo-triangulations, bounded edges are flips and
extreme rays are pte-mechanisms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InvalidPerturbationError, InvariantViolation, NotInImageError, PreconditionError
from .exact import Matrix, Q, nullspace, solve_linear
from .geometry import (
    Edge,
    EmbeddedGraph,
    Point,
    PointSet,
    complete_to_ppt,
    det3,
    edge,
    hull_edges,
    is_noncrossing,
    is_pointed,
    pointed_star,
    point_in_convex_polygon,
    convex_hull,
    segments_cross,
)
from .pptenum import PPT, FlipGraph, collapse, enumerate_ppts, pte_mechanism
from .rigidity import (
    Motion,
    Normalization,
    add_motions,
    all_strains,
    flatten,
    four_point_stress,
    rigidity_rows,
    scale_motion,
    unflatten,
    zero_motion,
)

PerturbationTable = dict  # dict[Edge, Fraction], total over all pairs


# --- perturbation schemes --------------------------------------------------

@dataclass(frozen=True)
class DetProduct:
    """``f_ij = det(a, p_i, p_j) * det(b, p_i, p_j)``."""

    a: Point
    b: Point

    @classmethod
    def centroid(cls, ps: PointSet) -> "DetProduct":
        n = len(ps)
        c = Point(sum((p.x for p in ps), Fraction(0)) / n, sum((p.y for p in ps), Fraction(0)) / n)
        return cls(c, c)

    def table(self, ps: PointSet) -> PerturbationTable:
        return {(i, j): det3(self.a, ps[i], ps[j]) * det3(self.b, ps[i], ps[j])
                for i, j in ps.pairs()}


@dataclass(frozen=True)
class NormHeuristic:
    """``f_ij = (|p_i|^2 + |p_j|^2 + <p_i, p_j>) * |p_i - p_j|^2 / 2``."""

    def table(self, ps: PointSet) -> PerturbationTable:
        out = {}
        for i, j in ps.pairs():
            p, q = ps[i], ps[j]
            pp = p.x * p.x + p.y * p.y
            qq = q.x * q.x + q.y * q.y
            pq = p.x * q.x + p.y * q.y
            d = p - q
            out[(i, j)] = (pp + qq + pq) * (d.x * d.x + d.y * d.y) / 2
        return out


@dataclass(frozen=True)
class Explicit:
    values: Mapping

    def table(self, ps: PointSet) -> PerturbationTable:
        out = {edge(*e): Q(v) for e, v in self.values.items()}
        missing = [e for e in ps.pairs() if e not in out]
        if missing:
            raise PreconditionError(f"perturbation table lacks pairs {missing}")
        return {e: out[e] for e in ps.pairs()}


FScheme = DetProduct | NormHeuristic | Explicit


def make_f(ps: PointSet, scheme: FScheme | None = None) -> PerturbationTable:
    return (scheme or DetProduct.centroid(ps)).table(ps)


# --- validity --------------------------------------------------------------

@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    witnesses: tuple  # ((i, j, k, l), R) for every quadruple with R <= 0
    values: tuple = field(default=(), repr=False)  # ((i, j, k, l), R) for every quadruple

    def __bool__(self):
        return self.valid


def quadruple_sum(ps: PointSet, quad, values: Mapping[Edge, Fraction]) -> Fraction:
    w = four_point_stress(ps, quad)
    return sum((w[e] * values[e] for e in w), Fraction(0))


def check_validity(ps: PointSet, f: PerturbationTable) -> ValidityReport:
    """Valid iff ``sum w_ij f_ij > 0`` on every four points."""
    values = tuple((q, quadruple_sum(ps, q, f)) for q in combinations(range(len(ps)), 4))
    bad = tuple((q, r) for q, r in values if r <= 0)
    return ValidityReport(not bad, bad, values)


# --- vertices, edges and rays ----------------------------------------------

@dataclass(frozen=True)
class PolyhedronVertex:
    ppt: PPT
    v: Motion

    @property
    def tight_edges(self) -> frozenset:
        return self.ppt.edges


def solve_tight(ps: PointSet, pairs: Iterable[Edge], f: PerturbationTable, norm: Normalization):
    pairs = sorted(pairs)
    rows = rigidity_rows(ps, pairs) + norm.rows(len(ps))
    rhs = [f[e] for e in pairs] + [Fraction(0)] * 3
    return solve_linear(Matrix.from_rows(rows, 2 * len(ps)), rhs)


def vertex_for_ppt(ps: PointSet, f: PerturbationTable, t: PPT,
                   norm: Normalization | None = None) -> PolyhedronVertex:
    norm = (norm or Normalization.default(ps)).validate(ps)
    sol = solve_tight(ps, t.edges, f, norm)
    if not sol.unique:
        raise InvariantViolation(f"tight system of {t.key} is not uniquely solvable ({sol.kind.value})")
    v = unflatten(sol.particular)
    for e, s in all_strains(ps, v).items():
        if e in t.edges:
            if s != f[e]:
                raise InvariantViolation(f"tight edge {e} has strain {s} != {f[e]}")
        elif s <= f[e]:
            raise InvalidPerturbationError(
                f"non-edge {e} of {t.key} has strain {s} <= f = {f[e]}; perturbation is invalid"
            )
    return PolyhedronVertex(t, v)


def feasible(ps: PointSet, f: PerturbationTable, v: Motion) -> bool:
    return all(s >= f[e] for e, s in all_strains(ps, v).items())


def tight_set(ps: PointSet, f: PerturbationTable, v: Motion) -> frozenset:
    return frozenset(e for e, s in all_strains(ps, v).items() if s == f[e])


@dataclass(frozen=True)
class ExtremeRay:
    direction: Motion
    tight_pairs: frozenset

    def canonical_direction(self) -> tuple:
        return canonical_direction(self.direction)


def canonical_direction(m: Motion) -> tuple:
    """Flattened direction scaled so its first nonzero coordinate has absolute value 1."""
    x = flatten(m)
    lead = next((c for c in x if c != 0), None)
    if lead is None:
        raise PreconditionError("zero vector has no direction")
    s = abs(lead)
    return tuple(c / s for c in x)


@dataclass(frozen=True)
class PolytopeRay:
    vertex: tuple  # PPT key
    hull_edge: Edge
    direction: Motion
    tight_pairs: frozenset


@dataclass
class Polytope:
    base: PointSet
    f: PerturbationTable
    norm: Normalization
    flip_graph: FlipGraph
    vertices: dict  # key -> PolyhedronVertex
    bounded_edges: list  # (key, key, out edge, in edge)
    rays: list  # PolytopeRay


def realize_polytope(ps: PointSet, f: PerturbationTable | None = None,
                     norm: Normalization | None = None,
                     flip_graph: FlipGraph | None = None) -> Polytope:
    """Vertices, bounded edges and rays, each certified by exact feasibility checks."""
    f = f if f is not None else make_f(ps)
    norm = (norm or Normalization.default(ps)).validate(ps)
    fg = flip_graph or enumerate_ppts(ps)
    verts = {k: vertex_for_ppt(ps, f, fg.ppts[k], norm) for k in fg.nodes}
    n = len(ps)
    bounded = []
    for a, b, eo, ei in fg.edges():
        va, vb = verts[a].v, verts[b].v
        mid = scale_motion(add_motions(va, vb), Fraction(1, 2))
        if not feasible(ps, f, mid):
            raise InvariantViolation(f"midpoint of flip edge {a} - {b} is infeasible")
        shared = tight_set(ps, f, mid)
        if len(shared) != 2 * n - 4 or shared != (verts[a].tight_edges & verts[b].tight_edges):
            raise InvariantViolation(f"flip edge {a} - {b} has tight set of size {len(shared)}")
        bounded.append((a, b, eo, ei))
    hull = sorted(hull_edges(ps))
    rays = []
    for k in fg.nodes:
        vx = verts[k]
        for he in hull:
            mech = pte_mechanism(vx.ppt, he, norm)
            d = mech.flex
            for lam in (1, 10):
                pt = add_motions(vx.v, d, Fraction(lam))
                if not feasible(ps, f, pt):
                    raise InvariantViolation(f"ray from {k} along removed {he} leaves the polyhedron")
                if tight_set(ps, f, pt) != mech.graph.edges:
                    raise InvariantViolation(f"ray from {k} along removed {he} has the wrong tight set")
            rays.append(PolytopeRay(k, he, d, frozenset(e for e, s in all_strains(ps, d).items() if s == 0)))
    return Polytope(ps, f, norm, fg, verts, bounded, rays)


# --- expansion cone --------------------------------------------------------

def cone_extreme_rays(ps: PointSet, norm: Normalization | None = None,
                      flip_graph: FlipGraph | None = None) -> list[ExtremeRay]:
    """Extreme rays from collapsed pte-mechanisms, deduplicated by tight set."""
    norm = (norm or Normalization.default(ps)).validate(ps)
    fg = flip_graph or enumerate_ppts(ps)
    found: dict[frozenset, ExtremeRay] = {}
    for k in fg.nodes:
        t = fg.ppts[k]
        for he in sorted(hull_edges(ps)):
            mech = pte_mechanism(t, he, norm)
            c = collapse(mech)
            ray = ExtremeRay(mech.flex, c.tight_pairs)
            prev = found.get(c.tight_pairs)
            if prev is None:
                found[c.tight_pairs] = ray
            elif prev.canonical_direction() != ray.canonical_direction():
                raise InvariantViolation("equal collapsed mechanisms with different directions")
    return sorted(found.values(), key=lambda r: sorted(r.tight_pairs))


def brute_force_rays(ps: PointSet, norm: Normalization | None = None, max_n: int = 6) -> list[ExtremeRay]:
    """Independent oracle: every rank-(2n-4) subset of the cone constraints.

    A ray's equality set has corank one inside the normalized space, so it
    contains ``2n - 4`` independent constraints; enumerating subsets of
    exactly that size finds every ray.
    """
    n = len(ps)
    if n > max_n:
        raise PreconditionError(f"brute-force ray oracle refuses n = {n} > {max_n}")
    norm = (norm or Normalization.default(ps)).validate(ps)
    pairs = ps.pairs()
    rows = dict(zip(pairs, rigidity_rows(ps, pairs)))
    nrows = norm.rows(n)
    k = 2 * n - 4
    seen: dict[tuple, ExtremeRay] = {}
    for sub in combinations(pairs, k):
        basis = nullspace(Matrix.from_rows([rows[e] for e in sub] + nrows, 2 * n))
        if len(basis) != 1:
            continue
        d = unflatten(basis[0])
        s = all_strains(ps, d)
        if all(x >= 0 for x in s.values()):
            pass
        elif all(x <= 0 for x in s.values()):
            d = scale_motion(d, -1)
            s = {e: -x for e, x in s.items()}
        else:
            continue
        key = canonical_direction(d)
        if key not in seen:
            seen[key] = ExtremeRay(d, frozenset(e for e, x in s.items() if x == 0))
    return sorted(seen.values(), key=lambda r: sorted(r.tight_pairs))


def ray_signature(rays: Iterable[ExtremeRay]) -> set:
    return {(r.canonical_direction(), r.tight_pairs) for r in rays}


def closure_violations(ps: PointSet, tight: frozenset) -> list[str]:
    """Check the forced completions of a tight set of an expansive motion.

    Crossing tight pairs, non-pointed tight stars and tight convex
    subpolygons all force the complete graph on the points involved.
    """
    tight = set(tight)
    n = len(ps)
    out = []

    def complete(vs):
        return all(edge(a, b) in tight for a, b in combinations(sorted(set(vs)), 2))

    tl = sorted(tight)
    for e1, e2 in combinations(tl, 2):
        if segments_cross(e1, e2, ps) and not complete(e1 + e2):
            out.append(f"crossing {e1} x {e2} not completed")
    nbrs = {v: [u for e in tl if v in e for u in e if u != v] for v in range(n)}
    for v in range(n):
        for tri in combinations(nbrs[v], 3):
            if not pointed_star(ps, v, tri) and not complete((v,) + tri):
                out.append(f"non-pointed star at {v} via {tri} not completed")
    for size in range(3, n + 1):
        for sub in combinations(range(n), size):
            sps = ps.subset(sub)
            h = convex_hull(sps)
            if len(h) != size:
                continue
            cyc = [sub[i] for i in h]
            if not all(edge(cyc[i], cyc[(i + 1) % size]) in tight for i in range(size)):
                continue
            poly = [ps[i] for i in cyc]
            enclosed = [q for q in range(n) if q not in sub and point_in_convex_polygon(ps[q], poly)]
            if not complete(sub + tuple(enclosed)):
                out.append(f"convex polygon {cyc} not completed")
    return out


# --- strictly expansive motions ---------------------------------------------

def expansive_flex(g: EmbeddedGraph, norm: Normalization | None = None) -> Motion | None:
    """Expansive flex strictly expanding every missing hull edge; None when all hull edges are present."""
    ps = g.base
    if not (is_pointed(g) and is_noncrossing(g)):
        raise PreconditionError("expansive_flex needs a pointed non-crossing graph")
    norm = (norm or Normalization.default(ps)).validate(ps)
    missing = sorted(hull_edges(ps) - g.edges)
    if not missing:
        return None
    total = zero_motion(len(ps))
    for he in missing:
        t = PPT(complete_to_ppt(g.with_edges(add=[he])))
        total = add_motions(total, pte_mechanism(t, he, norm).flex)
    s = all_strains(ps, total)
    if any(s[e] != 0 for e in g.edges) or any(x < 0 for x in s.values()) or any(s[e] <= 0 for e in missing):
        raise InvariantViolation("summed pte-mechanism flexes are not strictly expansive where required")
    return total


# --- strain coordinates ------------------------------------------------------

def delta_of_motion(ps: PointSet, v: Motion) -> dict:
    return all_strains(ps, v)


@dataclass(frozen=True)
class QuadrupleResiduals:
    residuals: tuple  # ((i, j, k, l), sum w_ij delta_ij)

    @property
    def in_image(self) -> bool:
        return all(r == 0 for _, r in self.residuals)


def check_quadruple_equations(ps: PointSet, delta: Mapping[Edge, Fraction]) -> QuadrupleResiduals:
    return QuadrupleResiduals(tuple((q, quadruple_sum(ps, q, delta))
                                    for q in combinations(range(len(ps)), 4)))


def reconstruct_motion(ps: PointSet, delta: Mapping[Edge, Fraction],
                       norm: Normalization | None = None) -> Motion:
    """Recover the normalized motion whose strains are ``delta``.

    The first anchor is pinned at the origin, the second slides along the
    y-axis, and every other point is fixed by its two strains to the anchors.
    """
    norm = (norm or Normalization.default(ps)).validate(ps)
    delta = {edge(*e): Q(x) for e, x in delta.items()}
    res = check_quadruple_equations(ps, delta)
    if not res.in_image:
        bad = [q for q, r in res.residuals if r != 0]
        raise NotInImageError(f"quadruple equations fail on {bad[:5]}{'...' if len(bad) > 5 else ''}")
    a, b = norm.anchor_a, norm.anchor_b
    pa, pb = ps[a], ps[b]
    zero = Fraction(0)
    v = [None] * len(ps)
    v[a] = Point(zero, zero)
    # <p_b - p_a, (0, y) - 0> = delta_ab
    v[b] = Point(zero, delta[edge(a, b)] / (pb.y - pa.y))
    for i in range(len(ps)):
        if i in (a, b):
            continue
        pi = ps[i]
        # <p_i - p_a, v_i - v_a> = delta_ai ; <p_i - p_b, v_i - v_b> = delta_bi
        da, db = pi - pa, pi - pb
        r1 = delta[edge(a, i)]
        r2 = delta[edge(b, i)] + db.x * v[b].x + db.y * v[b].y
        det = da.x * db.y - da.y * db.x
        v[i] = Point((r1 * db.y - da.y * r2) / det, (da.x * r2 - db.x * r1) / det)
    v = tuple(v)
    if all_strains(ps, v) != {e: delta[e] for e in ps.pairs()}:
        raise InvariantViolation("reconstructed motion does not reproduce the strain vector")
    return v


def delta_space_check(ps: PointSet, f: PerturbationTable, vertex: PolyhedronVertex) -> bool:
    """Slack coordinates ``d = f - strain`` are <= 0, zero exactly on the PPT, and sum to 1 per quadruple."""
    d = {e: f[e] - s for e, s in all_strains(ps, vertex.v).items()}
    if any(x > 0 for x in d.values()):
        return False
    if {e for e, x in d.items() if x == 0} != set(vertex.tight_edges):
        return False
    return all(quadruple_sum(ps, q, d) == 1 for q in combinations(range(len(ps)), 4))
