"""Infinitesimal rigidity: the rigidity map, flexes and self-stresses.

A motion is a tuple of velocity vectors (``Point`` instances), one per point.
In flattened form the velocity of point ``i`` occupies columns ``2i`` (x) and
``2i + 1`` (y).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import GeneralPositionError, InvariantViolation, PreconditionError
from .exact import Matrix, Q, nullspace, rank
from .geometry import Edge, EmbeddedGraph, Point, PointSet, edge, hull_edges

Motion = tuple  # tuple[Point, ...]
StrainVector = dict  # dict[Edge, Fraction]
Stress = dict  # dict[Edge, Fraction]


def motion(velocities: Iterable) -> Motion:
    return tuple(v if isinstance(v, Point) else Point.of(*v) for v in velocities)


def flatten(m: Motion) -> list[Fraction]:
    return [c for v in m for c in v]


def unflatten(x: Sequence[Fraction]) -> Motion:
    return tuple(Point(Q(x[2 * i]), Q(x[2 * i + 1])) for i in range(len(x) // 2))


def zero_motion(n: int) -> Motion:
    return tuple(Point(Fraction(0), Fraction(0)) for _ in range(n))


def add_motions(a: Motion, b: Motion, scale: Fraction = Fraction(1)) -> Motion:
    return tuple(Point(u.x + scale * v.x, u.y + scale * v.y) for u, v in zip(a, b))


def scale_motion(a: Motion, s) -> Motion:
    s = Q(s)
    return tuple(Point(s * u.x, s * u.y) for u in a)


@dataclass(frozen=True)
class Normalization:
    """Tie-down fixing ``v[anchor_a] = 0`` and the x-velocity of ``anchor_b``."""

    anchor_a: int
    anchor_b: int

    @classmethod
    def default(cls, ps: PointSet) -> "Normalization":
        a = 0
        for b in range(1, len(ps)):
            if ps[b].y != ps[a].y:
                return cls(a, b)
        raise PreconditionError("all points share one y-coordinate; no anchor pair exists")

    def validate(self, ps: PointSet) -> "Normalization":
        n = len(ps)
        if not (0 <= self.anchor_a < n and 0 <= self.anchor_b < n) or self.anchor_a == self.anchor_b:
            raise PreconditionError(f"bad anchors {self.anchor_a}, {self.anchor_b} for {n} points")
        if ps[self.anchor_a].y == ps[self.anchor_b].y:
            raise PreconditionError("normalization anchors must have different y-coordinates")
        return self

    def rows(self, n: int) -> list[list[Fraction]]:
        out = []
        for col in (2 * self.anchor_a, 2 * self.anchor_a + 1, 2 * self.anchor_b):
            r = [Fraction(0)] * (2 * n)
            r[col] = Fraction(1)
            out.append(r)
        return out

    def holds(self, m: Motion) -> bool:
        va, vb = m[self.anchor_a], m[self.anchor_b]
        return va.x == 0 and va.y == 0 and vb.x == 0

    def apply(self, ps: PointSet, m: Motion) -> Motion:
        """Subtract the trivial motion that makes ``m`` satisfy the tie-down."""
        a, b = self.anchor_a, self.anchor_b
        va = m[a]
        shifted = [Point(v.x - va.x, v.y - va.y) for v in m]
        # rotation about p_a with angular speed w moves p by w * (-(p.y - pa.y), p.x - pa.x)
        pa = ps[a]
        w = -shifted[b].x / (ps[b].y - pa.y)
        return tuple(Point(v.x + w * (p.y - pa.y), v.y - w * (p.x - pa.x))
                     for v, p in zip(shifted, ps))


def rigidity_rows(ps: PointSet, pairs: Iterable[Edge]) -> list[list[Fraction]]:
    n = len(ps)
    rows = []
    for i, j in pairs:
        r = [Fraction(0)] * (2 * n)
        d = ps[i] - ps[j]
        r[2 * i], r[2 * i + 1] = d.x, d.y
        r[2 * j], r[2 * j + 1] = -d.x, -d.y
        rows.append(r)
    return rows


def rigidity_matrix(g: EmbeddedGraph) -> Matrix:
    """|E| x 2n matrix, rows in sorted edge order."""
    return Matrix.from_rows(rigidity_rows(g.base, sorted(g.edges)), 2 * g.n)


def strain(ps: PointSet, m: Motion, i: int, j: int) -> Fraction:
    d = ps[i] - ps[j]
    vi, vj = m[i], m[j]
    return d.x * (vi.x - vj.x) + d.y * (vi.y - vj.y)


def strains(g: EmbeddedGraph, m: Motion) -> StrainVector:
    if len(m) != g.n:
        raise PreconditionError(f"motion has {len(m)} velocities for {g.n} points")
    return {e: strain(g.base, m, *e) for e in sorted(g.edges)}


def _scaled_ints(values) -> tuple[list[int], int]:
    den = 1
    for q in values:
        d = q.denominator
        if den % d:
            den = den * d // gcd(den, d)
    return [q.numerator * (den // q.denominator) for q in values], den


def all_strains(ps: PointSet, m: Motion) -> StrainVector:
    """Strain of every pair; computed on integers with one division per pair."""
    n = len(ps)
    if len(m) != n:
        raise PreconditionError(f"motion has {len(m)} velocities for {n} points")
    pc, dp = _scaled_ints([c for p in ps for c in p])
    vc, dv = _scaled_ints([c for v in m for c in v])
    den = dp * dv
    out = {}
    for i in range(n):
        px, py, vx, vy = pc[2 * i], pc[2 * i + 1], vc[2 * i], vc[2 * i + 1]
        for j in range(i + 1, n):
            num = (px - pc[2 * j]) * (vx - vc[2 * j]) + (py - pc[2 * j + 1]) * (vy - vc[2 * j + 1])
            out[(i, j)] = Fraction(num, den)
    return out


def flex_space(g: EmbeddedGraph, norm: Normalization | None = None) -> list[Motion]:
    """Basis of normalized flexes; its size is the degree of freedom."""
    norm = (norm or Normalization.default(g.base)).validate(g.base)
    rows = rigidity_rows(g.base, sorted(g.edges)) + norm.rows(g.n)
    return [unflatten(b) for b in nullspace(Matrix.from_rows(rows, 2 * g.n))]


def dof(g: EmbeddedGraph, norm: Normalization | None = None) -> int:
    return len(flex_space(g, norm))


def stress_space(g: EmbeddedGraph) -> list[Stress]:
    es = sorted(g.edges)
    if not es:
        return []
    At = rigidity_matrix(g).transpose()
    return [dict(zip(es, b)) for b in nullspace(At)]


def is_self_stress(ps: PointSet, w: Mapping[Edge, Fraction]) -> bool:
    force = [Point(Fraction(0), Fraction(0)) for _ in range(len(ps))]
    for (i, j), wij in w.items():
        d = ps[i] - ps[j]
        force[i] = Point(force[i].x + wij * d.x, force[i].y + wij * d.y)
        force[j] = Point(force[j].x - wij * d.x, force[j].y - wij * d.y)
    return all(f.x == 0 and f.y == 0 for f in force)


def stress_from_affine_dependence(alpha: Sequence, ps: PointSet) -> Stress:
    """Self-stress ``w_ij = alpha_i alpha_j`` of the complete graph."""
    alpha = [Q(a) for a in alpha]
    if len(alpha) != len(ps):
        raise PreconditionError("one coefficient per point required")
    sx = sum((a * p.x for a, p in zip(alpha, ps)), Fraction(0))
    sy = sum((a * p.y for a, p in zip(alpha, ps)), Fraction(0))
    if sx != 0 or sy != 0 or sum(alpha) != 0:
        raise PreconditionError("coefficients are not an affine dependence")
    w = {(i, j): alpha[i] * alpha[j] for i, j in combinations(range(len(ps)), 2)}
    if not is_self_stress(ps, w):
        raise InvariantViolation("affine dependence produced a non-equilibrium stress")
    return w


def four_point_stress(ps: PointSet, idx: Sequence[int] | None = None) -> Stress:
    """The normalized self-stress of the complete graph on four points.

    ``w_ij = 1 / (det(p_i, p_j, p_k) * det(p_i, p_j, p_l))`` where ``k, l``
    are the other two indices.  Boundary edges get positive weight, interior
    edges negative; both facts are checked.
    """
    if idx is None:
        idx = tuple(range(len(ps)))
    idx = tuple(idx)
    if len(idx) != 4 or len(set(idx)) != 4:
        raise PreconditionError("four distinct indices required")
    w = {}
    for a, b in combinations(range(4), 2):
        k, l = (c for c in range(4) if c not in (a, b))
        i, j = idx[a], idx[b]
        d1 = ps.det(i, j, idx[k])
        d2 = ps.det(i, j, idx[l])
        if d1 == 0 or d2 == 0:
            raise GeneralPositionError((i, j, idx[k] if d1 == 0 else idx[l]))
        w[edge(i, j)] = 1 / (d1 * d2)
    sub = ps.subset(idx)
    local = {edge(idx.index(i), idx.index(j)): v for (i, j), v in w.items()}
    if not is_self_stress(sub, local):
        raise InvariantViolation(f"four-point stress on {idx} is not in equilibrium")
    boundary = {edge(idx[a], idx[b]) for a, b in hull_edges(sub)}
    for e, v in w.items():
        if (v > 0) != (e in boundary):
            raise InvariantViolation(f"unexpected sign {v} on edge {e} of quadruple {idx}")
    return w


def is_laman(g: EmbeddedGraph) -> bool:
    """Exact 2n-3 count plus the 2k-3 bound on every induced subgraph (exhaustive)."""
    n = g.n
    if len(g.edges) != 2 * n - 3:
        return False
    es = list(g.edges)
    for k in range(2, n):
        for sub in combinations(range(n), k):
            s = set(sub)
            if sum(1 for i, j in es if i in s and j in s) > 2 * k - 3:
                return False
    return True


def infinitesimally_rigid(g: EmbeddedGraph) -> bool:
    return rank(rigidity_matrix(g)) == 2 * g.n - 3 if g.edges else g.n == 1
