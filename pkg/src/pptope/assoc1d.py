"""The one-dimensional polyhedron ``v_j - v_i >= g_ij`` and non-crossing alternating trees.

Vertices are numbered ``1..n`` here, so trees read exactly like the usual
notation ``{12, 13, 14}``; position ``k`` of a motion list holds ``v_{k+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InvalidPerturbationError, InvariantViolation, PreconditionError
from .exact import Matrix, Q, nullspace, rank

Pair = tuple[int, int]


@dataclass(frozen=True)
class GTable:
    n: int
    g: Mapping  # (i, j) with 1 <= i < j <= n -> Fraction
    scheme: str = "explicit"

    @classmethod
    def square(cls, n: int) -> "GTable":
        return cls.convex_function(n, list(range(1, n + 1)), lambda t: t * t, scheme="square")

    @classmethod
    def convex_function(cls, n: int, t: Sequence, h: Callable, scheme: str = "convex") -> "GTable":
        t = [Q(x) for x in t]
        if len(t) != n or any(a >= b for a, b in zip(t, t[1:])):
            raise PreconditionError("t-values must be strictly increasing, one per point")
        return cls(n, {(i, j): Q(h(t[j - 1] - t[i - 1])) for i, j in combinations(range(1, n + 1), 2)},
                   scheme)

    @classmethod
    def explicit(cls, n: int, values: Mapping) -> "GTable":
        g = {}
        for (i, j), x in values.items():
            if not 1 <= i < j <= n:
                raise PreconditionError(f"bad pair {(i, j)} for n = {n}")
            g[(i, j)] = Q(x)
        missing = [p for p in combinations(range(1, n + 1), 2) if p not in g]
        if missing:
            raise PreconditionError(f"g-table lacks pairs {missing}")
        return cls(n, g)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if i == j:
            return Fraction(0)
        return self.g[(i, j)]


@dataclass(frozen=True)
class GValidity:
    valid: bool
    crossing_violations: tuple  # (i, j, k, l) with g_il + g_jk <= g_ik + g_jl
    transitive_violations: tuple  # (i, k, l) with g_il <= g_ik + g_kl

    def __bool__(self):
        return self.valid


def check_g_validity(g: GTable) -> GValidity:
    n = g.n
    cross = tuple((i, j, k, l) for i, j, k, l in combinations(range(1, n + 1), 4)
                  if not g[i, l] + g[j, k] > g[i, k] + g[j, l])
    trans = tuple((i, k, l) for i, k, l in combinations(range(1, n + 1), 3)
                  if not g[i, l] > g[i, k] + g[k, l])
    return GValidity(not cross and not trans, cross, trans)


# --- trees -----------------------------------------------------------------

def _transitive(e: Pair, f: Pair) -> bool:
    return e[1] == f[0] or f[1] == e[0]


def _crossing(e: Pair, f: Pair) -> bool:
    (i, k), (j, l) = sorted((e, f))
    return i < j < k < l


def is_noncrossing_alternating(edges: Iterable[Pair]) -> bool:
    es = list(edges)
    return not any(_transitive(e, f) or _crossing(e, f) for e, f in combinations(es, 2))


def _is_spanning_tree(n: int, edges: Iterable[Pair]) -> bool:
    es = list(edges)
    if len(es) != n - 1:
        return False
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in es:
        a, b = find(i), find(j)
        if a == b:
            return False
        parent[a] = b
    return True


@dataclass(frozen=True)
class Tree1D:
    n: int
    edges: frozenset

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        es = frozenset((min(i, j), max(i, j)) for i, j in edges)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", es)
        if any(not 1 <= i < j <= n for i, j in es):
            raise PreconditionError(f"edge out of range in {sorted(es)}")
        if not _is_spanning_tree(n, es):
            raise PreconditionError(f"{sorted(es)} is not a spanning tree on {n} vertices")
        if not is_noncrossing_alternating(es):
            raise PreconditionError(f"{sorted(es)} has transitive or crossing edges")
        if n >= 2 and (1, n) not in es:
            raise InvariantViolation(f"{sorted(es)} misses the edge (1, {n})")

    def key(self) -> tuple:
        return tuple(sorted(self.edges))

    def __repr__(self):
        return "Tree1D{" + ",".join(f"{i}{j}" if self.n < 10 else f"{i}-{j}" for i, j in self.key()) + "}"


def enumerate_trees(n: int) -> list[Tree1D]:
    """All non-crossing alternating spanning trees on ``1..n`` by backtracking.

    Candidate edges are decided in lexicographic order; a branch dies as soon
    as a transitive or crossing pair, a cycle, or an isolated finished vertex
    appears.
    """
    if n < 2:
        raise PreconditionError("need at least two vertices")
    cands = list(combinations(range(1, n + 1), 2))
    last_of_row = {}
    for idx, (i, _) in enumerate(cands):
        last_of_row[i] = idx
    out = []
    chosen: list[Pair] = []
    degree = [0] * (n + 1)
    comp = list(range(n + 1))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    def rec(idx: int):
        if len(chosen) == n - 1:
            if all(degree[v] for v in range(1, n + 1)):
                out.append(Tree1D(n, chosen))
            return
        if idx == len(cands):
            return
        if len(cands) - idx < n - 1 - len(chosen):
            return
        e = cands[idx]
        i, j = e
        row_done = last_of_row[i] == idx
        ok = all(not _transitive(e, f) and not _crossing(e, f) for f in chosen)
        if ok:
            a, b = find(i), find(j)
            if a != b:
                chosen.append(e)
                degree[i] += 1
                degree[j] += 1
                comp[a] = b
                rec(idx + 1)
                comp[a] = a
                degree[i] -= 1
                degree[j] -= 1
                chosen.pop()
        # skipping (1, n) is never allowed
        if e == (1, n):
            return
        if row_done and degree[i] == 0:
            return
        rec(idx + 1)

    rec(0)
    return sorted(out, key=Tree1D.key)


def catalan(k: int) -> int:
    from math import comb
    return comb(2 * k, k) // (k + 1)


# --- bijections ------------------------------------------------------------

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def tree_to_bracketing(t: Tree1D) -> str:
    """Edge ``ij`` becomes a pair of parentheses around letters ``i..j``."""
    if t.n > len(LETTERS):
        raise PreconditionError("bracketing strings support at most 26 letters")
    opens = {i: sorted((j for a, j in t.edges if a == i), reverse=True) for i in range(1, t.n + 1)}
    closes = {j: sorted((i for i, b in t.edges if b == j), reverse=True) for j in range(1, t.n + 1)}
    parts = []
    for k in range(1, t.n + 1):
        parts.append("(" * len(opens[k]))
        parts.append(LETTERS[k - 1])
        parts.append(")" * len(closes[k]))
    return "".join(parts)


def bracketing_to_tree(s: str) -> Tree1D:
    stack: list[int] = []
    edges = []
    letter = 0
    for ch in s:
        if ch == "(":
            stack.append(letter + 1)
        elif ch == ")":
            if not stack:
                raise PreconditionError(f"unbalanced bracketing {s!r}")
            edges.append((stack.pop(), letter))
        elif ch.isalpha():
            letter += 1
            if LETTERS[letter - 1] != ch:
                raise PreconditionError(f"letters of {s!r} must be consecutive from 'a'")
        elif not ch.isspace():
            raise PreconditionError(f"unexpected character {ch!r} in bracketing")
    if stack:
        raise PreconditionError(f"unbalanced bracketing {s!r}")
    return Tree1D(letter, edges)


@dataclass(frozen=True)
class BinaryNode:
    """Binary tree node; a missing child is ``None``."""

    left: "BinaryNode | None" = None
    right: "BinaryNode | None" = None

    def size(self) -> int:
        return 1 + (self.left.size() if self.left else 0) + (self.right.size() if self.right else 0)


def tree_to_binary(t: Tree1D) -> BinaryNode:
    """Nodes are tree edges; edge ``1n`` is the root, its two sides the subtrees."""

    def build(i: int, j: int):
        if i == j:
            return None
        # (i, j) is an edge; its two parts are the maximal sub-spans [i..k], [k+1..j]
        k = max((b for a, b in t.edges if a == i and b < j), default=i)
        return BinaryNode(build(i, k), build(k + 1, j))

    return build(1, t.n)


def binary_to_tree(root: BinaryNode | None) -> Tree1D:
    edges = []

    def place(node, start):
        # returns the last letter covered by this subtree
        if node is None:
            return start
        mid = place(node.left, start)
        end = place(node.right, mid + 1)
        edges.append((start, end))
        return end

    n = place(root, 1)
    return Tree1D(n, edges)


# --- polyhedron ------------------------------------------------------------

@dataclass(frozen=True)
class Vertex1D:
    tree: Tree1D
    v: tuple  # v[0] = v_1 = 0


def vertex_for_tree(g: GTable, t: Tree1D) -> Vertex1D:
    if g.n != t.n:
        raise PreconditionError("table and tree sizes differ")
    n = t.n
    v: list = [None] * (n + 1)
    v[1] = Fraction(0)
    adj = {k: [] for k in range(1, n + 1)}
    for i, j in t.edges:
        adj[i].append(j)
        adj[j].append(i)
    stack = [1]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if v[b] is None:
                v[b] = v[a] + g[a, b] if a < b else v[a] - g[b, a]
                stack.append(b)
    for i, j in combinations(range(1, n + 1), 2):
        diff = v[j] - v[i]
        if (i, j) in t.edges:
            if diff != g[i, j]:
                raise InvariantViolation(f"tree edge {(i, j)} not tight")
        elif not diff > g[i, j]:
            raise InvalidPerturbationError(f"non-edge {(i, j)} of {t!r}: {diff} <= g = {g[i, j]}")
    return Vertex1D(t, tuple(v[1:]))


def realized_trees(g: GTable, trees: Iterable[Tree1D] | None = None) -> list[Tree1D]:
    """Trees whose tight system yields a vertex with exactly that tight set."""
    out = []
    for t in trees if trees is not None else enumerate_trees(g.n):
        try:
            vertex_for_tree(g, t)
        except InvalidPerturbationError:
            continue
        out.append(t)
    return out


def flip_tree(t: Tree1D, e) -> Tree1D:
    e = (min(e), max(e))
    if e not in t.edges:
        raise PreconditionError(f"{e} is not an edge of {t!r}")
    if e == (1, t.n):
        raise PreconditionError(f"edge (1, {t.n}) lies in every tree and cannot be flipped")
    rest = t.edges - {e}
    found = []
    for cand in combinations(range(1, t.n + 1), 2):
        if cand == e or cand in rest:
            continue
        es = rest | {cand}
        if _is_spanning_tree(t.n, es) and is_noncrossing_alternating(es):
            found.append(cand)
    if len(found) != 1:
        raise InvariantViolation(f"flipping {e} in {t!r} gave {len(found)} candidates")
    return Tree1D(t.n, rest | {found[0]})


def tree_flip_graph(n: int) -> dict:
    trees = enumerate_trees(n)
    adj = {t.key(): set() for t in trees}
    for t in trees:
        for e in t.edges:
            if e != (1, n):
                adj[t.key()].add(flip_tree(t, e).key())
    return adj


def cone_rays_1d(n: int) -> list[tuple]:
    """Staircase rays ``(0,...,0,1,...,1)`` with ``i`` leading zeros, ``i = 1..n-1``."""
    if n < 2:
        raise PreconditionError("need at least two points")
    return [tuple([Fraction(0)] * i + [Fraction(1)] * (n - i)) for i in range(1, n)]


def _components(n: int, edges) -> frozenset | None:
    """Vertex set of the component holding 0, or None when ``edges`` has a cycle."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(j)
        if a == b:
            return None
        parent[a] = b
    root = find(0)
    return frozenset(v for v in range(n) if find(v) == root)


def brute_force_rays_1d(n: int) -> list[tuple]:
    """Oracle: rank-(n-2) subsets of ``v_j - v_i >= 0`` plus ``v_1 = 0``.

    Rows of a subset are independent iff its pairs form a forest, and forests
    with the same split of the vertices span the same rows, so the nullspace
    is solved once per split.
    """
    pairs = list(combinations(range(n), 2))

    def row(i, j):
        r = [Fraction(0)] * n
        r[j], r[i] = Fraction(1), Fraction(-1)
        return r

    norm = [Fraction(1)] + [Fraction(0)] * (n - 1)
    seen = set()
    done = set()
    for sub in combinations(pairs, n - 2):
        split = _components(n, sub)
        if split is None or split in done:
            continue
        done.add(split)
        basis = nullspace(Matrix.from_rows([row(*p) for p in sub] + [norm], n))
        if len(basis) != 1:
            continue
        d = basis[0]
        slacks = [d[j] - d[i] for i, j in pairs]
        if all(s >= 0 for s in slacks):
            pass
        elif all(s <= 0 for s in slacks):
            d = [-x for x in d]
        else:
            continue
        lead = next(x for x in d if x != 0)
        seen.add(tuple(x / abs(lead) for x in d))
    return sorted(seen, key=lambda r: sum(1 for x in r if x == 0))


@dataclass(frozen=True)
class ParallelFacetPair:
    index: int
    first: Pair  # (1, i)
    second: Pair  # (i, n)


def facet_parallel_report(g: GTable) -> list[ParallelFacetPair]:
    """Pairs of parallel facets of the bounded face ``v_n - v_1 = g_1n``.

    Constraint normals are restricted to the face's affine hull (coordinates
    ``v_2..v_{n-1}``); a constraint is a facet when its tight vertices span a
    hyperplane of the face.
    """
    n = g.n
    if not check_g_validity(g):
        raise PreconditionError("g-table is not valid")
    verts = [vertex_for_tree(g, t) for t in enumerate_trees(n)]
    dim = n - 2

    def normal(i, j):
        r = [Fraction(0)] * (n + 1)
        r[j] += 1
        r[i] -= 1
        return tuple(r[2:n])

    facets = []
    for i, j in combinations(range(1, n + 1), 2):
        if (i, j) == (1, n):
            continue
        tight = [x.v for x in verts if (i, j) in x.tree.edges]
        if len(tight) < dim:
            continue
        diffs = [[a - b for a, b in zip(p[1:n - 1], tight[0][1:n - 1])] for p in tight[1:]]
        if dim == 1 or (diffs and rank(diffs) == dim - 1):
            facets.append((i, j))
    out = []
    for a, b in combinations(facets, 2):
        na, nb = normal(*a), normal(*b)
        if rank([list(na), list(nb)]) == 1:
            pair = sorted((a, b))
            first, second = pair if pair[0][0] == 1 else pair[::-1]
            idx = first[1]
            if first != (1, idx) or second != (idx, n):
                raise InvariantViolation(f"unexpected parallel facets {a}, {b}")
            out.append(ParallelFacetPair(idx, first, second))
    return sorted(out, key=lambda p: p.index)
