"""Exact rational scalars and dense linear algebra over the rationals.

Everything is built on :class:`fractions.Fraction`; no floating point is
used anywhere in this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import PreconditionError

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def Q(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected: they would silently smuggle rounding error into
    every downstream identity.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(x) -> Fraction:
    """Parse the JSON encoding: bare integer or ``"num/den"`` string."""
    return Q(x)


def format_rational(q: Fraction):
    """JSON encoding: a bare int when the denominator is 1, else ``"num/den"``."""
    q = Q(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


class Matrix:
    """Dense row-major matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[RationalLike]):
        entries = tuple(Q(e) for e in entries)
        if len(entries) != rows * cols:
            raise PreconditionError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise PreconditionError("column count needed for an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise PreconditionError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def apply(self, x: Sequence[RationalLike]) -> list[Fraction]:
        if len(x) != self.cols:
            raise PreconditionError("vector length does not match column count")
        x = [Q(v) for v in x]
        return [sum((self[i, j] * x[j] for j in range(self.cols) if x[j]), Fraction(0))
                for i in range(self.rows)]

    def stack(self, other: "Matrix") -> "Matrix":
        if other.cols != self.cols:
            raise PreconditionError("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def _as_matrix(A) -> Matrix:
    if isinstance(A, Matrix):
        return A
    return Matrix.from_rows(A)


def _integer_row(row) -> list[int]:
    den = 1
    for e in row:
        d = e.denominator
        if den % d:
            den = den * d // gcd(den, d)
    return [e.numerator * (den // e.denominator) for e in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for e in row:
        if e:
            g = gcd(g, e)
            if g == 1:
                return row
    return [e // g for e in row] if g > 1 else row


def rref(A) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Elimination runs on integer rows (cleared denominators, divided by their
    content after each step); only the final normalization builds Fractions.
    First nonzero entry is taken as pivot.
    """
    A = _as_matrix(A)
    m = [_integer_row(r) for r in A.to_rows()]
    pivots: list[int] = []
    r = 0
    for c in range(A.cols):
        if r == A.rows:
            break
        p = next((i for i in range(r, A.rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        pv = pr[c]
        for i in range(A.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = _primitive([pv * a - f * b for a, b in zip(m[i], pr)])
        pivots.append(c)
        r += 1
    out = []
    for i, row in enumerate(m):
        if i < len(pivots):
            pv = row[pivots[i]]
            out.append([Fraction(e, pv) for e in row])
        else:
            out.append([Fraction(0)] * A.cols)
    return out, pivots


def rank(A) -> int:
    return len(rref(A)[1])


def nullspace(A) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``; one vector per free column."""
    A = _as_matrix(A)
    m, pivots = rref(A)
    pivot_set = set(pivots)
    basis = []
    for free in range(A.cols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * A.cols
        x[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            x[pc] = -m[row][free]
        basis.append(x)
    return basis


class SolutionKind(enum.Enum):
    UNIQUE = "unique"
    NONE = "none"
    INFINITE = "infinite"


@dataclass(frozen=True)
class LinearSolution:
    kind: SolutionKind
    particular: tuple[Fraction, ...] | None = None
    null_basis: tuple[tuple[Fraction, ...], ...] = field(default=())

    @property
    def unique(self) -> bool:
        return self.kind is SolutionKind.UNIQUE

    @property
    def consistent(self) -> bool:
        return self.kind is not SolutionKind.NONE


def solve_linear(A, rhs: Sequence[RationalLike]) -> LinearSolution:
    """Solve ``A x = rhs`` exactly by Gauss-Jordan elimination on the augmented matrix."""
    A = _as_matrix(A)
    rhs = [Q(b) for b in rhs]
    if len(rhs) != A.rows:
        raise PreconditionError(f"rhs has length {len(rhs)}, matrix has {A.rows} rows")
    aug = Matrix(A.rows, A.cols + 1,
                 [e for i in range(A.rows) for e in A.row(i) + [rhs[i]]])
    m, pivots = rref(aug)
    if pivots and pivots[-1] == A.cols:
        return LinearSolution(SolutionKind.NONE)
    x = [Fraction(0)] * A.cols
    for row, pc in enumerate(pivots):
        x[pc] = m[row][A.cols]
    null = nullspace(A)
    if not null:
        return LinearSolution(SolutionKind.UNIQUE, tuple(x))
    return LinearSolution(SolutionKind.INFINITE, tuple(x), tuple(tuple(b) for b in null))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
