"""Exact integer/rational helpers and dense rational matrices.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.  Matrix inversion uses fraction-free
(Bareiss) Gauss-Jordan elimination on an integer matrix so that no
intermediate rational reductions are needed.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

Rational = Fraction

_FACT = [1]
_FACT_LOCK = threading.Lock()


def factorial(k: int) -> int:
    """Return ``k!``, extending a shared memo table on demand."""
    if k < 0:
        raise ValueError(f"factorial of negative number {k}")
    if k < len(_FACT):
        return _FACT[k]
    with _FACT_LOCK:
        table = _FACT
        while len(table) <= k:
            table.append(table[-1] * len(table))
    return _FACT[k]


def binomial(a: int, b: int) -> int:
    """Binomial coefficient, zero outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return factorial(a) // (factorial(b) * factorial(a - b))


def multichoose(n: int, k: int) -> int:
    """Number of multisets of size ``k`` over ``n`` elements."""
    if n == 0:
        return 1 if k == 0 else 0
    return binomial(n + k - 1, k)


class RatMatrix:
    """Dense immutable matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise DimensionMismatch("ragged rows")
        self._data = data

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self._data)) if self.rows else RatMatrix([])

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix([[c * x for x in row] for row in self._data])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return mat_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._data)
        return f"RatMatrix([{body}])"


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = list(zip(*(b.row(i) for i in range(b.rows)))) if b.rows else []
    out = []
    for i in range(a.rows):
        ra = a.row(i)
        out.append([sum((x * y for x, y in zip(ra, col)), Fraction(0)) for col in bt])
    if not bt:
        out = [[] for _ in range(a.rows)]
    return RatMatrix(out)


def _integer_rows(m: RatMatrix) -> tuple[list[list[int]], int]:
    """Clear denominators: return integer rows ``A`` and ``d`` with ``m = A / d``."""
    d = 1
    for i in range(m.rows):
        for x in m.row(i):
            d = lcm(d, x.denominator)
    rows = [[int(x * d) for x in m.row(i)] for i in range(m.rows)]
    return rows, d


def bareiss_inverse(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Fraction-free Gauss-Jordan inversion of an integer matrix.

    Returns ``(adj, d)`` with ``a^{-1} = adj / d`` (``d`` is the determinant
    up to sign).  Each step takes the smallest-magnitude nonzero pivot of the
    trailing submatrix; column swaps are undone on the rows of the result.
    """
    size = len(a)
    work = [list(row) + [1 if i == j else 0 for j in range(size)] for i, row in enumerate(a)]
    width = 2 * size
    colperm = list(range(size))
    prev = 1
    for k in range(size):
        pivot = None
        best = None
        for j in range(k, size):
            for i in range(k, size):
                v = work[i][j]
                if v and (best is None or abs(v) < best):
                    best, pivot = abs(v), (i, j)
        if pivot is None:
            raise SingularMatrix(f"zero pivot at elimination step {k}")
        pi, pj = pivot
        if pi != k:
            work[k], work[pi] = work[pi], work[k]
        if pj != k:
            for row in work:
                row[k], row[pj] = row[pj], row[k]
            colperm[k], colperm[pj] = colperm[pj], colperm[k]
        pk = work[k]
        p = pk[k]
        for i in range(size):
            if i == k:
                continue
            ri = work[i]
            f = ri[k]
            for j in range(width):
                if j == k:
                    continue
                num = p * ri[j] - f * pk[j]
                q, r = divmod(num, prev)
                if r:
                    raise ArithmeticError("inexact Bareiss division")
                ri[j] = q
            ri[k] = 0
        prev = p
    det = prev
    # Left block is now det * I; the right block holds det * (A P)^{-1}.
    # (A P)^{-1} = P^T A^{-1}, so row k of the block is row colperm[k] of A^{-1}.
    adj = [None] * size
    for k in range(size):
        adj[colperm[k]] = work[k][size:]
    return adj, det


def mat_inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a square rational matrix."""
    if not m.is_square:
        raise DimensionMismatch(f"cannot invert a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return RatMatrix([])
    rows, d = _integer_rows(m)
    adj, det = bareiss_inverse(rows)
    return RatMatrix([[Fraction(x * d, det) for x in row] for row in adj])
