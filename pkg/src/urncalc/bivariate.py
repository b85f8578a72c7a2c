"""Two-colour case: Bernstein polynomials on [0, 1] and their duals.

A distribution on two colours is identified with ``r = r_0`` in [0, 1];
outcome ``i`` of a draw of size ``K`` is the multiset ``i|0> + (K-i)|1>``
(``i`` counts the colour-0 balls).  Under this identification
``int_0^1 r^a (1-r)^b dr`` equals the simplex integral of ``r_0^a r_1^b``, so
duals on the interval and on the 2-simplex are compared directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from .channels import SignedDist
from .errors import IndexOutOfRange
from .exactmath import RatMatrix, binomial, mat_inverse, mat_mul
from .multiset import Multiset
from .signedmodels import signed_hypergeometric
from .simplexpoly import SimplexPoly


class UniPoly:
    """Univariate polynomial ``sum_k c_k r^k`` with rational coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, r) -> Fraction:
        r = Fraction(r)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * r + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        a = a + (Fraction(0),) * (size - len(a))
        b = b + (Fraction(0),) * (size - len(b))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coefficients or not other.coefficients:
            return UniPoly([])
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, x in enumerate(self.coefficients):
            for j, y in enumerate(other.coefficients):
                out[i + j] += x * y
        return UniPoly(out)

    def integral(self) -> Fraction:
        """``int_0^1 p(r) dr``."""
        return sum((c / (k + 1) for k, c in enumerate(self.coefficients)), Fraction(0))

    def to_simplex(self) -> SimplexPoly:
        """The same function written in ``r_0`` on the 2-simplex."""
        terms = {Multiset(2, {0: k}): c for k, c in enumerate(self.coefficients)}
        return SimplexPoly(2, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coefficients]})"


def interval_inner(f: UniPoly, g: UniPoly) -> Fraction:
    return (f * g).integral()


def bernstein(K: int, i: int) -> UniPoly:
    """``C(K, i) r^i (1-r)^(K-i)`` in the monomial basis."""
    if not 0 <= i <= K:
        raise IndexOutOfRange(f"Bernstein index {i} outside 0..{K}")
    coeffs = [0] * (K + 1)
    for j in range(K - i + 1):
        coeffs[K - j] = binomial(K, i) * binomial(K - i, j) * (-1) ** (K - i - j)
    return UniPoly(coeffs)


def bernstein_matrix(K: int) -> RatMatrix:
    """Column ``i`` holds the monomial coefficients of ``bernstein(K, i)``."""
    cols = [bernstein(K, i).coefficients for i in range(K + 1)]
    cols = [c + (Fraction(0),) * (K + 1 - len(c)) for c in cols]
    return RatMatrix(zip(*cols))


def moment_matrix(K: int) -> RatMatrix:
    """``S[i, j] = int_0^1 r^i r^j dr = 1 / (i + j + 1)``."""
    return RatMatrix([[Fraction(1, i + j + 1) for j in range(K + 1)] for i in range(K + 1)])


def bernstein_dual(K: int) -> list[UniPoly]:
    """Duals ``D_j`` with ``int B_i D_j = delta_ij``; columns of ``(B^T S)^-1``."""
    gram = mat_mul(bernstein_matrix(K).transpose(), moment_matrix(K))
    inv = mat_inverse(gram)
    return [UniPoly([inv[p, j] for p in range(K + 1)]) for j in range(K + 1)]


def outcome_multiset(K: int, i: int) -> Multiset:
    return Multiset(2, {0: i, 1: K - i})


def bihg(L: int, K: int, j: int) -> SignedDist:
    """Closed-form two-colour signed hypergeometric for urn ``j|0> + (L-j)|1>``.

    The inner sums over ``k`` are integers; the only divisions are by the
    binomial ``C(K+L, i+l)`` and the global prefactor.
    """
    if not 0 <= j <= L:
        raise IndexOutOfRange(f"urn index {j} outside 0..{L}")
    inner = []
    for ell in range(L + 1):
        acc = 0
        for k in range(min(j, ell) + 1):
            acc += ((2 * k + 1)
                    * binomial(L + k + 1, L - j) * binomial(L - k, L - j)
                    * binomial(L + k + 1, L - ell) * binomial(L - k, L - ell))
        inner.append((-1) ** (j + ell) * acc)
    weights = {}
    for i in range(K + 1):
        s = sum((Fraction(inner[ell], binomial(K + L, i + ell)) for ell in range(L + 1)),
                Fraction(0))
        weights[i] = Fraction(binomial(K, i), (K + L + 1) * binomial(L, j)) * s
    return SignedDist(weights)


def bihg_crosscheck(L: int, K: int) -> bool:
    """Closed form agrees with the dual-basis integral for every urn of size ``L``."""
    for j in range(L + 1):
        closed = bihg(L, K, j)
        general = signed_hypergeometric(K, outcome_multiset(L, j))
        if closed != general.map(lambda phi: phi[0]):
            return False
    return True


def emit_plot_data(K: int, grid: int, which: str = "basis") -> Iterator[tuple[int, Fraction, Fraction]]:
    """Rows ``(i, r, value)`` at ``r = t / grid`` for the basis or its dual."""
    if grid < 2:
        raise IndexOutOfRange("grid must be at least 2")
    if which == "basis":
        polys = [bernstein(K, i) for i in range(K + 1)]
    elif which == "dual":
        polys = bernstein_dual(K)
    else:
        raise ValueError(f"unknown basis kind {which!r}")
    for i, p in enumerate(polys):
        for t in range(grid + 1):
            r = Fraction(t, grid)
            yield i, r, p(r)
