"""The dual multinomial basis of degree-``K`` polynomials on the simplex.

The dual ``d_psi`` is written as ``sum_chi c[chi, psi] * r^chi``; stacking the
duality conditions gives ``D * FS * C = (2K+n-1)! * I`` with ``FS`` the matrix
of ``facto(phi + psi)`` and ``D`` the diagonal of multinomial coefficients,
hence ``c[phi, psi] = (2K+n-1)! / coefm(psi) * inv(FS)[phi, psi]``.

Results are cached per ``(n, K)``.  When ``URNCALC_CACHE_DIR`` is set the
coefficients are also persisted there as text, one line per nonzero
coefficient: ``psi-index chi-index num den``.
"""

from __future__ import annotations

import logging
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import SumNotConstant
from .exactmath import RatMatrix, factorial, mat_inverse
from .multiset import Multiset, coefm, enumerate_multisets, facto, index_of
from .simplexpoly import SimplexPoly, equal_on_simplex

log = logging.getLogger(__name__)

CACHE_ENV = "URNCALC_CACHE_DIR"


def fs_matrix(n: int, K: int) -> RatMatrix:
    """Symmetric matrix of ``facto(phi + psi)`` in canonical order."""
    order = enumerate_multisets(n, K)
    return RatMatrix([[facto(phi + psi) for psi in order] for phi in order])


@dataclass(frozen=True)
class DualBasis:
    n: int
    K: int
    order: tuple[Multiset, ...]
    # coefficients[j][i] is c[order[i], order[j]], the r^chi coefficient of d_psi
    coefficients: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def __post_init__(self):
        duals = {psi: SimplexPoly(self.n, zip(self.order, col))
                 for psi, col in zip(self.order, self.coefficients)}
        object.__setattr__(self, "_duals", duals)

    def dual(self, psi: Multiset) -> SimplexPoly:
        return self._duals[psi]

    def __getitem__(self, psi: Multiset) -> SimplexPoly:
        return self._duals[psi]

    def __iter__(self):
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def coefficient(self, chi: Multiset, psi: Multiset) -> Fraction:
        return self.coefficients[index_of(psi)][index_of(chi)]

    def multinomial_expansion(self, psi: Multiset) -> dict[Multiset, Fraction]:
        """Coefficients of ``d_psi`` in the multinomial basis ``m_chi``."""
        col = self.coefficients[index_of(psi)]
        return {chi: c / coefm(chi) for chi, c in zip(self.order, col) if c}

    def coefficient_matrix(self) -> RatMatrix:
        """The matrix ``C`` with entry ``(chi, psi) = c[chi, psi]``."""
        return RatMatrix(zip(*self.coefficients))


def _compute(n: int, K: int) -> DualBasis:
    order = enumerate_multisets(n, K)
    inv = mat_inverse(fs_matrix(n, K))
    scale = factorial(2 * K + n - 1)
    cols = tuple(
        tuple(Fraction(scale, coefm(psi)) * inv[i, j] for i in range(len(order)))
        for j, psi in enumerate(order)
    )
    return DualBasis(n, K, order, cols)


def _cache_path(n: int, K: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"dualbasis_n{n}_K{K}.txt"


def save_coefficients(basis: DualBasis, path: Path) -> None:
    lines = []
    for j, col in enumerate(basis.coefficients):
        for i, c in enumerate(col):
            if c:
                lines.append(f"{j} {i} {c.numerator} {c.denominator}")
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def load_coefficients(n: int, K: int, path: Path) -> DualBasis:
    order = enumerate_multisets(n, K)
    m = len(order)
    cols = [[Fraction(0)] * m for _ in range(m)]
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        j, i, num, den = (int(x) for x in line.split())
        cols[j][i] = Fraction(num, den)
    return DualBasis(n, K, order, tuple(tuple(c) for c in cols))


_CACHE: dict[tuple[int, int], DualBasis] = {}
_LOCK = threading.Lock()


def dual_basis(n: int, K: int) -> DualBasis:
    """Dual basis of the degree-``K`` multinomials over ``<n>``, cached."""
    key = (n, K)
    basis = _CACHE.get(key)
    if basis is not None:
        return basis
    with _LOCK:
        basis = _CACHE.get(key)
        if basis is None:
            path = _cache_path(n, K)
            if path is not None and path.exists():
                log.debug("loading dual basis (%d, %d) from %s", n, K, path)
                try:
                    basis = load_coefficients(n, K, path)
                except (ValueError, IndexError, ZeroDivisionError) as exc:
                    log.warning("ignoring unreadable cache file %s: %s", path, exc)
            if basis is None:
                basis = _compute(n, K)
                if path is not None:
                    save_coefficients(basis, path)
            _CACHE[key] = basis
    return basis


def clear_cache() -> None:
    with _LOCK:
        _CACHE.clear()


def dual_sum_check(n: int, K: int) -> Fraction:
    """Verify that the duals sum to the constant ``(K+n-1)!/K!`` and return it."""
    basis = dual_basis(n, K)
    total = SimplexPoly(n)
    for psi in basis:
        total = total + basis[psi]
    const = Fraction(factorial(K + n - 1), factorial(K))
    if not equal_on_simplex(total, SimplexPoly.constant(n, const)):
        raise SumNotConstant(f"dual basis sum for n={n}, K={K} is {total}, not {const}")
    return const
