"""Dual Dirichlet densities, signed hypergeometric and dual multinomial draws.

Everything is computed symbolically: a continuous bind multiplies the
kernel polynomial with the density and integrates monomials exactly.  The
``check_*`` functions decide the factorisation and dagger identities by
exact comparison of weights or of polynomials on the simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence

from .channels import (
    Channel,
    SignedDist,
    draw_delete,
    hypergeometric,
    polya,
    pushforward,
    uniform_multisets,
)
from .dualbasis import dual_basis
from .errors import IdentityViolation, NotFullSupport, NotSubMultiset
from .exactmath import factorial
from .multiset import Multiset, enumerate_multisets, facto, leq
from .simplexpoly import (
    PolyDensityMeasure,
    SimplexPoly,
    check_point,
    dirichlet_density,
    equal_on_simplex,
    evaluate,
    multinomial_poly,
    uniform_density,
)


@dataclass(frozen=True)
class ContinuousBindProblem:
    """``kernel >>= density`` for a kernel given by one polynomial per outcome."""

    density: PolyDensityMeasure
    kernel: Mapping[object, SimplexPoly]

    def solve(self, *, check: bool = True) -> SignedDist:
        return SignedDist({x: self.density.integrate(f) for x, f in self.kernel.items()},
                          check=check)


def multinomial_kernel(n: int, K: int) -> dict[Multiset, SimplexPoly]:
    """Likelihood polynomials ``r -> Mn[K](r)(phi) = m_phi(r)``."""
    return {phi: multinomial_poly(phi) for phi in enumerate_multisets(n, K)}


def dual_multinomial_kernel(n: int, K: int) -> dict[Multiset, SimplexPoly]:
    """Polynomials ``r -> dmn[K](r)(phi)``."""
    basis = dual_basis(n, K)
    scale = Fraction(factorial(K), factorial(K + n - 1))
    return {phi: basis[phi] * scale for phi in basis}


def bind(kernel: Mapping[object, SimplexPoly], density: PolyDensityMeasure) -> SignedDist:
    return ContinuousBindProblem(density, kernel).solve()


def ddir_density(urn: Multiset) -> PolyDensityMeasure:
    """Dual Dirichlet: the dual basis polynomial indexed by the urn itself."""
    return PolyDensityMeasure(dual_basis(urn.n_colors, len(urn))[urn])


@lru_cache(maxsize=4096)
def signed_hypergeometric(K: int, urn: Multiset) -> SignedDist:
    """Multinomial draws of size ``K`` averaged over the dual Dirichlet of ``urn``.

    ``K`` may exceed the urn size; for ``K <= len(urn)`` the result equals the
    ordinary hypergeometric distribution.  Results are memoised; treat them
    as read-only.
    """
    return bind(multinomial_kernel(urn.n_colors, K), ddir_density(urn))


def sgnhyp_channel(K: int) -> Channel:
    return Channel(lambda urn: signed_hypergeometric(K, urn), name=f"SHyp[{K}]")


def dual_multinomial(K: int, omega: Sequence) -> SignedDist:
    """Weights ``K!/(K+n-1)! * d_phi(omega)`` at a rational point of the simplex."""
    r = check_point(omega, len(omega))
    n = len(r)
    basis = dual_basis(n, K)
    scale = Fraction(factorial(K), factorial(K + n - 1))
    return SignedDist({phi: scale * evaluate(basis[phi], r) for phi in basis})


def dmn_channel(K: int) -> Channel:
    return Channel(lambda omega: dual_multinomial(K, omega), name=f"dmn[{K}]")


def ddir_moment(urn: Multiset, phi: Multiset) -> Fraction:
    """``int r^phi * d_urn`` via its closed form, cross-checked by integration."""
    if not leq(phi, urn):
        raise NotSubMultiset(f"{phi} is not contained in {urn}")
    L, K = len(urn), len(phi)
    closed = Fraction(facto(urn) * factorial(L - K), facto(urn - phi) * factorial(L))
    direct = ddir_density(urn).integrate(SimplexPoly.monomial(phi))
    if closed != direct:
        raise IdentityViolation(f"moment of {phi} under DDir({urn}): {closed} != {direct}")
    return closed


def expectation_density(measure: PolyDensityMeasure) -> SignedDist:
    """Push a measure on the simplex through ``r -> sum_i r_i |i>``."""
    n = measure.n_vars
    return bind({i: SimplexPoly.variable(n, i) for i in range(n)}, measure)


# -- identity checks ---------------------------------------------------------


def check_polya_factorisation(urn: Multiset, K: int,
                              expected: SignedDist | None = None) -> bool:
    """Multinomial over Dirichlet equals Polya (``expected`` overrides the rhs)."""
    lhs = bind(multinomial_kernel(urn.n_colors, K), dirichlet_density(urn))
    rhs = polya(K, urn) if expected is None else expected
    return lhs == rhs


def check_conjugate_prior(urn: Multiset, phi: Multiset,
                          evidence: Fraction | None = None) -> bool:
    """``dir(urn) * m_phi == Pol[K](urn)(phi) * dir(urn + phi)`` on the simplex."""
    if not urn.has_full_support:
        raise NotFullSupport(f"{urn} lacks full support on <{urn.n_colors}>")
    if evidence is None:
        evidence = polya(len(phi), urn)[phi]
    lhs = dirichlet_density(urn).density * multinomial_poly(phi)
    rhs = dirichlet_density(urn + phi).density * evidence
    return equal_on_simplex(lhs, rhs)


def check_conservative(urn: Multiset, K: int) -> bool:
    return signed_hypergeometric(K, urn) == hypergeometric(K, urn)


def dagger_swap_joints(n: int, K: int, L: int) -> tuple[SignedDist, SignedDist]:
    """Both sides of the dual/ordinary Dirichlet swap, as joints on ``M[K] x M[L]``.

    Left: uniform prior on ``M[L]``, then ``dmn[K]`` over ``Dir(1 + psi)``.
    Right: uniform prior on ``M[K]``, then ``Mn[L]`` over ``DDir(phi)``,
    with legs swapped so both are keyed ``(phi, psi)``.
    """
    ones = Multiset.ones(n)
    dmn_k = dual_multinomial_kernel(n, K)
    left_channel = Channel(lambda psi: bind(dmn_k, dirichlet_density(ones + psi)))
    mn_l = multinomial_kernel(n, L)
    right_channel = Channel(lambda phi: bind(mn_l, ddir_density(phi)))

    left = SignedDist(((phi, psi), w * v)
                      for psi, w in uniform_multisets(n, L).items()
                      for phi, v in left_channel(psi).items())
    right = SignedDist(((phi, psi), w * v)
                       for phi, w in uniform_multisets(n, K).items()
                       for psi, v in right_channel(phi).items())
    return left, right


def check_dagger_swap(n: int, K: int, L: int) -> bool:
    left, right = dagger_swap_joints(n, K, L)
    return left == right


def check_dirichlet_dagger(n: int, K: int) -> bool:
    """Both decompositions of the joint on ``M[K] x simplex`` agree.

    The joint is kept as one polynomial per discrete outcome:
    ``unif(phi) * dir(1 + phi)`` on one side, ``m_phi * dir(1)`` on the other.
    """
    ones = Multiset.ones(n)
    unif = uniform_multisets(n, K)
    flat = uniform_density(n).density
    for phi in enumerate_multisets(n, K):
        lhs = dirichlet_density(ones + phi).density * unif[phi]
        rhs = multinomial_poly(phi) * flat
        if not equal_on_simplex(lhs, rhs):
            return False
    return True


class Counterexample(NamedTuple):
    urn: Multiset
    K: int
    outcome: Multiset
    composite_weight: Fraction
    direct_weight: Fraction


def find_dd_then_sgnhyp_counterexample(n: int, max_size: int, *,
                                       max_draw: int | None = None,
                                       ordinary_only: bool = False) -> Counterexample | None:
    """Search for an urn where ``SHyp[K] . DD`` differs from ``SHyp[K]``.

    Urns are visited by size, then canonical order, then draw size ``K`` up to
    ``max_draw`` (default ``max_size + 1``).  With ``ordinary_only`` only
    ``K <= len(urn) - 1`` is tried, where the identity is known to hold.
    """
    if max_draw is None:
        max_draw = max_size + 1
    for size in range(1, max_size + 1):
        for urn in enumerate_multisets(n, size):
            top = min(max_draw, size - 1) if ordinary_only else max_draw
            for K in range(top + 1):
                direct = signed_hypergeometric(K, urn)
                composite = pushforward(sgnhyp_channel(K), draw_delete(urn))
                if composite != direct:
                    for phi in enumerate_multisets(n, K):
                        if composite[phi] != direct[phi]:
                            return Counterexample(urn, K, phi, composite[phi], direct[phi])
    return None

