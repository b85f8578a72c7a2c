"""Exhaustive exact checks of the draw, Dirichlet, dual-basis and dagger identities.

Each check is a generator of ``(case_label, ok)`` pairs over a bounded
parameter sweep; :func:`run_suite` collects them into a JSON-ready report.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .channels import (
    SignedDist,
    compose,
    dd_channel,
    flrn,
    flrn_channel,
    hyp_channel,
    hypergeometric,
    mn_channel,
    multinomial,
    polya,
    polya_channel,
    pushforward,
    uniform_multisets,
)
from .dualbasis import dual_basis, dual_sum_check, fs_matrix
from .exactmath import RatMatrix, factorial, mat_inverse
from .multiset import Multiset, enumerate_multisets
from .signedmodels import (
    check_conjugate_prior,
    check_conservative,
    check_dagger_swap,
    check_dirichlet_dagger,
    check_polya_factorisation,
    ddir_density,
    ddir_moment,
    expectation_density,
    find_dd_then_sgnhyp_counterexample,
    sgnhyp_channel,
    signed_hypergeometric,
)
from .simplexpoly import (
    SimplexPoly,
    dirichlet_density,
    equal_on_simplex,
    inner_product,
    integrate_simplex,
    multinomial_poly,
    simplex_grid,
    uniform_density,
)

Case = tuple[str, bool]


@dataclass(frozen=True)
class Sweep:
    n: int = 3
    max_urn: int = 4
    max_draw: int = 5
    max_dagger: int = 2
    grid: int = 3

    def colours(self) -> range:
        return range(1, self.n + 1)

    def urns(self, n: int, min_size: int = 0) -> Iterator[Multiset]:
        for size in range(min_size, self.max_urn + 1):
            yield from enumerate_multisets(n, size)

    def full_urns(self, n: int) -> Iterator[Multiset]:
        return (u for u in self.urns(n, n) if u.has_full_support)

    def points(self, n: int) -> list[tuple[Fraction, ...]]:
        pts = list(simplex_grid(n, self.grid))
        # one interior point with distinct coordinates
        weights = list(range(1, n + 1))
        pts.append(tuple(Fraction(w, sum(weights)) for w in weights))
        return pts


def _p(pt) -> str:
    return "(" + ",".join(str(x) for x in pt) + ")"


# -- draw channels -------------------------------------------------------------


def flrn_after_hyp(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n, 1):
            for K in range(1, len(urn) + 1):
                yield f"n={n} urn={urn} K={K}", pushforward(flrn_channel(), hypergeometric(K, urn)) == flrn(urn)


def flrn_after_mn(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for pt in s.points(n):
            for K in range(1, s.max_draw + 1):
                lhs = pushforward(flrn_channel(), multinomial(K, pt))
                yield f"n={n} omega={_p(pt)} K={K}", lhs == SignedDist(enumerate(pt))


def hyp_after_mn(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for pt in s.points(n):
            for total in range(s.max_draw + 1):
                mn = multinomial(total, pt)
                for K in range(total + 1):
                    yield (f"n={n} omega={_p(pt)} K={K} L={total - K}",
                           pushforward(hyp_channel(K), mn) == multinomial(K, pt))


def hyp_after_hyp(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n):
            for total in range(len(urn) + 1):
                inner = hypergeometric(total, urn)
                for K in range(total + 1):
                    yield (f"n={n} urn={urn} K={K} L={total - K}",
                           pushforward(hyp_channel(K), inner) == hypergeometric(K, urn))


def hyp_after_dd(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n, 1):
            for K in range(len(urn)):
                lhs = pushforward(hyp_channel(K), dd_channel()(urn))
                yield f"n={n} urn={urn} K={K}", lhs == hypergeometric(K, urn)


def dd_after_hyp(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n, 1):
            for K in range(len(urn)):
                lhs = compose(dd_channel(), hyp_channel(K + 1))(urn)
                yield f"n={n} urn={urn} K={K}", lhs == hypergeometric(K, urn)


def dd_after_mn(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for pt in s.points(n):
            for K in range(s.max_draw):
                lhs = compose(dd_channel(), mn_channel(K + 1))(pt)
                yield f"n={n} omega={_p(pt)} K={K}", lhs == multinomial(K, pt)


def dd_after_polya(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.full_urns(n):
            for K in range(s.max_draw):
                lhs = compose(dd_channel(), polya_channel(K + 1))(urn)
                yield f"n={n} urn={urn} K={K}", lhs == polya(K, urn)


# -- Dirichlet -----------------------------------------------------------------


def polya_is_mn_over_dir(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.full_urns(n):
            for K in range(s.max_draw + 1):
                yield f"n={n} urn={urn} K={K}", check_polya_factorisation(urn, K)


def dir_conjugate_prior(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.full_urns(n):
            for K in range(s.max_draw + 1):
                for phi in enumerate_multisets(n, K):
                    yield f"n={n} urn={urn} phi={phi}", check_conjugate_prior(urn, phi)


def mn_is_dagger_of_dir(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_draw + 1):
            yield f"n={n} K={K}", check_dirichlet_dagger(n, K)


def dir_mean_is_flrn(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.full_urns(n):
            yield f"n={n} urn={urn}", expectation_density(dirichlet_density(urn)) == flrn(urn)


# -- dual basis ----------------------------------------------------------------


def fs_inverse_exact(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_urn + 1):
            fs = fs_matrix(n, K)
            inv = mat_inverse(fs)
            ident = RatMatrix.identity(fs.rows)
            ok = fs @ inv == ident and inv @ fs == ident and fs == fs.transpose()
            yield f"n={n} K={K}", ok


def duality(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_urn + 1):
            basis = dual_basis(n, K)
            ok = all(inner_product(multinomial_poly(phi), basis[psi]) == (phi == psi)
                     for phi in basis for psi in basis)
            yield f"n={n} K={K}", ok


def dual_unit_integrals(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_urn + 1):
            basis = dual_basis(n, K)
            yield f"n={n} K={K}", all(integrate_simplex(basis[psi]) == 1 for psi in basis)


def dual_constant_sum(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_urn + 1):
            yield f"n={n} K={K}", dual_sum_check(n, K) == Fraction(factorial(K + n - 1), factorial(K))


def dual_multinomial_expansion(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_urn + 1):
            basis = dual_basis(n, K)
            ok = True
            for psi in basis:
                expansion = SimplexPoly(n)
                for chi, a in basis.multinomial_expansion(psi).items():
                    expansion = expansion + multinomial_poly(chi) * a
                ok = ok and expansion == basis[psi]
            yield f"n={n} K={K}", ok


# -- dual Dirichlet and signed hypergeometric ------------------------------------


def sgnhyp_conservative(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n):
            for K in range(len(urn) + 1):
                yield f"n={n} urn={urn} K={K}", check_conservative(urn, K)


def ddir_moments(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n, 1):
            for K in range(len(urn) + 1):
                for phi in enumerate_multisets(n, K):
                    if phi.issubset(urn):
                        ddir_moment(urn, phi)  # raises on mismatch
                        yield f"n={n} urn={urn} phi={phi}", True


def ddir_zero_is_uniform(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        yield f"n={n}", ddir_density(Multiset.zero(n)) == uniform_density(n)


def ddir_mean_is_flrn(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n, 1):
            yield f"n={n} urn={urn}", expectation_density(ddir_density(urn)) == flrn(urn)


def sgnhyp_sums_to_one(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n):
            for K in range(s.max_draw + 1):
                yield f"n={n} urn={urn} K={K}", signed_hypergeometric(K, urn).total == 1


def sgnhyp_empty_urn_uniform(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_draw + 1):
            yield f"n={n} K={K}", signed_hypergeometric(K, Multiset.zero(n)) == uniform_multisets(n, K)


def flrn_after_sgnhyp(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n, 1):
            for K in range(1, s.max_draw + 1):
                lhs = pushforward(flrn_channel(), signed_hypergeometric(K, urn))
                yield f"n={n} urn={urn} K={K}", lhs == flrn(urn)


def sgnhyp_after_mn(s: Sweep) -> Iterator[Case]:
    """Checked at rational points and as an identity of polynomials in ``r``."""
    for n in s.colours():
        for total in range(s.max_draw + 1):
            for K in range(total + 1):
                shyp = sgnhyp_channel(K)
                for pt in s.points(n):
                    lhs = pushforward(shyp, multinomial(total, pt))
                    yield f"n={n} omega={_p(pt)} K={K} L={total - K}", lhs == multinomial(K, pt)
                ok = True
                for phi in enumerate_multisets(n, K):
                    poly = SimplexPoly(n)
                    for psi in enumerate_multisets(n, total):
                        poly = poly + multinomial_poly(psi) * shyp(psi)[phi]
                    ok = ok and equal_on_simplex(poly, multinomial_poly(phi))
                yield f"n={n} K={K} L={total - K} polynomial", ok


def sgnhyp_after_sgnhyp(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n):
            for total in range(s.max_draw + 1):
                inner = signed_hypergeometric(total, urn)
                for K in range(total + 1):
                    lhs = pushforward(sgnhyp_channel(K), inner)
                    yield (f"n={n} urn={urn} K={K} L={total - K}",
                           lhs == signed_hypergeometric(K, urn))


def dd_after_sgnhyp(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for urn in s.urns(n):
            for K in range(s.max_draw):
                lhs = compose(dd_channel(), sgnhyp_channel(K + 1))(urn)
                yield f"n={n} urn={urn} K={K}", lhs == signed_hypergeometric(K, urn)


def sgnhyp_after_dd_fails(s: Sweep) -> Iterator[Case]:
    """The ordinary-hypergeometric identity ``Hyp . DD = Hyp`` breaks for overdraws."""
    found = find_dd_then_sgnhyp_counterexample(2, 3)
    yield "witness exists for n=2, size<=3", found is not None
    for n in s.colours():
        none = find_dd_then_sgnhyp_counterexample(n, s.max_urn, ordinary_only=True)
        yield f"n={n} no witness with K <= size-1", none is None


# -- dagger --------------------------------------------------------------------


def dirichlet_swap(s: Sweep) -> Iterator[Case]:
    for n in s.colours():
        for K in range(s.max_dagger + 1):
            for L in range(s.max_dagger + 1):
                yield f"n={n} K={K} L={L}", check_dagger_swap(n, K, L)


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    run: Callable[[Sweep], Iterator[Case]]


CHECKS: dict[str, list[Check]] = {
    "draws": [
        Check("flrn_after_hyp", "flrn . Hyp[K] = flrn", flrn_after_hyp),
        Check("flrn_after_mn", "flrn . Mn[K] = sam", flrn_after_mn),
        Check("hyp_after_mn", "Hyp[K] . Mn[K+L] = Mn[K]", hyp_after_mn),
        Check("hyp_after_hyp", "Hyp[K] . Hyp[K+L] = Hyp[K]", hyp_after_hyp),
        Check("hyp_after_dd", "Hyp[K] . DD = Hyp[K]", hyp_after_dd),
        Check("dd_after_hyp", "DD . Hyp[K+1] = Hyp[K]", dd_after_hyp),
        Check("dd_after_mn", "DD . Mn[K+1] = Mn[K]", dd_after_mn),
        Check("dd_after_polya", "DD . Pol[K+1] = Pol[K]", dd_after_polya),
    ],
    "dirichlet": [
        Check("polya_is_mn_over_dir", "Mn[K] >>= Dir(urn) = Pol[K](urn)", polya_is_mn_over_dir),
        Check("dir_conjugate_prior", "dir(urn) * m_phi = Pol[K](urn)(phi) * dir(urn+phi)",
              dir_conjugate_prior),
        Check("mn_is_dagger_of_dir", "unif(phi) * dir(1+phi) = m_phi * dir(1)", mn_is_dagger_of_dir),
        Check("dir_mean_is_flrn", "sam >>= Dir(urn) = flrn(urn)", dir_mean_is_flrn),
    ],
    "dual": [
        Check("fs_inverse_exact", "FS symmetric and FS * FS^-1 = FS^-1 * FS = I", fs_inverse_exact),
        Check("duality", "<m_phi, d_psi> = delta", duality),
        Check("dual_unit_integrals", "int d_psi = 1", dual_unit_integrals),
        Check("dual_constant_sum", "sum_psi d_psi = (K+n-1)!/K!", dual_constant_sum),
        Check("dual_multinomial_expansion", "d_psi = sum_chi c/coefm(chi) * m_chi",
              dual_multinomial_expansion),
    ],
    "definetti": [
        Check("sgnhyp_conservative", "SHyp[K](urn) = Hyp[K](urn) for K <= |urn|", sgnhyp_conservative),
        Check("ddir_moments", "int r^phi d_urn closed form = direct integral", ddir_moments),
        Check("ddir_zero_is_uniform", "DDir(0) = Dir(1)", ddir_zero_is_uniform),
        Check("ddir_mean_is_flrn", "sam >>= DDir(urn) = flrn(urn)", ddir_mean_is_flrn),
        Check("sgnhyp_sums_to_one", "SHyp[K](urn) has total weight 1", sgnhyp_sums_to_one),
        Check("sgnhyp_empty_urn_uniform", "SHyp[K](0) is uniform", sgnhyp_empty_urn_uniform),
        Check("flrn_after_sgnhyp", "flrn . SHyp[K] = flrn", flrn_after_sgnhyp),
        Check("sgnhyp_after_mn", "SHyp[K] . Mn[K+L] = Mn[K]", sgnhyp_after_mn),
        Check("sgnhyp_after_sgnhyp", "SHyp[K] . SHyp[K+L] = SHyp[K]", sgnhyp_after_sgnhyp),
        Check("dd_after_sgnhyp", "DD . SHyp[K+1] = SHyp[K]", dd_after_sgnhyp),
        Check("sgnhyp_after_dd_fails", "SHyp[K] . DD != SHyp[K] only in the overdraw regime",
              sgnhyp_after_dd_fails),
    ],
    "dagger": [
        Check("dirichlet_swap", "<dmn[K] . Dir(1+-), id> unif = swap <id, Mn[L] . DDir> unif",
              dirichlet_swap),
        Check("mn_is_dagger_of_dir", "unif(phi) * dir(1+phi) = m_phi * dir(1)", mn_is_dagger_of_dir),
    ],
}

SUITES = ("all",) + tuple(CHECKS)


def checks_for(suite: str) -> list[Check]:
    if suite == "all":
        seen, out = set(), []
        for group in CHECKS.values():
            for c in group:
                if c.name not in seen:
                    seen.add(c.name)
                    out.append(c)
        return out
    if suite not in CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return list(CHECKS[suite])


@dataclass
class CheckResult:
    name: str
    description: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    error: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and not self.failures and self.cases > 0

    def as_dict(self) -> dict:
        return {"name": self.name, "description": self.description, "passed": self.passed,
                "cases": self.cases, "failures": self.failures[:20], "error": self.error,
                "seconds": round(self.seconds, 3)}


def run_check(check: Check, sweep: Sweep) -> CheckResult:
    res = CheckResult(check.name, check.description)
    t0 = time.perf_counter()
    try:
        for label, ok in check.run(sweep):
            res.cases += 1
            if not ok:
                res.failures.append(label)
    except Exception as exc:  # reported, not raised: the runner must finish
        res.error = f"{type(exc).__name__}: {exc}"
    res.seconds = time.perf_counter() - t0
    return res


def run_suite(suite: str = "all", sweep: Sweep | None = None) -> dict:
    sweep = sweep or Sweep()
    t0 = time.perf_counter()
    results = [run_check(c, sweep) for c in checks_for(suite)]
    return {
        "suite": suite,
        "params": {"n": sweep.n, "max_urn": sweep.max_urn, "max_draw": sweep.max_draw,
                   "max_dagger": sweep.max_dagger},
        "passed": all(r.passed for r in results),
        "checks": [r.as_dict() for r in results],
        "seconds": round(time.perf_counter() - t0, 3),
    }
