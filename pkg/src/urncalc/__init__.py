"""Exact rational urn calculus: draws, dual multinomial bases and signed hypergeometric."""

from .bivariate import bernstein, bernstein_dual, bihg, bihg_crosscheck
from .channels import (
    Channel,
    SignedDist,
    compose,
    draw_delete,
    flrn,
    hypergeometric,
    multinomial,
    polya,
    pushforward,
)
from .dualbasis import dual_basis, dual_sum_check, fs_matrix
from .errors import IdentityViolation, UrnError
from .exactmath import RatMatrix, binomial, factorial, mat_inverse, multichoose
from .multiset import Multiset, coefm, enumerate_multisets, facto, parse_multiset
from .render import parse_ket, render
from .signedmodels import (
    ddir_density,
    dual_multinomial,
    find_dd_then_sgnhyp_counterexample,
    signed_hypergeometric,
)
from .simplexpoly import SimplexPoly, integrate_simplex, multinomial_poly

__version__ = "0.1.0"

__all__ = [
    "bernstein",
    "bernstein_dual",
    "bihg",
    "bihg_crosscheck",
    "binomial",
    "Channel",
    "coefm",
    "compose",
    "ddir_density",
    "draw_delete",
    "dual_basis",
    "dual_multinomial",
    "dual_sum_check",
    "enumerate_multisets",
    "facto",
    "factorial",
    "find_dd_then_sgnhyp_counterexample",
    "flrn",
    "fs_matrix",
    "hypergeometric",
    "IdentityViolation",
    "integrate_simplex",
    "mat_inverse",
    "multichoose",
    "multinomial",
    "multinomial_poly",
    "Multiset",
    "parse_ket",
    "parse_multiset",
    "polya",
    "pushforward",
    "RatMatrix",
    "render",
    "signed_hypergeometric",
    "SignedDist",
    "SimplexPoly",
    "UrnError",
]
