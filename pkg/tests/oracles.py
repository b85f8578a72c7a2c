"""Reference computations that share no code paths with ``urncalc``.

Draw distributions are counted over explicit ball sequences; integrals,
inverses and duals go through sympy.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from urncalc.multiset import Multiset


def balls(urn: Multiset) -> list[int]:
    return [c for c, m in urn.items() for _ in range(m)]


def seq_to_ms(seq, n: int) -> Multiset:
    return Multiset(n, Counter(seq))


def brute_hypergeometric(K: int, urn: Multiset) -> dict[Multiset, Fraction]:
    """Draw ``K`` distinguishable balls in order, without replacement."""
    draws = list(itertools.permutations(range(len(urn)), K))
    bs = balls(urn)
    counts = Counter(seq_to_ms([bs[i] for i in d], urn.n_colors) for d in draws)
    return {phi: Fraction(c, len(draws)) for phi, c in counts.items()}


def brute_multinomial(K: int, omega) -> dict[Multiset, Fraction]:
    n = len(omega)
    out: dict[Multiset, Fraction] = {}
    for seq in itertools.product(range(n), repeat=K):
        w = Fraction(1)
        for c in seq:
            w *= Fraction(omega[c])
        phi = seq_to_ms(seq, n)
        out[phi] = out.get(phi, Fraction(0)) + w
    return {k: v for k, v in out.items() if v}


def brute_polya(K: int, urn: Multiset) -> dict[Multiset, Fraction]:
    """Sequences of draws where each drawn ball is returned with a copy."""
    n = urn.n_colors
    out: dict[Multiset, Fraction] = {}
    for seq in itertools.product(range(n), repeat=K):
        counts = list(urn.vector)
        w = Fraction(1)
        for c in seq:
            w *= Fraction(counts[c], sum(counts))
            counts[c] += 1
        if w:
            phi = seq_to_ms(seq, n)
            out[phi] = out.get(phi, Fraction(0)) + w
    return out


def brute_draw_delete(urn: Multiset) -> dict[Multiset, Fraction]:
    bs = balls(urn)
    counts = Counter(seq_to_ms(bs[:i] + bs[i + 1:], urn.n_colors) for i in range(len(bs)))
    return {phi: Fraction(c, len(bs)) for phi, c in counts.items()}


# -- sympy side ----------------------------------------------------------------


def symbols(n: int):
    return sp.symbols(f"r0:{n}")


@lru_cache(maxsize=None)
def _monomial_integral(exps: tuple[int, ...]):
    n = len(exps)
    r = symbols(n)
    expr = sp.Mul(*[r[i] ** e for i, e in enumerate(exps)]).subs(r[n - 1], 1 - sum(r[: n - 1]))
    for k in range(n - 2, -1, -1):
        anti = sp.Poly(expr, r[k]).integrate().as_expr()
        expr = sp.expand(anti.subs(r[k], 1 - sum(r[:k])) - anti.subs(r[k], 0))
    return sp.Rational(expr)


def sympy_simplex_integral(expr, n: int):
    """Iterated integral over ``{r_i >= 0, sum r_i = 1}`` w.r.t. ``dr_0..dr_{n-2}``."""
    r = symbols(n)
    poly = sp.Poly(sp.expand(expr), *r)
    return sum((c * _monomial_integral(tuple(e)) for e, c in poly.terms()), sp.Integer(0))


def to_sympy(poly) -> sp.Expr:
    r = symbols(poly.n_vars)
    return sum((sp.Rational(c.numerator, c.denominator)
                * sp.Mul(*[r[i] ** e for i, e in m.items()]) for m, c in poly.terms()),
               sp.Integer(0))


def sympy_multinomial(phi: Multiset) -> sp.Expr:
    r = symbols(phi.n_colors)
    coef = sp.factorial(len(phi))
    mono = sp.Integer(1)
    for i, e in phi.items():
        coef /= sp.factorial(e)
        mono *= r[i] ** e
    return coef * mono


@lru_cache(maxsize=None)
def sympy_dual_basis(n: int, K: int) -> dict[Multiset, sp.Expr]:
    """Solve the Gram system of the multinomial polynomials with sympy."""
    from urncalc.multiset import enumerate_multisets

    basis = list(enumerate_multisets(n, K))
    polys = [sympy_multinomial(phi) for phi in basis]
    gram = sp.Matrix(len(basis), len(basis),
                     lambda i, j: sympy_simplex_integral(polys[i] * polys[j], n))
    inv = gram.inv()
    return {psi: sp.expand(sum(inv[i, j] * polys[i] for i in range(len(basis))))
            for j, psi in enumerate(basis)}


def sympy_signed_hypergeometric(K: int, urn: Multiset) -> dict[Multiset, Fraction]:
    from urncalc.multiset import enumerate_multisets

    n = urn.n_colors
    density = sympy_dual_basis(n, len(urn))[urn]
    out = {}
    for phi in enumerate_multisets(n, K):
        v = sympy_simplex_integral(sympy_multinomial(phi) * density, n)
        if v:
            out[phi] = Fraction(int(v.p), int(v.q))
    return out


def sympy_bernstein_duals(K: int) -> list[sp.Expr]:
    r = sp.Symbol("r")
    bern = [sp.binomial(K, i) * r ** i * (1 - r) ** (K - i) for i in range(K + 1)]
    gram = sp.Matrix(K + 1, K + 1, lambda i, j: sp.integrate(bern[i] * bern[j], (r, 0, 1)))
    inv = gram.inv()
    return [sp.expand(sum(inv[i, j] * bern[i] for i in range(K + 1))) for j in range(K + 1)]


def as_fraction(x) -> Fraction:
    x = sp.Rational(x)
    return Fraction(int(x.p), int(x.q))
