"""Exact polynomial functions on the simplex.

Monomials are indexed by exponent multisets.  Integration uses the identity
``int r^phi dr = facto(phi) / (||phi|| + n - 1)!`` with respect to Lebesgue
measure on the first ``n - 1`` coordinates, so no quadrature is involved.

Because ``r_0 + ... + r_{n-1} = 1`` on the simplex, distinct coefficient
maps can denote the same function; :func:`equal_on_simplex` decides
equality by homogenising both sides to a common degree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DegreeTooSmall, DimensionMismatch, NotFullSupport, NotNormalised, NotOnSimplex
from .exactmath import factorial
from .multiset import Multiset, coefm, enumerate_multisets, facto


class SimplexPoly:
    """Polynomial in ``r_0, ..., r_{n-1}`` with exact rational coefficients."""

    __slots__ = ("n_vars", "_terms")

    def __init__(self, n_vars: int, terms: Mapping[Multiset, object] | Iterable = ()):
        acc: dict[Multiset, Fraction] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in pairs:
            if mono.n_colors != n_vars:
                raise DimensionMismatch(f"monomial {mono} not over <{n_vars}>")
            acc[mono] = acc.get(mono, Fraction(0)) + Fraction(c)
        self.n_vars = n_vars
        self._terms = {m: acc[m] for m in sorted(acc, key=_term_key) if acc[m]}

    @classmethod
    def constant(cls, n_vars: int, c) -> "SimplexPoly":
        return cls(n_vars, {Multiset.zero(n_vars): c})

    @classmethod
    def monomial(cls, exponent: Multiset, c=1) -> "SimplexPoly":
        return cls(exponent.n_colors, {exponent: c})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> "SimplexPoly":
        return cls.monomial(Multiset.unit(n_vars, i))

    def terms(self):
        return self._terms.items()

    def coefficient(self, mono: Multiset) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def __iter__(self) -> Iterator[Multiset]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    @property
    def is_homogeneous(self) -> bool:
        return len({len(m) for m in self._terms}) <= 1

    def _check(self, other: "SimplexPoly") -> None:
        if self.n_vars != other.n_vars:
            raise DimensionMismatch(f"polynomials over <{self.n_vars}> and <{other.n_vars}>")

    def _coerce(self, other) -> "SimplexPoly":
        if isinstance(other, SimplexPoly):
            self._check(other)
            return other
        return SimplexPoly.constant(self.n_vars, other)

    def __add__(self, other) -> "SimplexPoly":
        other = self._coerce(other)
        return SimplexPoly(self.n_vars, list(self.terms()) + list(other.terms()))

    __radd__ = __add__

    def __neg__(self) -> "SimplexPoly":
        return SimplexPoly(self.n_vars, {m: -c for m, c in self.terms()})

    def __sub__(self, other) -> "SimplexPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SimplexPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SimplexPoly":
        if not isinstance(other, SimplexPoly):
            c = Fraction(other)
            return SimplexPoly(self.n_vars, {m: c * v for m, v in self.terms()})
        self._check(other)
        acc: dict[Multiset, Fraction] = {}
        for m1, c1 in self.terms():
            for m2, c2 in other.terms():
                m = m1 + m2
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return SimplexPoly(self.n_vars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SimplexPoly":
        out = SimplexPoly.constant(self.n_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        """Coefficient-wise equality; see :func:`equal_on_simplex` for functions."""
        if not isinstance(other, SimplexPoly):
            return NotImplemented
        return self.n_vars == other.n_vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n_vars, frozenset(self._terms.items())))

    def __call__(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def __repr__(self) -> str:
        return f"SimplexPoly({self.n_vars}, {render_poly(self)!r})"

    def __str__(self) -> str:
        return render_poly(self)


def _term_key(m: Multiset):
    return (len(m), m.sort_key())


@lru_cache(maxsize=None)
def monomial_integral(phi: Multiset) -> Fraction:
    """Integral of ``r^phi`` over the simplex on ``<n>``."""
    return Fraction(facto(phi), factorial(len(phi) + phi.n_colors - 1))


def integrate_simplex(p: SimplexPoly) -> Fraction:
    return sum((c * monomial_integral(m) for m, c in p.terms()), Fraction(0))


def inner_product(f: SimplexPoly, g: SimplexPoly) -> Fraction:
    """``<f, g> = int f * g``, summed term by term without forming the product."""
    f._check(g)
    total = Fraction(0)
    for m1, c1 in f.terms():
        for m2, c2 in g.terms():
            total += c1 * c2 * monomial_integral(m1 + m2)
    return total


def multinomial_poly(phi: Multiset) -> SimplexPoly:
    """The multinomial basis polynomial ``coefm(phi) * r^phi``."""
    return SimplexPoly.monomial(phi, coefm(phi))


def dirichlet_density(urn: Multiset) -> "PolyDensityMeasure":
    if not urn.has_full_support:
        raise NotFullSupport(f"{urn} lacks full support on <{urn.n_colors}>")
    exponent = urn - Multiset.ones(urn.n_colors)
    coeff = Fraction(factorial(len(urn) - 1), facto(exponent))
    return PolyDensityMeasure(SimplexPoly.monomial(exponent, coeff))


def uniform_density(n: int) -> "PolyDensityMeasure":
    return dirichlet_density(Multiset.ones(n))


def check_point(point: Sequence, n_vars: int) -> tuple[Fraction, ...]:
    r = tuple(Fraction(x) for x in point)
    if len(r) != n_vars:
        raise NotOnSimplex(f"point has {len(r)} coordinates, expected {n_vars}")
    if sum(r) != 1 or any(x < 0 for x in r):
        raise NotOnSimplex(f"{[str(x) for x in r]} is not on the simplex")
    return r


def evaluate(p: SimplexPoly, point: Sequence, *, on_simplex: bool = True) -> Fraction:
    """Exact value of ``p`` at ``point`` (simplex membership enforced by default)."""
    if on_simplex:
        r = check_point(point, p.n_vars)
    else:
        r = tuple(Fraction(x) for x in point)
    total = Fraction(0)
    for m, c in p.terms():
        v = c
        for i, e in m.items():
            v *= r[i] ** e
        total += v
    return total


_POWER_CACHE: dict[tuple[int, int], SimplexPoly] = {}


def _simplex_sum_power(n: int, k: int) -> SimplexPoly:
    """``(r_0 + ... + r_{n-1})^k`` expanded, i.e. the sum of all multinomials."""
    key = (n, k)
    if key not in _POWER_CACHE:
        _POWER_CACHE[key] = SimplexPoly(n, {phi: coefm(phi) for phi in enumerate_multisets(n, k)})
    return _POWER_CACHE[key]


def canonical_homogeneous(p: SimplexPoly, degree: int | None = None) -> SimplexPoly:
    """Homogeneous polynomial of the given degree equal to ``p`` on the simplex."""
    D = p.degree if degree is None else degree
    if D < p.degree:
        raise DegreeTooSmall(f"degree {D} below polynomial degree {p.degree}")
    acc: dict[Multiset, Fraction] = {}
    for m, c in p.terms():
        lift = _simplex_sum_power(p.n_vars, D - len(m))
        for m2, c2 in lift.terms():
            key = m + m2
            acc[key] = acc.get(key, Fraction(0)) + c * c2
    return SimplexPoly(p.n_vars, acc)


def equal_on_simplex(p: SimplexPoly, q: SimplexPoly) -> bool:
    """Decide whether ``p`` and ``q`` agree as functions on the simplex."""
    p._check(q)
    D = max(p.degree, q.degree)
    return canonical_homogeneous(p, D) == canonical_homogeneous(q, D)


class PolyDensityMeasure:
    """A (possibly signed) measure on the simplex given by a polynomial density."""

    __slots__ = ("density",)

    def __init__(self, density: SimplexPoly):
        mass = integrate_simplex(density)
        if mass != 1:
            raise NotNormalised(f"density integrates to {mass}, not 1")
        self.density = density

    @property
    def n_vars(self) -> int:
        return self.density.n_vars

    def integrate(self, f: SimplexPoly) -> Fraction:
        """``int f * density``."""
        return inner_product(f, self.density)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyDensityMeasure):
            return NotImplemented
        return equal_on_simplex(self.density, other.density)

    def __hash__(self) -> int:
        return hash(canonical_homogeneous(self.density))

    def __repr__(self) -> str:
        return f"PolyDensityMeasure({render_poly(self.density)!r})"


# -- rendering ---------------------------------------------------------------


def _render_monomial(m: Multiset) -> str:
    return "*".join(f"r{i}" if e == 1 else f"r{i}^{e}" for i, e in m.items())


def render_poly(p: SimplexPoly) -> str:
    """Render as ``72*r0^2 - 96*r0*r1 + ...`` in canonical term order."""
    if not len(p):
        return "0"
    parts = []
    for k, (m, c) in enumerate(p.terms()):
        mono = _render_monomial(m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def poly_to_json(p: SimplexPoly) -> list[dict]:
    return [{"exponent": list(m.vector), "num": c.numerator, "den": c.denominator}
            for m, c in p.terms()]


def simplex_grid(n: int, grid: int) -> Iterator[tuple[Fraction, ...]]:
    """Rational points ``t / grid`` on the simplex, in canonical order."""
    for phi in enumerate_multisets(n, grid):
        yield tuple(Fraction(x, grid) for x in phi.vector)
