"""Signed discrete distributions, draw channels and channel algebra.

Ordinary distributions are the special case of :class:`SignedDist` with
positive weights.  Channels are kernels ``x -> SignedDist``; a channel can
wrap either a finite mapping or a function (e.g. the multinomial channel,
whose inputs are points of the simplex).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import DomainMismatch, EmptyMultiset, NotNormalised, NotOnSimplex, Overdraw
from .exactmath import binomial, multichoose
from .multiset import Multiset, bibinom_ms, binom_ms, coefm, enumerate_multisets

Outcome = Hashable


def _key(outcome: Any):
    if isinstance(outcome, Multiset):
        return (0, outcome.sort_key())
    if isinstance(outcome, tuple):
        return (1, tuple(_key(x) for x in outcome))
    return (2, outcome)


class SignedDist:
    """Finitely supported weights summing to exactly one.

    Zero weights are dropped on construction, so the stored keys are the
    support.  Iteration follows the canonical outcome order.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights: Mapping[Outcome, Any] | Iterable[tuple[Outcome, Any]], *,
                 check: bool = True):
        acc: dict[Outcome, Fraction] = {}
        pairs = weights.items() if isinstance(weights, Mapping) else weights
        for x, w in pairs:
            acc[x] = acc.get(x, Fraction(0)) + Fraction(w)
        ordered = sorted((x for x, w in acc.items() if w), key=_key)
        self._weights = {x: acc[x] for x in ordered}
        if check:
            total = sum(self._weights.values(), Fraction(0))
            if total != 1:
                raise NotNormalised(f"weights sum to {total}, not 1")

    @classmethod
    def point(cls, outcome: Outcome) -> "SignedDist":
        return cls({outcome: 1})

    @classmethod
    def uniform(cls, outcomes: Sequence[Outcome]) -> "SignedDist":
        w = Fraction(1, len(outcomes))
        return cls({x: w for x in outcomes})

    def __getitem__(self, outcome: Outcome) -> Fraction:
        return self._weights.get(outcome, Fraction(0))

    def __iter__(self) -> Iterator[Outcome]:
        return iter(self._weights)

    def __len__(self) -> int:
        return len(self._weights)

    def __contains__(self, outcome: Outcome) -> bool:
        return outcome in self._weights

    def items(self):
        return self._weights.items()

    @property
    def support(self) -> tuple[Outcome, ...]:
        return tuple(self._weights)

    @property
    def total(self) -> Fraction:
        return sum(self._weights.values(), Fraction(0))

    @property
    def is_ordinary(self) -> bool:
        return all(w > 0 for w in self._weights.values())

    def map(self, f: Callable[[Outcome], Outcome]) -> "SignedDist":
        """Pushforward along a deterministic function."""
        return SignedDist((f(x), w) for x, w in self._weights.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedDist):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self) -> int:
        return hash(frozenset(self._weights.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{x}: {w}" for x, w in self._weights.items())
        return f"SignedDist({{{body}}})"


class Channel:
    """A signed kernel, built from a mapping or a function."""

    __slots__ = ("_kernel", "name")

    def __init__(self, kernel: Mapping[Outcome, SignedDist] | Callable[[Any], SignedDist],
                 name: str | None = None):
        self._kernel = kernel
        self.name = name

    @property
    def domain(self) -> tuple[Outcome, ...] | None:
        if isinstance(self._kernel, Mapping):
            return tuple(sorted(self._kernel, key=_key))
        return None

    def __call__(self, x: Any) -> SignedDist:
        if isinstance(self._kernel, Mapping):
            try:
                return self._kernel[x]
            except KeyError:
                raise DomainMismatch(f"{x} is not in the domain of channel {self.name or ''}")
        return self._kernel(x)

    def __repr__(self) -> str:
        return f"Channel({self.name or '<anonymous>'})"


def identity_channel() -> Channel:
    return Channel(SignedDist.point, name="id")


def pushforward(c: Channel, sigma: SignedDist) -> SignedDist:
    """``(c >>= sigma)(y) = sum_x sigma(x) * c(x)(y)``."""
    acc: dict[Outcome, Fraction] = {}
    for x, w in sigma.items():
        for y, v in c(x).items():
            acc[y] = acc.get(y, Fraction(0)) + w * v
    return SignedDist(acc)


def compose(d: Channel, c: Channel) -> Channel:
    """Kleisli composite: first ``c``, then ``d``."""
    return Channel(lambda x: pushforward(d, c(x)), name=f"{d.name}.{c.name}")


def tensor(omega: SignedDist, rho: SignedDist) -> SignedDist:
    return SignedDist(((x, y), w * v) for x, w in omega.items() for y, v in rho.items())


def joint(c: Channel, sigma: SignedDist) -> SignedDist:
    """Joint distribution on pairs ``(x, y)`` with weight ``sigma(x) * c(x)(y)``."""
    return SignedDist(((x, y), w * v) for x, w in sigma.items() for y, v in c(x).items())


def swap(sigma: SignedDist) -> SignedDist:
    return sigma.map(lambda xy: (xy[1], xy[0]))


def marginal(sigma: SignedDist, leg: int) -> SignedDist:
    return sigma.map(lambda xy: xy[leg])


# -- draw distributions ------------------------------------------------------


def as_point(omega: SignedDist | Sequence, n_colors: int | None = None) -> tuple[Fraction, ...]:
    """Coordinates of a distribution on ``<n>`` as a vector."""
    if isinstance(omega, SignedDist):
        if n_colors is None:
            n_colors = max(omega.support) + 1
        vec = [Fraction(0)] * n_colors
        for x, w in omega.items():
            if not isinstance(x, int) or not 0 <= x < n_colors:
                raise DomainMismatch(f"outcome {x!r} is not a colour in <{n_colors}>")
            vec[x] = w
        return tuple(vec)
    vec = tuple(Fraction(x) for x in omega)
    if n_colors is not None and len(vec) != n_colors:
        raise DomainMismatch(f"expected {n_colors} coordinates, got {len(vec)}")
    if sum(vec) != 1:
        raise NotOnSimplex(f"coordinates sum to {sum(vec)}")
    return vec


def flrn(phi: Multiset) -> SignedDist:
    """Frequentist learning: normalise counts to a distribution on colours."""
    size = len(phi)
    if size == 0:
        raise EmptyMultiset("cannot normalise the empty multiset")
    return SignedDist({c: Fraction(m, size) for c, m in phi.items()})


def multinomial(K: int, omega: SignedDist | Sequence, n_colors: int | None = None) -> SignedDist:
    """Draw-and-replace distribution; signed ``omega`` is allowed."""
    r = as_point(omega, n_colors)
    out = {}
    for phi in enumerate_multisets(len(r), K):
        w = Fraction(coefm(phi))
        for c, m in phi.items():
            w *= r[c] ** m
        out[phi] = w
    return SignedDist(out)


def hypergeometric(K: int, urn: Multiset) -> SignedDist:
    """Draw-and-delete distribution; ``K`` may not exceed the urn size."""
    L = len(urn)
    if K > L:
        raise Overdraw(f"cannot draw {K} balls from an urn of size {L}")
    total = binomial(L, K)
    return SignedDist({phi: Fraction(binom_ms(urn, phi), total)
                       for phi in enumerate_multisets(urn.n_colors, K) if phi.issubset(urn)})


def polya(K: int, urn: Multiset) -> SignedDist:
    """Draw-and-duplicate distribution; the urn needs full support."""
    total = multichoose(len(urn), K)
    return SignedDist({phi: Fraction(bibinom_ms(urn, phi), total)
                       for phi in enumerate_multisets(urn.n_colors, K)})


def draw_delete(urn: Multiset) -> SignedDist:
    """Remove one ball drawn uniformly from the urn."""
    size = len(urn)
    if size == 0:
        raise EmptyMultiset("cannot draw from an empty urn")
    n = urn.n_colors
    return SignedDist({urn - Multiset.unit(n, c): Fraction(m, size) for c, m in urn.items()})


def uniform_multisets(n: int, K: int) -> SignedDist:
    return SignedDist.uniform(enumerate_multisets(n, K))


def flrn_channel() -> Channel:
    return Channel(flrn, name="flrn")


def mn_channel(K: int, n_colors: int | None = None) -> Channel:
    return Channel(lambda omega: multinomial(K, omega, n_colors), name=f"Mn[{K}]")


def hyp_channel(K: int) -> Channel:
    return Channel(lambda urn: hypergeometric(K, urn), name=f"Hyp[{K}]")


def polya_channel(K: int) -> Channel:
    return Channel(lambda urn: polya(K, urn), name=f"Pol[{K}]")


def dd_channel() -> Channel:
    return Channel(draw_delete, name="DD")
