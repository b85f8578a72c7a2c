"""Multisets over the canonical colour sets ``{0, ..., n-1}``.

A :class:`Multiset` knows its ambient number of colours, so notions such as
full support and the all-ones multiset are well defined.  Only colours with
positive multiplicity are stored.
"""

from __future__ import annotations

import re
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, Mapping

from .errors import NotFullSupport, NotSubMultiset, UrnError
from .exactmath import binomial, factorial, multichoose


@total_ordering
class Multiset:
    """Immutable multiset over ``{0, ..., n_colors-1}``.

    Ordering is the canonical colexicographic order used for every matrix
    and distribution index: the multiplicity of the highest colour is
    compared first.
    """

    __slots__ = ("n_colors", "_items", "_hash")

    def __init__(self, n_colors: int, counts: Mapping[int, int] | None = None):
        if n_colors < 0:
            raise UrnError("negative number of colours")
        items = []
        for color, mult in sorted((counts or {}).items()):
            if not 0 <= color < n_colors:
                raise UrnError(f"colour {color} outside <{n_colors}>")
            if mult < 0:
                raise UrnError(f"negative multiplicity for colour {color}")
            if mult:
                items.append((int(color), int(mult)))
        self.n_colors = n_colors
        self._items = tuple(items)
        self._hash = hash((n_colors, self._items))

    @classmethod
    def from_vector(cls, vector: Iterable[int]) -> "Multiset":
        vec = list(vector)
        return cls(len(vec), dict(enumerate(vec)))

    @classmethod
    def zero(cls, n_colors: int) -> "Multiset":
        return cls(n_colors)

    @classmethod
    def ones(cls, n_colors: int) -> "Multiset":
        return cls(n_colors, {i: 1 for i in range(n_colors)})

    @classmethod
    def unit(cls, n_colors: int, color: int, mult: int = 1) -> "Multiset":
        return cls(n_colors, {color: mult})

    def __getitem__(self, color: int) -> int:
        for c, m in self._items:
            if c == color:
                return m
        return 0

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self._items)

    @property
    def vector(self) -> tuple[int, ...]:
        vec = [0] * self.n_colors
        for c, m in self._items:
            vec[c] = m
        return tuple(vec)

    def __len__(self) -> int:
        """The size ``||phi||``, counting multiplicities."""
        return sum(m for _, m in self._items)

    size = property(__len__)

    @property
    def has_full_support(self) -> bool:
        return len(self._items) == self.n_colors

    def _check_same(self, other: "Multiset") -> None:
        if self.n_colors != other.n_colors:
            raise UrnError(f"multisets over <{self.n_colors}> and <{other.n_colors}>")

    def __add__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        self._check_same(other)
        return Multiset.from_vector(a + b for a, b in zip(self.vector, other.vector))

    def __sub__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        return sub(self, other)

    def issubset(self, other: "Multiset") -> bool:
        """Pointwise containment; comparison operators use canonical order."""
        return leq(self, other)

    def __lt__(self, other: "Multiset") -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.n_colors, self.vector[::-1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.n_colors == other.n_colors and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self) -> Iterator[int]:
        """Iterate over elements with repetition, in colour order."""
        for c, m in self._items:
            for _ in range(m):
                yield c

    def ket(self) -> str:
        """Ket rendering, e.g. ``2|0>+1|1>``; the empty multiset is ``empty``."""
        if not self._items:
            return "empty"
        return "+".join(f"{m}|{c}>" for c, m in self._items)

    def __str__(self) -> str:
        return self.ket()

    def __repr__(self) -> str:
        return f"Multiset({self.n_colors}, {dict(self._items)!r})"


def _enumerate(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (k,)
        return
    for last in range(k + 1):
        for head in _enumerate(n - 1, k - last):
            yield head + (last,)


@lru_cache(maxsize=None)
def enumerate_multisets(n: int, K: int) -> tuple[Multiset, ...]:
    """All multisets of size ``K`` over ``<n>`` in canonical (colex) order."""
    if n < 1:
        raise UrnError("need at least one colour")
    out = tuple(Multiset.from_vector(v) for v in _enumerate(n, K))
    assert len(out) == multichoose(n, K)
    return out


def index_of(phi: Multiset) -> int:
    """Position of ``phi`` in :func:`enumerate_multisets`."""
    return _index_table(phi.n_colors, len(phi))[phi]


@lru_cache(maxsize=None)
def _index_table(n: int, K: int) -> dict[Multiset, int]:
    return {phi: i for i, phi in enumerate(enumerate_multisets(n, K))}


def facto(phi: Multiset) -> int:
    out = 1
    for _, m in phi.items():
        out *= factorial(m)
    return out


def coefm(phi: Multiset) -> int:
    """Multinomial coefficient ``||phi||! / facto(phi)``."""
    return factorial(len(phi)) // facto(phi)


def leq(phi: Multiset, psi: Multiset) -> bool:
    """Pointwise ``phi <= psi``."""
    phi._check_same(psi)
    return all(m <= psi[c] for c, m in phi.items())


def sub(psi: Multiset, phi: Multiset) -> Multiset:
    if not leq(phi, psi):
        raise NotSubMultiset(f"{phi} is not contained in {psi}")
    return Multiset.from_vector(a - b for a, b in zip(psi.vector, phi.vector))


def binom_ms(psi: Multiset, phi: Multiset) -> int:
    if not leq(phi, psi):
        raise NotSubMultiset(f"{phi} is not contained in {psi}")
    out = 1
    for c, m in psi.items():
        out *= binomial(m, phi[c])
    return out


def bibinom_ms(psi: Multiset, phi: Multiset) -> int:
    """Product of per-colour multichoose numbers; needs ``psi`` of full support."""
    if not psi.has_full_support:
        raise NotFullSupport(f"{psi} lacks full support on <{psi.n_colors}>")
    psi._check_same(phi)
    out = 1
    for c, m in psi.items():
        out *= multichoose(m, phi[c])
    return out


_KET_TERM = re.compile(r"\s*(\d*)\s*\|\s*(\d+)\s*>\s*")


def parse_multiset(text: str, n_colors: int | None = None) -> Multiset:
    """Parse ``2|0> + 1|1>``, ``[2,1,0]`` or ``empty``.

    Without ``n_colors`` the ket form uses one more than the largest colour
    mentioned; the vector form always uses its own length.
    """
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise UrnError(f"unterminated vector: {text!r}")
        body = s[1:-1].strip()
        vec = [int(x) for x in body.split(",")] if body else []
        if n_colors is not None and n_colors != len(vec):
            raise UrnError(f"vector {text!r} has {len(vec)} entries, expected {n_colors}")
        if any(v < 0 for v in vec):
            raise UrnError(f"negative multiplicity in {text!r}")
        return Multiset.from_vector(vec)
    counts: dict[int, int] = {}
    if s not in ("empty", "0", ""):
        for part in s.split("+"):
            m = _KET_TERM.fullmatch(part)
            if not m:
                raise UrnError(f"cannot parse multiset term {part!r}")
            mult, color = int(m.group(1) or 1), int(m.group(2))
            counts[color] = counts.get(color, 0) + mult
    n = n_colors if n_colors is not None else (max(counts) + 1 if counts else 1)
    return Multiset(n, counts)
