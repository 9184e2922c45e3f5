"""Index subsets in lexicographic order and the permutation signs built on them.

All indices are 1-based. The position of a subset in ``subsets_lex(n, r)`` is
its coordinate index in the wedge basis of grade ``r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError


@dataclass(frozen=True, order=True)
class IndexSubset:
    """Strictly increasing tuple of integers drawn from ``1..n``."""

    elements: tuple[int, ...]
    n: int

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", els)
        if any(a >= b for a, b in zip(els, els[1:])):
            raise DomainError(f"subset elements must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise DomainError(f"subset {els} not contained in 1..{self.n}")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "IndexSubset":
        """Build from any iterable of distinct indices (sorted here)."""
        els = sorted(elements)
        if len(set(els)) != len(els):
            raise DomainError(f"repeated index in {els}")
        return cls(tuple(els), n)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, i):
        return i in self.elements

    def complement(self) -> "IndexSubset":
        own = set(self.elements)
        return IndexSubset(tuple(j for j in range(1, self.n + 1) if j not in own), self.n)

    def label(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __repr__(self):
        return f"IndexSubset({self.label()}, n={self.n})"


def subsets_lex(n: int, r: int) -> list[IndexSubset]:
    """All ``r``-subsets of ``1..n`` in lexicographic order."""
    if n < 1 or r < 0 or r > n:
        raise DomainError(f"need n >= 1 and 0 <= r <= n, got n={n}, r={r}")
    return list(_subsets(n, r))


@lru_cache(maxsize=None)
def _subsets(n: int, r: int) -> tuple[IndexSubset, ...]:
    return tuple(IndexSubset(c, n) for c in combinations(range(1, n + 1), r))


@lru_cache(maxsize=None)
def subset_index(n: int, r: int) -> dict[tuple[int, ...], int]:
    """Map from element tuple to lexicographic rank among ``r``-subsets of ``1..n``."""
    return {s.elements: pos for pos, s in enumerate(_subsets(n, r))}


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``: (-1)**(number of inversions)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        raise DomainError(f"repeated entry in {seq}")
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inversions % 2 else 1


def _elements(s) -> tuple[int, ...]:
    return s.elements if isinstance(s, IndexSubset) else tuple(s)


def eps_IiJ(I, i: int, J) -> int:
    """Sign taking ``(i_1..i_{k-1}, i, j_1..j_{n-k})`` to ``(1..n)``.

    ``I``, ``{i}`` and ``J`` must partition ``{1..n}``.
    """
    seq = _elements(I) + (i,) + _elements(J)
    if sorted(seq) != list(range(1, len(seq) + 1)):
        raise DomainError(f"I, i, J do not partition 1..n: {seq}")
    return perm_sign(seq)


def eps_IJ(I, J, i: int) -> int:
    """Sign taking ``(i_1..i_{k-1}, j_1..j_{n-k})`` to ``(1..^i..n)``.

    The omitted point ``i`` is explicit so the ground set is unambiguous.
    """
    seq = _elements(I) + _elements(J)
    ground = [j for j in range(1, len(seq) + 2) if j != i]
    if not 1 <= i <= len(seq) + 1 or sorted(seq) != ground:
        raise DomainError(f"I, J do not partition 1..n minus {i}: {seq}")
    return perm_sign(seq)


def eps_iI(i: int, I) -> int:
    """Sign of moving ``i`` from the front into sorted position inside ``I``."""
    els = _elements(I)
    if i in els:
        raise DomainError(f"{i} already in {els}")
    return -1 if sum(1 for x in els if x < i) % 2 else 1


def complementary_pairs(n: int, k: int, i: int) -> list[tuple[IndexSubset, IndexSubset]]:
    """Pairs ``(I, J)`` with ``|I| = k-1``, ``|J| = n-k`` partitioning ``{1..n} - {i}``.

    Ordered by ``I`` lexicographically.
    """
    if not 1 <= k <= n or not 1 <= i <= n:
        raise DomainError(f"need 1 <= k <= n and 1 <= i <= n, got n={n}, k={k}, i={i}")
    rest = [j for j in range(1, n + 1) if j != i]
    pairs = []
    for I in combinations(rest, k - 1):
        J = tuple(j for j in rest if j not in I)
        pairs.append((IndexSubset(I, n), IndexSubset(J, n)))
    return pairs
