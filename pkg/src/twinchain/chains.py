"""Antichains, chains and maximal chains of a poset.

Maximal chains are the maximal cliques of the comparability graph, so the
main enumerator is a pivoting Bron-Kerbosch over bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .poset import Poset, _bits


def mask_to_tuple(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in _bits(mask))


def tuple_to_mask(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << (i - 1)
    return m


def _family_key(mask: int):
    return (bin(mask).count("1"), mask_to_tuple(mask))


@dataclass(frozen=True)
class SubsetFamily:
    """A set of subsets of [d], kept as bitmasks in (size, lex) order."""

    d: int
    masks: tuple[int, ...]

    @classmethod
    def from_masks(cls, d: int, masks) -> "SubsetFamily":
        return cls(d, tuple(sorted(set(masks), key=_family_key)))

    @property
    def members(self) -> list[tuple[int, ...]]:
        return [mask_to_tuple(m) for m in self.masks]

    def __len__(self):
        return len(self.masks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.members)

    def __contains__(self, item) -> bool:
        return tuple_to_mask(item) in set(self.masks)


def is_chain_mask(P: Poset, mask: int) -> bool:
    comp = P.comp
    return all((mask & ~(1 << i)) & ~comp[i] == 0 for i in _bits(mask))


def is_antichain_mask(P: Poset, mask: int) -> bool:
    comp = P.comp
    return all(comp[i] & mask == 0 for i in _bits(mask))


def antichains(P: Poset) -> SubsetFamily:
    comp = P.comp
    out = []

    def grow(mask: int, allowed: int):
        out.append(mask)
        for i in _bits(allowed):
            # only extend upward in index to avoid repeats
            grow(mask | 1 << i, allowed & ~comp[i] & ~((1 << (i + 1)) - 1))

    grow(0, (1 << P.d) - 1)
    return SubsetFamily.from_masks(P.d, out)


def maximal_chain_masks(P: Poset, within: int | None = None) -> list[int]:
    """Maximal chains of the subposet induced on ``within`` (default: all)."""
    comp = P.comp
    cand = (1 << P.d) - 1 if within is None else within
    out: list[int] = []

    def bk(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            return
        u = next(_bits(p | x))
        best = -1
        # pivot with most candidate neighbours
        for w in _bits(p | x):
            n = bin(p & comp[w]).count("1")
            if n > best:
                best, u = n, w
        for v in _bits(p & ~comp[u]):
            bk(r | 1 << v, p & comp[v], x & comp[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, cand, 0)
    return out


def maximal_chains(P: Poset) -> SubsetFamily:
    return SubsetFamily.from_masks(P.d, maximal_chain_masks(P))


def maximal_chains_plain(P: Poset) -> SubsetFamily:
    """Reference enumerator: grow chains greedily, keep the unextendable ones."""
    comp = P.comp
    full = (1 << P.d) - 1
    found = set()

    def grow(mask: int):
        ext = full & ~mask
        for i in _bits(mask):
            ext &= comp[i]
        if not ext:
            found.add(mask)
            return
        for j in _bits(ext):
            grow(mask | 1 << j)

    grow(0)
    return SubsetFamily.from_masks(P.d, found)


def chain_count(P: Poset, within: int | None = None) -> int:
    """Number of chains (cliques of G_P), the empty chain included."""
    comp = P.comp

    def count(cand: int) -> int:
        total = 1
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand &= ~low
            total += count(cand & comp[i])
        return total

    return count((1 << P.d) - 1 if within is None else within)


def chains_through(P: Poset, i: int) -> SubsetFamily:
    if not 1 <= i <= P.d:
        raise IndexError(f"index {i} outside [1, {P.d}]")
    comp = P.comp
    out = []

    def grow(mask: int, cand: int):
        out.append(mask)
        while cand:
            low = cand & -cand
            cand &= ~low
            grow(mask | low, cand & comp[low.bit_length() - 1])

    grow(1 << (i - 1), comp[i - 1])
    return SubsetFamily.from_masks(P.d, out)


def moon_moser_cap(d: int) -> int:
    """floor(3^(d/3)), computed as the integer cube root of 3^d."""
    target = 3 ** d
    lo, hi = 0, 1
    while hi ** 3 <= target:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** 3 <= target:
            lo = mid
        else:
            hi = mid
    return lo
