"""Finite posets on [d] stored as transitively closed bitmask relations.

All public functions speak 1-based indices (``p_1 .. p_d``); storage is
0-based, with ``up[i]`` the bitmask of elements strictly above ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .errors import CycleError, DimensionMismatch, SizeError

MAX_CANON_D = 8


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _permute_masks(masks: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    """Relabel element ``i`` as ``perm[i]`` (0-based)."""
    out = [0] * len(masks)
    for i, m in enumerate(masks):
        nm = 0
        for j in _bits(m):
            nm |= 1 << perm[j]
        out[perm[i]] = nm
    return tuple(out)


@dataclass(frozen=True)
class Poset:
    d: int
    up: tuple[int, ...]

    def __post_init__(self):
        if len(self.up) != self.d:
            raise DimensionMismatch(f"up has {len(self.up)} masks, expected {self.d}")

    @cached_property
    def down(self) -> tuple[int, ...]:
        dn = [0] * self.d
        for i, m in enumerate(self.up):
            for j in _bits(m):
                dn[j] |= 1 << i
        return tuple(dn)

    @cached_property
    def comp(self) -> tuple[int, ...]:
        """Comparability masks (the adjacency of the comparability graph)."""
        return tuple(u | w for u, w in zip(self.up, self.down))

    @property
    def rel(self) -> frozenset[tuple[int, int]]:
        return frozenset((i + 1, j + 1) for i, m in enumerate(self.up) for j in _bits(m))

    def less(self, i: int, j: int) -> bool:
        return bool(self.up[i - 1] >> (j - 1) & 1)

    def comparable(self, i: int, j: int) -> bool:
        return bool(self.comp[i - 1] >> (j - 1) & 1)

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i, m in enumerate(self.up):
            for j in _bits(m):
                # j covers i unless something sits strictly between
                if not (m & self.down[j]):
                    out.append((i + 1, j + 1))
        return out

    def validate(self) -> None:
        """Assert irreflexivity, antisymmetry and transitivity."""
        for i, m in enumerate(self.up):
            if m >> i & 1:
                raise CycleError(f"element {i + 1} is below itself")
            if m >> self.d:
                raise IndexError(f"relation of element {i + 1} leaves [d]")
            for j in _bits(m):
                if self.up[j] >> i & 1:
                    raise CycleError(f"{i + 1} and {j + 1} are mutually below each other")
                if self.up[j] & ~m:
                    raise ValueError(f"relation not transitive at {i + 1} < {j + 1}")

    def __repr__(self):
        return f"Poset(d={self.d}, rel={sorted(self.rel)})"


@dataclass(frozen=True)
class Graph:
    d: int
    adj: tuple[int, ...]

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((i + 1, j + 1) for i, m in enumerate(self.adj) for j in _bits(m) if i < j)

    def degree(self, i: int) -> int:
        return bin(self.adj[i - 1]).count("1")


def _close(d: int, up: list[int]) -> tuple[int, ...]:
    # Warshall on bitmasks
    for k in range(d):
        bk = 1 << k
        for i in range(d):
            if up[i] & bk:
                up[i] |= up[k]
    for i in range(d):
        if up[i] >> i & 1:
            raise CycleError(f"relation has a cycle through element {i + 1}")
    return tuple(up)


def poset_from_covers(d: int, covers: Iterable[Sequence[int]]) -> Poset:
    """Close ``covers`` (1-based pairs ``(i, j)`` meaning i < j) transitively.

    A full relation is accepted too; closing it is a no-op.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    up = [0] * d
    for pair in covers:
        i, j = pair
        if not (1 <= i <= d and 1 <= j <= d):
            raise IndexError(f"cover ({i}, {j}) outside [1, {d}]")
        if i == j:
            raise CycleError(f"cover ({i}, {j}) is reflexive")
        up[i - 1] |= 1 << (j - 1)
    return Poset(d, _close(d, up))


def chain(n: int) -> Poset:
    return Poset(n, tuple(((1 << n) - 1) & ~((1 << (i + 1)) - 1) for i in range(n)))


def antichain(n: int) -> Poset:
    return Poset(n, (0,) * n)


EMPTY = Poset(0, ())
ONE = antichain(1)


def induced_subposet(P: Poset, W: Iterable[int]) -> tuple[Poset, tuple[int, ...]]:
    """Restrict to W; elements are renumbered 1..|W| by increasing original index.

    Returns the subposet and the tuple of original (1-based) indices.
    """
    idx = sorted(set(W))
    for i in idx:
        if not 1 <= i <= P.d:
            raise IndexError(f"index {i} outside [1, {P.d}]")
    pos = {i - 1: k for k, i in enumerate(idx)}
    up = []
    for i in idx:
        m = 0
        for j in _bits(P.up[i - 1]):
            if j in pos:
                m |= 1 << pos[j]
        up.append(m)
    return Poset(len(idx), tuple(up)), tuple(idx)


def induced_by_mask(P: Poset, mask: int) -> Poset:
    return induced_subposet(P, [i + 1 for i in _bits(mask)])[0]


def ordinal_sum(*parts: Poset) -> Poset:
    """A_1 below A_2 below ...; element indices are concatenated in order."""
    total = sum(p.d for p in parts)
    up: list[int] = []
    offset = 0
    for p in parts:
        above = ((1 << total) - 1) & ~((1 << (offset + p.d)) - 1)
        up.extend((m << offset) | above for m in p.up)
        offset += p.d
    return Poset(total, tuple(up))


def disjoint_union(*parts: Poset) -> Poset:
    up: list[int] = []
    offset = 0
    for p in parts:
        up.extend(m << offset for m in p.up)
        offset += p.d
    return Poset(offset, tuple(up))


def relabel(P: Poset, perm: Sequence[int]) -> Poset:
    """Send element i to ``perm[i-1]`` (both 1-based)."""
    if sorted(perm) != list(range(1, P.d + 1)):
        raise ValueError("perm is not a permutation of 1..d")
    return Poset(P.d, _permute_masks(P.up, [k - 1 for k in perm]))


def comparability_graph(P: Poset) -> Graph:
    return Graph(P.d, P.comp)


def graph_join(G: Graph, H: Graph) -> Graph:
    n = G.d + H.d
    lo = (1 << G.d) - 1
    hi = ((1 << n) - 1) & ~lo
    return Graph(n, tuple(m | hi for m in G.adj) + tuple((m << G.d) | lo for m in H.adj))


def labeled_graph_iso_by_identity(P: Poset, Q: Poset) -> bool:
    """True iff p_i -> q_i maps G_P onto G_Q, i.e. the comparability masks agree."""
    if P.d != Q.d:
        raise DimensionMismatch(f"d differs: {P.d} vs {Q.d}")
    return P.comp == Q.comp


# ---------------------------------------------------------------------------
# canonical forms: individualization-refinement with twin pruning

def _refine(colors: list[int], rels: Sequence[Sequence[int]]) -> list[int]:
    d = len(colors)
    ncells = len(set(colors))
    while True:
        sigs = [
            (colors[v],) + tuple(tuple(sorted(colors[w] for w in _bits(r[v]))) for r in rels)
            for v in range(d)
        ]
        rank = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return colors
        ncells = len(rank)


def _twin_classes(d: int, rels: Sequence[Sequence[int]]) -> list[int]:
    """Representative of each vertex under 'transposition is an automorphism'."""
    rep = list(range(d))
    for u in range(d):
        if rep[u] != u:
            continue
        for v in range(u + 1, d):
            if rep[v] != v:
                continue
            perm = list(range(d))
            perm[u], perm[v] = v, u
            if all(_permute_masks(r, perm) == tuple(r) for r in rels):
                rep[v] = u
    return rep


def _canonical(d: int, rels: Sequence[Sequence[int]], extra: Sequence[Sequence[int]] = ()) -> bytes:
    """Minimal leaf code over an individualization-refinement search.

    ``extra`` relations only guide refinement; the code is built from ``rels``.
    """
    if d > MAX_CANON_D:
        raise SizeError(f"canonical forms are supported for d <= {MAX_CANON_D}, got {d}")
    guide = list(rels) + list(extra)
    twins = _twin_classes(d, rels)
    best: bytes | None = None

    def search(colors: list[int]):
        nonlocal best
        colors = _refine(colors, guide)
        if len(set(colors)) == d:
            code = bytes([d]) + b"".join(bytes(_permute_masks(r, colors)) for r in rels)
            if best is None or code < best:
                best = code
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, n in counts.items() if n > 1)
        seen_twins = set()
        for v in range(d):
            if colors[v] != target or twins[v] in seen_twins:
                continue
            seen_twins.add(twins[v])
            search([2 * c + (0 if w == v else 1) for w, c in enumerate(colors)])

    search([0] * d)
    assert best is not None
    return best


def canonical_code(P: Poset) -> bytes:
    """Isomorphism-invariant code of a poset (d <= 8)."""
    return _canonical(P.d, [P.up], [P.down])


def graph_canonical_code(G: Graph) -> bytes:
    return _canonical(G.d, [G.adj])


def brute_canonical_code(P: Poset) -> bytes:
    """Minimum over all d! relabelings; the unoptimized reference."""
    if P.d > MAX_CANON_D:
        raise SizeError(f"d = {P.d} too large")
    return bytes([P.d]) + min(bytes(_permute_masks(P.up, p)) for p in permutations(range(P.d)))


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    return P.d == Q.d and canonical_code(P) == canonical_code(Q)


def poset_from_code(code: bytes) -> Poset:
    return Poset(code[0], tuple(code[1:]))


def graph_automorphisms(G: Graph) -> list[tuple[int, ...]]:
    """All vertex permutations (0-based images) preserving the edge set."""
    d = G.d
    deg = [bin(m).count("1") for m in G.adj]
    out = []

    def extend(perm: list[int], used: int):
        i = len(perm)
        if i == d:
            out.append(tuple(perm))
            return
        for j in range(d):
            if used >> j & 1 or deg[j] != deg[i]:
                continue
            # adjacency to already-placed vertices must be preserved
            if all((G.adj[i] >> k & 1) == (G.adj[j] >> perm[k] & 1) for k in range(i)):
                perm.append(j)
                extend(perm, used | 1 << j)
                perm.pop()

    extend([], 0)
    return out


def random_poset(d: int, rng, density: float | None = None) -> Poset:
    """Random labeled poset: random relations on a random linear order, closed."""
    if density is None:
        density = rng.random()
    order = list(range(d))
    rng.shuffle(order)
    covers = [
        (order[a] + 1, order[b] + 1)
        for a in range(d)
        for b in range(a + 1, d)
        if rng.random() < density
    ]
    return poset_from_covers(d, covers)
