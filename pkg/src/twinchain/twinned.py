"""Facet counts of twinned chain polytopes Gamma(P, Q) from maximal chains.

A facet is labelled by a signed chain: a maximal chain of the ordinal sum
P_W (+) Q_{[d] minus W} for some W, recorded as the P-indices and the
Q-indices it uses. The same signed chain can arise from several W, so the
family is a set union.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal, NamedTuple

import numpy as np

from . import _kernels
from .chains import chain_count, mask_to_tuple, maximal_chain_masks, tuple_to_mask
from .errors import DimensionMismatch, OddDimension
from .poset import Poset, _bits, induced_by_mask, induced_subposet, ordinal_sum


@dataclass(frozen=True, order=False)
class SignedChain:
    sP: tuple[int, ...]
    sQ: tuple[int, ...]

    def sort_key(self):
        return (len(self.sP) + len(self.sQ), self.sP, self.sQ)

    def __str__(self):
        items = [f"p{i}" for i in self.sP] + [f"q{j}" for j in self.sQ]
        return "{" + ",".join(items) + "}"

    def as_record(self) -> dict:
        return {"P": list(self.sP), "Q": list(self.sQ)}


@dataclass(frozen=True)
class FacetFamily:
    d: int
    members: tuple[SignedChain, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, c):
        return c in set(self.members)


class DeltaPoset(NamedTuple):
    poset: Poset
    tags: tuple[tuple[str, int], ...]


def _check_pair(P: Poset, Q: Poset):
    if P.d != Q.d:
        raise DimensionMismatch(f"|P| = {P.d} but |Q| = {Q.d}")


def delta_poset(P: Poset, Q: Poset, W: Iterable[int]) -> DeltaPoset:
    """Ordinal sum of P restricted to W below Q restricted to the complement."""
    _check_pair(P, Q)
    W = set(W)
    PW, pidx = induced_subposet(P, W)
    QW, qidx = induced_subposet(Q, set(range(1, P.d + 1)) - W)
    tags = tuple(("P", i) for i in pidx) + tuple(("Q", j) for j in qidx)
    return DeltaPoset(ordinal_sum(PW, QW), tags)


def _subsets(d: int):
    for W in range(1 << d):
        yield W, mask_to_tuple(W)


def facet_chain_list(P: Poset, Q: Poset) -> list[tuple[tuple[int, ...], SignedChain]]:
    """Every (W, chain) pair before deduplication, W in mask order."""
    _check_pair(P, Q)
    out = []
    for _, W in _subsets(P.d):
        delta, tags = delta_poset(P, Q, W)
        for m in maximal_chain_masks(delta):
            sp = tuple(sorted(tags[k][1] for k in _bits(m) if tags[k][0] == "P"))
            sq = tuple(sorted(tags[k][1] for k in _bits(m) if tags[k][0] == "Q"))
            out.append((W, SignedChain(sp, sq)))
    return out


def facet_chains(P: Poset, Q: Poset) -> FacetFamily:
    members = {c for _, c in facet_chain_list(P, Q)}
    return FacetFamily(P.d, tuple(sorted(members, key=SignedChain.sort_key)))


@lru_cache(maxsize=4096)
def chain_table(P: Poset) -> tuple[np.ndarray, np.ndarray]:
    """CSR table of maximal chains of P_W for every W (bitmask order)."""
    return _kernels.subset_maximal_chains(np.array(P.comp, dtype=np.int64).reshape(P.d))


def facet_count(P: Poset, Q: Poset, method: Literal["kernel", "reference"] = "kernel") -> int:
    _check_pair(P, Q)
    if method == "reference":
        return len(facet_chains(P, Q))
    p_off, p_ch = chain_table(P)
    q_off, q_ch = chain_table(Q)
    return _kernels.facet_count(P.d, p_off, p_ch, q_off, q_ch)


def facet_key_set(P: Poset, Q: Poset) -> set[tuple[int, int]]:
    """Facet labels as (P-mask, Q-mask) pairs, built from the chain tables."""
    _check_pair(P, Q)
    p_off, p_ch = chain_table(P)
    q_off, q_ch = chain_table(Q)
    full = (1 << P.d) - 1
    keys = set()
    for W in range(1 << P.d):
        Wc = full ^ W
        for a in p_ch[p_off[W]:p_off[W + 1]]:
            for b in q_ch[q_off[Wc]:q_off[Wc + 1]]:
                keys.add((int(a), int(b)))
    return keys


def facet_count_chain_P(Q: Poset) -> int:
    """N(Gamma(C_d, Q)) as the sum over W of the number of maximal chains of Q_W."""
    return sum(len(maximal_chain_masks(Q, within=W)) for W in range(1 << Q.d))


def closed_form(kind: Literal["CC", "II", "IC"], d: int) -> int:
    if d < 1:
        raise ValueError("d must be >= 1")
    if kind == "CC":
        return 2 ** d
    if kind == "II":
        return d * d + d
    if kind == "IC":
        return d * 2 ** (d - 1) + 1
    raise ValueError(f"unknown closed form {kind!r}")


def bound(d: int) -> Fraction:
    """6^(d/2) for even d and 14 * 6^((d-3)/2) for odd d, exactly."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d % 2 == 0:
        return Fraction(6) ** (d // 2)
    return 14 * Fraction(6) ** ((d - 3) // 2)


def is_i2_tower(P: Poset) -> bool:
    """P is isomorphic to I_2 (+) ... (+) I_2.

    Equivalent to: incomparability pairs the elements off perfectly, since a
    poset whose incomparability is an equivalence is an ordinal sum of
    antichains on the classes.
    """
    if P.d % 2:
        return False
    full = (1 << P.d) - 1
    for i in range(P.d):
        inc = full & ~P.comp[i] & ~(1 << i)
        if bin(inc).count("1") != 1:
            return False
    return True


def is_equality_case(P: Poset, Q: Poset) -> bool:
    _check_pair(P, Q)
    if P.d % 2:
        raise OddDimension(f"equality case is defined for even d, got {P.d}")
    return is_i2_tower(P) and is_i2_tower(Q) and P.comp == Q.comp


def direct_sum_pair(P1: Poset, Q1: Poset, P2: Poset, Q2: Poset) -> tuple[Poset, Poset]:
    _check_pair(P1, Q1)
    _check_pair(P2, Q2)
    return ordinal_sum(P1, P2), ordinal_sum(Q1, Q2)


# ---------------------------------------------------------------------------
# counting inequalities used in the degree lemmas

@dataclass(frozen=True)
class LemmaReport:
    kind: str
    k: int
    lhs: int
    rhs: int
    terms: tuple[int, ...]
    incomparable_P: tuple[int, ...]
    incomparable_Q: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs


def _incomparable(P: Poset, k: int) -> int:
    return ((1 << P.d) - 1) & ~P.comp[k - 1] & ~(1 << (k - 1))


def _restricted_count(P: Poset, Q: Poset, mask: int) -> int:
    return facet_count(induced_by_mask(P, mask), induced_by_mask(Q, mask))


def lemma_inequality_check(P: Poset, Q: Poset, kind: Literal["L31", "L32"], k: int) -> LemmaReport:
    """Evaluate both sides of a facet-counting inequality at element ``k``.

    L31: facets whose chain uses p_k are at most
         c(Q_I) * N(Gamma(P_R, Q_R)), I = elements incomparable to p_k in P,
         R = the rest of [d] without k and I.
    L32: N(Gamma(P, Q)) is at most N(Gamma(P_{-k}, Q_{-k})) plus the L31
         bound at p_k plus the mirrored bound at q_k.
    """
    _check_pair(P, Q)
    if not 1 <= k <= P.d:
        raise IndexError(f"k = {k} outside [1, {P.d}]")
    full = (1 << P.d) - 1
    kb = 1 << (k - 1)
    inc_p = _incomparable(P, k)
    inc_q = _incomparable(Q, k)
    term_p = chain_count(Q, within=inc_p) * _restricted_count(P, Q, full & ~kb & ~inc_p)
    if kind == "L31":
        lhs = sum(1 for a, _ in facet_key_set(P, Q) if a & kb)
        terms = (term_p,)
    elif kind == "L32":
        lhs = facet_count(P, Q)
        term_q = chain_count(P, within=inc_q) * _restricted_count(P, Q, full & ~kb & ~inc_q)
        terms = (_restricted_count(P, Q, full & ~kb), term_p, term_q)
    else:
        raise ValueError(f"unknown lemma kind {kind!r}")
    return LemmaReport(kind, k, lhs, sum(terms), terms, mask_to_tuple(inc_p), mask_to_tuple(inc_q))


def signed_chain_from_masks(a: int, b: int) -> SignedChain:
    return SignedChain(mask_to_tuple(a), mask_to_tuple(b))


def family_from_keys(d: int, keys) -> FacetFamily:
    members = {signed_chain_from_masks(a, b) for a, b in keys}
    return FacetFamily(d, tuple(sorted(members, key=SignedChain.sort_key)))


__all__ = [
    "SignedChain", "FacetFamily", "DeltaPoset", "delta_poset", "facet_chain_list",
    "facet_chains", "facet_count", "facet_key_set", "facet_count_chain_P", "closed_form",
    "bound", "is_i2_tower", "is_equality_case", "direct_sum_pair", "LemmaReport",
    "lemma_inequality_check", "chain_table", "tuple_to_mask", "family_from_keys",
]
