import pytest
from hypothesis import given, settings

from twinchain.census import enumerate_posets
from twinchain.chains import (
    antichains,
    chain_count,
    chains_through,
    is_chain_mask,
    maximal_chain_masks,
    maximal_chains,
    maximal_chains_plain,
    moon_moser_cap,
)
from twinchain.poset import ONE, antichain, chain, disjoint_union, ordinal_sum

from helpers import posets

I2 = antichain(2)


@pytest.mark.parametrize(
    "P, expected",
    [
        (I2, [(), (1,), (2,), (1, 2)]),
        (chain(2), [(), (1,), (2,)]),
        (antichain(0), [()]),
    ],
)
def test_antichains(P, expected):
    assert antichains(P).members == expected


def test_antichains_of_tower():
    assert len(antichains(ordinal_sum(I2, I2))) == 7


@pytest.mark.parametrize(
    "P, expected",
    [
        (chain(3), [(1, 2, 3)]),
        (antichain(3), [(1,), (2,), (3,)]),
        (disjoint_union(ONE, chain(2)), [(1,), (2, 3)]),
        (antichain(0), [()]),
    ],
)
def test_maximal_chains(P, expected):
    assert maximal_chains(P).members == expected
    assert maximal_chains_plain(P).members == expected


@pytest.mark.parametrize(
    "P, i, expected",
    [
        (chain(2), 1, [(1,), (1, 2)]),
        (I2, 1, [(1,)]),
        (ordinal_sum(I2, ONE), 3, [(3,), (1, 3), (2, 3)]),
    ],
)
def test_chains_through(P, i, expected):
    assert chains_through(P, i).members == expected


def test_chain_count_examples():
    assert chain_count(chain(3)) == 8
    assert chain_count(antichain(3)) == 4
    assert chain_count(antichain(0)) == 1


def test_moon_moser_tight_on_tower():
    P = ordinal_sum(antichain(3), antichain(3))
    assert len(maximal_chains(P)) == 9 == moon_moser_cap(6)


@pytest.mark.parametrize("d, cap", [(0, 1), (1, 1), (2, 2), (3, 3), (4, 4), (5, 6), (6, 9), (7, 12), (8, 18), (9, 27)])
def test_moon_moser_cap(d, cap):
    assert moon_moser_cap(d) == cap


def _cliques_bruteforce(P):
    n = 0
    for m in range(1 << P.d):
        if all(P.comp[i] >> j & 1 for i in range(P.d) for j in range(P.d) if i != j and m >> i & 1 and m >> j & 1):
            n += 1
    return n


@settings(max_examples=150, deadline=None)
@given(posets(max_d=6))
def test_chain_count_is_clique_count(P):
    assert chain_count(P) == _cliques_bruteforce(P)


@settings(max_examples=150, deadline=None)
@given(posets(max_d=6))
def test_bron_kerbosch_matches_plain(P):
    assert maximal_chains(P).members == maximal_chains_plain(P).members


@settings(max_examples=100, deadline=None)
@given(posets(max_d=6))
def test_maximal_chains_are_maximal_and_cover(P):
    maxi = maximal_chain_masks(P)
    full = (1 << P.d) - 1
    for m in maxi:
        assert is_chain_mask(P, m)
        assert all(not is_chain_mask(P, m | 1 << j) for j in range(P.d) if not m >> j & 1)
    for m in range(full + 1):
        if is_chain_mask(P, m):
            assert any(m & c == m for c in maxi)


@pytest.mark.parametrize("d", range(1, 8))
def test_moon_moser_holds_for_all_posets(d):
    cap = moon_moser_cap(d)
    assert max(len(maximal_chain_masks(P)) for P in enumerate_posets(d)) <= cap
