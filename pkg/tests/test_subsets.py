import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from sepsys.subsets import (GroundError, Kind, S, SeparationError, all_subsets, chord_crossing,
                            co_intervals, complement, elements, fmt, greedy_complete,
                            intervals, is_maximal_in, is_separated_collection, rank_formula,
                            rel_global_lt, rel_lessdot, rel_split, rim, separated,
                            smax, smin, surrounds, verify_purity, violating_pair, weak_flips,
                            apply_weak_flip)

from conftest import R4

subsets5 = st.integers(min_value=0, max_value=31)


def test_min_max_of_empty_set():
    assert smin(0) == smax(0) == 0
    assert smin(S("245")) == 2 and smax(S("245")) == 5


def test_subset_literals_round_trip():
    assert S("124") == 0b1011
    assert fmt(S("124")) == "124" and fmt(0) == "∅"
    assert elements(S("35")) == [3, 5]


def test_global_dominance_examples():
    assert rel_global_lt(S("12"), S("34"))
    assert rel_global_lt(0, S("1"))
    assert not rel_global_lt(S("13"), S("24"))


def test_lessdot_split_surround_examples():
    assert rel_lessdot(S("13"), S("23"))
    assert rel_split(S("2"), S("134"))
    assert not surrounds(S("2"), S("13"))
    assert surrounds(S("13"), S("2"))


def test_separation_examples():
    assert not separated(Kind.CHORD, S("13"), S("24"))
    assert not separated(Kind.WEAK, S("2"), S("134"))
    assert separated(Kind.CHORD, S("2"), S("134"))
    assert all(separated(Kind.STRONG, x, x) for x in all_subsets(4))


def test_ground_mismatch_is_rejected():
    with pytest.raises(GroundError):
        separated(Kind.STRONG, S("15"), S("2"), 4)


@given(subsets5, subsets5)
def test_hierarchy(a, b):
    if separated(Kind.STRONG, a, b):
        assert separated(Kind.WEAK, a, b)
    if separated(Kind.WEAK, a, b):
        assert separated(Kind.CHORD, a, b)


def test_surrounds_decomposition_exhaustive():
    for a in all_subsets(5):
        for b in all_subsets(5):
            alt = a == b or rel_lessdot(a, b) or rel_lessdot(b, a) or rel_split(b, a)
            assert surrounds(a, b) == alt, (fmt(a), fmt(b))


def test_chord_matches_alternation_exhaustive():
    for a in all_subsets(5):
        for b in all_subsets(5):
            assert separated(Kind.CHORD, a, b) == (chord_crossing(a, b) is None)


@given(subsets5, subsets5)
def test_lessdot_antisymmetric(a, b):
    if rel_lessdot(a, b) and rel_lessdot(b, a):
        assert a == b


@given(subsets5, subsets5, st.sampled_from(list(Kind)))
def test_separation_symmetric(a, b, kind):
    assert separated(kind, a, b) == separated(kind, b, a)


@given(subsets5, subsets5)
def test_weak_separation_survives_complement(a, b):
    assert separated(Kind.WEAK, a, b) == separated(Kind.WEAK, complement(a, 5), complement(b, 5))


def test_collection_predicates():
    assert is_separated_collection(Kind.STRONG, intervals(3), 3)
    assert is_maximal_in(Kind.STRONG, intervals(3), 3)
    assert not is_maximal_in(Kind.CHORD, intervals(3), 3)
    assert not is_separated_collection(Kind.CHORD, {S("13"), S("24")}, 4)
    assert violating_pair(Kind.CHORD, {S("13"), S("24")}, 4) == (S("13"), S("24"))


def test_rim_plus_two_sets_is_maximal_inside_the_cubillage_spectrum():
    vq = frozenset(all_subsets(4)) - {S("24")}
    s = R4 | {S("2"), S("124")}
    assert len(s) == 10
    for kind in (Kind.STRONG, Kind.WEAK):
        assert is_maximal_in(kind, s, 4, domain=vq)


def test_greedy_complete_examples():
    full3 = greedy_complete(Kind.CHORD, intervals(3), 3)
    assert full3 == intervals(3) | {S("13")} and len(full3) == 8
    assert len(greedy_complete(Kind.STRONG, (), 4)) == 11
    assert greedy_complete(Kind.CHORD, {S("13")}, 4) == frozenset(all_subsets(4)) - {S("24")}


def test_greedy_rejects_non_separated_input():
    with pytest.raises(SeparationError):
        greedy_complete(Kind.CHORD, {S("13"), S("24")}, 4)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_greedy_chord_hits_rank(n):
    rng = random.Random(n)
    for _ in range(100 if n < 6 else 30):
        c = greedy_complete(Kind.CHORD, (), n, rng=rng)
        assert len(c) == rank_formula(Kind.CHORD, n)


@given(st.lists(subsets5, max_size=6), st.integers(0, 10**6), st.sampled_from(list(Kind)))
def test_greedy_output_is_maximal_superset(seed_sets, seed, kind):
    start = set()
    for x in seed_sets:
        if all(separated(kind, x, y) for y in start):
            start.add(x)
    out = greedy_complete(kind, start, 5, rng=random.Random(seed))
    assert start <= out
    assert is_maximal_in(kind, out, 5)


def test_rank_formulas():
    assert rank_formula(Kind.STRONG, 4) == 11 and rank_formula(Kind.CHORD, 4) == 15
    assert rank_formula(Kind.CHORD, 3) == 8
    for n in range(1, 9):
        assert rank_formula(Kind.WEAK, n) == comb(n, 2) + n + 1
        assert rank_formula(Kind.CHORD, n) == comb(n, 3) + comb(n, 2) + n + 1


def test_exhaustive_purity_n4(strong4, weak4, chord4):
    rep = verify_purity(Kind.CHORD, 4, exhaustive=True)
    assert rep.ok and rep.count == 2
    assert set(chord4) == {frozenset(all_subsets(4)) - {S("13")},
                           frozenset(all_subsets(4)) - {S("24")}}
    assert {len(c) for c in strong4} == {11} and len(strong4) == 8
    assert {len(c) for c in weak4} == {11}


def test_exhaustive_mode_refuses_large_n():
    with pytest.raises(ValueError):
        verify_purity(Kind.STRONG, 5, exhaustive=True)


def test_rim_and_intervals():
    assert len(rim(4)) == 8
    assert rim(4) <= intervals(4) & co_intervals(4)


def test_weak_flips_preserve_purity():
    coll = intervals(5)
    rng = random.Random(1)
    for _ in range(40):
        flips = weak_flips(coll, 5)
        coll = apply_weak_flip(coll, rng.choice(flips))
        assert len(coll) == 16 and is_separated_collection(Kind.WEAK, coll, 5)


def test_three_set_interval_pairs_all_chord_separated():
    # on [3] every pair is chord separated, so 2^[3] is the only maximal collection
    assert all(separated(Kind.CHORD, a, b) for a, b in combinations(all_subsets(3), 2))
