import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from sepsys.subsets import (Kind, S, all_subsets, co_intervals, intervals, is_separated_collection,
                            rank_formula)
from sepsys.tiling import (FlipError, Hexagon, Tiling, TilingError, all_tilings, antistandard_tiling,
                           find_hexagons, flipped, inversion_set, inversion_set_fast,
                           random_tiling, standard_tiling, strong_flip, tiling_from_s_collection,
                           validate_tiling)


def test_build_from_intervals_and_co_intervals():
    assert tiling_from_s_collection(intervals(3), 3).rhombi == {(0, 1, 2), (0, 2, 3), (S("2"), 1, 3)}
    assert tiling_from_s_collection(co_intervals(3), 3).rhombi == {
        (S("3"), 1, 2), (S("1"), 2, 3), (0, 1, 3)}
    t = tiling_from_s_collection(intervals(4), 4)
    assert len(t) == 6 and t.spectrum == intervals(4)


def test_build_rejects_non_separated_or_small_input():
    with pytest.raises(TilingError):
        tiling_from_s_collection({0, S("13"), S("2")}, 3)


def test_standard_spectra():
    assert standard_tiling(3).spectrum == {0, S("1"), S("2"), S("3"), S("12"), S("23"), S("123")}
    assert len(standard_tiling(4).spectrum) == 11


def test_hexagon_scan():
    assert find_hexagons(standard_tiling(3)) == [Hexagon(0, 1, 2, 3, "Y")]
    assert find_hexagons(antistandard_tiling(3)) == [Hexagon(0, 1, 2, 3, "L")]
    hs = find_hexagons(standard_tiling(4))
    assert hs and all(h.config == "Y" for h in hs)


def test_flip_examples():
    t = standard_tiling(3)
    h = find_hexagons(t)[0]
    u = strong_flip(t, h)
    assert u == antistandard_tiling(3)
    assert t.spectrum - u.spectrum == {S("2")} and u.spectrum - t.spectrum == {S("13")}
    assert strong_flip(u, flipped(h)) == t
    with pytest.raises(FlipError):
        strong_flip(t, flipped(h))


def test_inversions_at_extremes():
    for n in range(3, 7):
        assert inversion_set(standard_tiling(n)) == frozenset()
    assert inversion_set(antistandard_tiling(4)) == {(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)}


def test_traced_and_bitmask_inversions_agree_exhaustively():
    for n in (3, 4, 5):
        for t in all_tilings(n):
            assert inversion_set(t) == inversion_set_fast(t)


def test_tiling_counts_and_round_trip(strong4):
    ts = all_tilings(4)
    assert len(ts) == 8
    assert {t.spectrum for t in ts} == set(strong4)
    for coll in strong4:
        assert tiling_from_s_collection(coll, 4).spectrum == coll
    assert len(all_tilings(5)) == 62


@settings(max_examples=25)
@given(st.integers(5, 6), st.integers(0, 10**6))
def test_random_tilings_round_trip(n, seed):
    t = random_tiling(n, random.Random(seed), steps=60)
    assert validate_tiling(t) == []
    assert len(t.spectrum) == rank_formula(Kind.STRONG, n)
    assert is_separated_collection(Kind.STRONG, t.spectrum, n)
    assert tiling_from_s_collection(t.spectrum, n) == t


@settings(max_examples=25)
@given(st.integers(4, 6), st.integers(0, 10**6))
def test_flip_changes_inversions_by_one(n, seed):
    rng = random.Random(seed)
    t = random_tiling(n, rng, steps=30)
    for h in find_hexagons(t):
        u = strong_flip(t, h)
        d = len(inversion_set_fast(u)) - len(inversion_set_fast(t))
        assert d == (1 if h.config == "Y" else -1)
        assert inversion_set_fast(u) ^ inversion_set_fast(t) == {(h.i, h.j, h.k)}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_raising_chain_length(n):
    rng = random.Random(n)
    t, steps = standard_tiling(n), 0
    while True:
        ys = find_hexagons(t, "Y")
        if not ys:
            break
        t = strong_flip(t, rng.choice(ys))
        steps += 1
    assert t == antistandard_tiling(n) and steps == comb(n, 3)


def test_validator_faults():
    assert validate_tiling(standard_tiling(5)) == []
    t = standard_tiling(4)
    broken = Tiling(4, t.rhombi - {next(iter(sorted(t.rhombi)))})
    assert any(v.kind == "missing color pair" for v in validate_tiling(broken))
    bad = Tiling(3, (standard_tiling(3).rhombi - {(S("2"), 1, 3)}) | {(0, 1, 3)})
    assert any(v.kind == "overlap" for v in validate_tiling(bad))


def test_all_tilings_spectra_are_the_maximal_collections():
    found = {t.spectrum for t in all_tilings(3)}
    assert found == {intervals(3), co_intervals(3)}
    assert all(c <= frozenset(all_subsets(3)) for c in found)
