import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from sepsys.combi import (CombiError, QuasiCombi, combi_from_tiling, combi_from_w_collection,
                          delta, htile, lower_triangle, nabla, normalize_to_combi, op_create,
                          op_eliminate, op_merge, op_split, reductions, standard_combi,
                          triangle_tile, triangulate, upper_triangle, validate_quasi_combi,
                          weak_flip)
from sepsys.subsets import (Kind, S, intervals, is_separated_collection, random_weak_walk,
                            rank_formula)
from sepsys.tiling import antistandard_tiling, standard_tiling

from conftest import W_13, W_24


def lens_combi(weak4):
    for w in weak4:
        k = combi_from_w_collection(w, 4)
        if k.lenses():
            return k
    raise AssertionError("no lens at n=4")


def test_triangle_classification():
    assert triangle_tile({S("1"), S("2"), S("3")}) == upper_triangle(0, 1, 2, 3)
    assert triangle_tile({S("12"), S("13"), S("23")}) == lower_triangle(S("123"), 1, 2, 3)
    assert triangle_tile({0, S("1"), S("2")}) == nabla(0, 1, 2)
    assert triangle_tile({S("1"), S("2"), S("12")}) == delta(S("12"), 1, 2)
    with pytest.raises(CombiError):
        triangle_tile({0, S("1"), S("123")})


def test_triangulated_standard_tiling_is_a_combi():
    for n in (3, 4, 5):
        k = combi_from_tiling(standard_tiling(n).rhombi, n)
        assert validate_quasi_combi(k) == [] and k.is_combi
        assert k.spectrum == intervals(n)


def test_lone_lens_is_rejected():
    lens = htile(S("3"), (1, 2, 4), (1, 3, 4))
    assert validate_quasi_combi(QuasiCombi(4, frozenset({lens})))


def test_all_n4_w_collections_give_valid_combies(weak4):
    for w in weak4:
        k = combi_from_w_collection(w, 4)
        assert validate_quasi_combi(k) == [] and k.is_combi and k.spectrum == w


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_sampled_n5_combies(seed):
    w = random_weak_walk(5, 30, random.Random(seed))
    k = combi_from_w_collection(w, 5)
    assert validate_quasi_combi(k) == [] and k.spectrum == w


def test_intervals_give_the_rhombus_combi():
    for n in (3, 4, 5):
        k = combi_from_w_collection(intervals(n), n)
        assert not k.lenses() and all(t.vertical for t in k.tiles)
        assert len(k.tiles) == 2 * comb(n, 2)
        assert k == combi_from_tiling(standard_tiling(n).rhombi, n)


def test_mixed_example_collections():
    for w in (W_24, W_13):
        assert len(w) == 11 and is_separated_collection(Kind.WEAK, w, 4)
        k = combi_from_w_collection(w, 4)
        assert validate_quasi_combi(k) == [] and k.spectrum == w


def test_split_and_merge_are_inverse(weak4):
    k = lens_combi(weak4)
    lens = k.lenses()[0]
    assert len(lens.up) == len(lens.low) == 3
    up_chain = lens.upper_chain()
    k2 = op_split(k, lens, up_chain[0], up_chain[-1])
    halves = sorted(set(k2.tiles) - set(k.tiles))
    assert sorted(h.shape for h in halves) == ["lower", "upper"]
    assert validate_quasi_combi(k2) == []
    assert op_merge(k2, *halves) == k
    with pytest.raises(CombiError):
        op_split(k, lens, up_chain[0], up_chain[1])


def test_eliminate_and_create_are_inverse():
    base = combi_from_tiling(antistandard_tiling(3).rhombi, 3)
    fan = [t for t in base.tiles if t.kind == "D" and t.root == S("123")]
    assert len(fan) == 2
    k = op_create(base, fan)
    semi = next(t for t in k.tiles if t.is_semilens)
    assert semi == lower_triangle(S("123"), 1, 2, 3)
    assert validate_quasi_combi(k) == []
    assert op_eliminate(k, semi) == base
    assert normalize_to_combi(k) == base


def test_upper_fan_round_trip():
    base = standard_combi(3)
    fan = [t for t in base.tiles if t.kind == "N" and t.root == 0]
    k = op_create(base, fan)
    semi = next(t for t in k.tiles if t.is_semilens)
    assert semi.shape == "upper" and validate_quasi_combi(k) == []
    assert op_eliminate(k, semi) == base


def test_create_rejects_bad_fans():
    base = standard_combi(3)
    with pytest.raises(CombiError):
        op_create(base, [next(iter(base.tiles))])


def test_triangulate_lens_count(weak4):
    k = lens_combi(weak4)
    for policy in ("left", "right"):
        t = triangulate(k, policy)
        assert t.fully_triangulated and validate_quasi_combi(t) == []
        assert len([x for x in t.tiles if x.horizontal]) == 2
        assert normalize_to_combi(t) == k
    with pytest.raises(CombiError):
        triangulate(k, "middle")


def test_triangulate_leaves_triangles_alone():
    k = standard_combi(4)
    assert triangulate(k) == k
    assert normalize_to_combi(k) == k


@pytest.mark.parametrize("n", [5, 6])
def test_triangulate_normalize_round_trip(n):
    rng = random.Random(n)
    for _ in range(8):
        k = combi_from_w_collection(random_weak_walk(n, 40, rng), n)
        for policy in ("left", "right"):
            t = triangulate(k, policy)
            assert t.fully_triangulated and t.spectrum == k.spectrum
            assert normalize_to_combi(t, random.Random(rng.random())) == k


def test_normalization_order_independent(weak4):
    for w in weak4:
        k = combi_from_w_collection(w, 4)
        t = triangulate(k)
        outs = {normalize_to_combi(t, random.Random(s)) for s in range(6)}
        assert outs == {k}


def test_reductions_empty_on_combies(weak4):
    assert all(reductions(combi_from_w_collection(w, 4)) == [] for w in weak4)


def test_weak_flip_at_n3():
    k = standard_combi(3)
    up = weak_flip(k, 0, 1, 2, 3, "raise")
    assert up.spectrum == (k.spectrum - {S("2")}) | {S("13")}
    assert weak_flip(up, 0, 1, 2, 3, "lower").spectrum == k.spectrum
    with pytest.raises(CombiError):
        weak_flip(k, 0, 1, 2, 3, "lower")


def test_weak_flips_reach_antistandard_at_n4():
    from collections import deque

    start = standard_combi(4).spectrum
    goal = combi_from_tiling(antistandard_tiling(4).rhombi, 4).spectrum
    seen, todo = {start}, deque([start])
    while todo:
        spec = todo.popleft()
        k = combi_from_w_collection(spec, 4)
        for x in range(16):
            for i in range(1, 5):
                for j in range(i + 1, 5):
                    for l in range(j + 1, 5):
                        if x & (S(str(i)) | S(str(j)) | S(str(l))):
                            continue
                        try:
                            u = weak_flip(k, x, i, j, l, "raise").spectrum
                        except CombiError:
                            continue
                        if u not in seen:
                            seen.add(u)
                            todo.append(u)
    assert goal in seen
    assert all(len(s) == rank_formula(Kind.WEAK, 4) for s in seen)
