"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import random
import time
from collections import Counter
from contextlib import contextmanager
from math import comb

from sepsys import geometry as geo
from sepsys.cli import main
from sepsys.combi import combi_from_w_collection, normalize_to_combi, validate_quasi_combi
from sepsys.cubillage import (cubillage_from_c_collection, enumerate_ideals, fill_between_membranes,
                              front_side, join, cubillage_13, meet, membrane_of_ideal,
                              mirror_cubillage, random_cubillage, rear_side)
from sepsys.fragmentation import (enumerate_w_membranes, escort, fine_w_membrane,
                                  flip_spectrum_change, fragment, horizontal_edges_paired, is_fine,
                                  membrane_to_quasi_combi, w_flip, w_membrane_for_w_collection,
                                  w_spectrum)
from sepsys.subsets import (Kind, S, all_subsets, greedy_complete, is_maximal_in,
                            is_separated_collection, maximal_collections, random_weak_walk,
                            rank_formula, rim, verify_purity)
from sepsys.tiling import (all_tilings, antistandard_tiling, inversion_set_fast, standard_tiling,
                           tiling_from_s_collection)
from sepsys.wextend import extend_w_to_c, verify_extension

ALL4 = frozenset(all_subsets(4))


@contextmanager
def criterion(capsys, number, title, limit=None):
    t0 = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        took = time.perf_counter() - t0
        if limit is not None and took >= limit:
            note = f" over the {limit:g} s limit"
            raise AssertionError(f"criterion {number} took {took:.2f} s{note}")
        status = "PASS"
    finally:
        took = time.perf_counter() - t0
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {status} {title} ({took:.2f} s){note}")


def test_c01_rank_formulas(capsys):
    with criterion(capsys, 1, "rank formulas n=1..8", limit=5):
        for n in range(1, 9):
            want = {"s": comb(n, 2) + n + 1, "w": comb(n, 2) + n + 1,
                    "c": comb(n, 3) + comb(n, 2) + n + 1}
            for kind, value in want.items():
                assert main(["rank", "--kind", kind, "-n", str(n)]) == 0
                assert int(capsys.readouterr().out) == value
        assert (rank_formula(Kind.STRONG, 5), rank_formula(Kind.CHORD, 5)) == (16, 26)


def test_c02_exhaustive_purity(capsys):
    with criterion(capsys, 2, "exhaustive purity n<=4", limit=10):
        for n in range(1, 5):
            for kind in Kind:
                rep = verify_purity(kind, n, exhaustive=True)
                assert rep.ok, rep.summary()
        # counts against independent enumerations: flip-connected tilings, and
        # the single non-separated pair {13, 24}
        assert len(maximal_collections(Kind.STRONG, 4)) == len(all_tilings(4)) == 8
        assert len(maximal_collections(Kind.WEAK, 4)) == 10
        assert set(maximal_collections(Kind.CHORD, 4)) == {ALL4 - {S("13")}, ALL4 - {S("24")}}


def test_c03_sampled_purity(capsys):
    with criterion(capsys, 3, "randomized purity n=5,6 (100 per kind)", limit=60):
        for n in (5, 6):
            for kind in Kind:
                rep = verify_purity(kind, n, trials=100, seed=1000 + n)
                assert rep.count == 100 and rep.ok, rep.summary()


def test_c04_cubillage_spectrum_is_impure(capsys):
    with criterion(capsys, 4, "V_Q of the 13-cubillage is neither s-pure nor w-pure", limit=5):
        q = cubillage_13()
        vq = q.spectrum
        assert vq == ALL4 - {S("24")}
        r = rim(4)
        assert r == {0, S("1"), S("12"), S("123"), S("1234"), S("234"), S("34"), S("4")}
        assert vq == r | {S(x) for x in ("2", "3", "23", "14", "124", "134", "13")}
        s = r | {S("2"), S("124")}
        assert len(s) == 10
        for kind in (Kind.STRONG, Kind.WEAK):
            assert is_separated_collection(kind, s, 4)
            assert is_maximal_in(kind, s, 4, domain=vq)
            assert rank_formula(kind, 4) == 11 > len(s)


def test_c05_bijection_round_trips(capsys):
    with criterion(capsys, 5, "spectrum after build is the identity", limit=120):
        rng = random.Random(5)
        for n in range(1, 5):
            for c in maximal_collections(Kind.STRONG, n):
                assert tiling_from_s_collection(c, n).spectrum == c
        for n in (5, 6):
            for _ in range(30):
                c = greedy_complete(Kind.STRONG, (), n, rng=rng)
                assert tiling_from_s_collection(c, n).spectrum == c
        for c in maximal_collections(Kind.CHORD, 4):
            assert cubillage_from_c_collection(c, 4).spectrum == c
        for n in (5, 6):
            for _ in range(30):
                c = greedy_complete(Kind.CHORD, (), n, rng=rng)
                assert cubillage_from_c_collection(c, n).spectrum == c
        for w in maximal_collections(Kind.WEAK, 4):
            k = combi_from_w_collection(w, 4)
            assert validate_quasi_combi(k) == [] and k.spectrum == w


def _both4():
    q = cubillage_13()
    return [q, mirror_cubillage(q)]


def test_c06_lattices(capsys):
    with criterion(capsys, 6, "acyclic DAGs, ideal/membrane counts, meet/join", limit=120):
        rng = random.Random(6)
        instances = _both4() + [random_cubillage(n, rng) for n in (5, 5, 6, 6)]
        for q in instances:
            assert q.complex.is_acyclic()
            assert fragment(q).complex.is_acyclic()
        for q in _both4():
            ideals = enumerate_ideals(q)
            mems = {membrane_of_ideal(q, i) for i in ideals}
            oracle = {t.rhombi for t in all_tilings(4) if t.spectrum <= q.spectrum}
            assert len(ideals) == len(mems) == len(oracle) and mems == oracle
            for a in ideals:
                for b in ideals:
                    ma, mb = membrane_of_ideal(q, a), membrane_of_ideal(q, b)
                    assert meet(q, ma, mb) == membrane_of_ideal(q, a & b)
                    assert join(q, ma, mb) == membrane_of_ideal(q, a | b)
            f = fragment(q)
            fideals = list(f.complex.ideals())
            fmems = {i: f.complex.membrane(i) for i in fideals}
            pieces = [geo.Piece(t, tuple(sorted(t))) for t in f.faces]
            covers = geo.count_covers(4, pieces, geo.strict_generators(4))
            assert len(fideals) == len(set(fmems.values())) == covers
            for a in fideals:
                for b in fideals:
                    assert f.complex.meet(fmems[a], fmems[b]) == fmems[a & b]
                    assert f.complex.join(fmems[a], fmems[b]) == fmems[a | b]


def _fillable_pairs(cubillages):
    out = set()
    for q in cubillages:
        ideals = enumerate_ideals(q)
        mem = {i: membrane_of_ideal(q, i) for i in ideals}
        out |= {(mem[a], mem[b]) for a in ideals for b in ideals if a <= b}
    return out


def _check_pair(m, m2, oracle):
    r = fill_between_membranes(m, m2)
    inv, inv2 = inversion_set_fast(m), inversion_set_fast(m2)
    assert r.possible == (inv <= inv2) == ((m.rhombi, m2.rhombi) in oracle)
    if r.possible:
        assert len(r.cubes) == len(inv2) - len(inv)
        lhs = Counter(m.rhombi) + Counter(x for c in r.cubes for x in rear_side(c))
        rhs = Counter(m2.rhombi) + Counter(x for c in r.cubes for x in front_side(c))
        assert lhs == rhs
    else:
        assert r.witness in inv - inv2


def test_c07_filling_between_membranes(capsys):
    with criterion(capsys, 7, "filling exists iff Inv(M) in Inv(M')", limit=120):
        oracle4 = _fillable_pairs(cubillage_from_c_collection(c, 4)
                                  for c in maximal_collections(Kind.CHORD, 4))
        ts = all_tilings(4)
        for m in ts:
            for m2 in ts:
                _check_pair(m, m2, oracle4)
        cs5 = maximal_collections(Kind.CHORD, 5)
        oracle5 = _fillable_pairs(cubillage_from_c_collection(c, 5) for c in cs5)
        ts5 = all_tilings(5)
        rng = random.Random(7)
        for _ in range(400):
            _check_pair(rng.choice(ts5), rng.choice(ts5), oracle5)
        for n in range(3, 7):
            r = fill_between_membranes(standard_tiling(n), antistandard_tiling(n))
            assert len(r.cubes) == comb(n, 3)


def test_c08_wextend_pipeline(capsys):
    with criterion(capsys, 8, "w-collection extends to a maximal c-collection", limit=600):
        for w in maximal_collections(Kind.WEAK, 4):
            e = extend_w_to_c(w, 4)
            assert verify_extension(w, e.cubillage) == []
            assert greedy_complete(Kind.CHORD, e.spectrum, 4) == e.spectrum
        rng = random.Random(8)
        slowest = 0.0
        for n in (5, 6):
            for _ in range(200):
                w = random_weak_walk(n, 60, rng)
                e = extend_w_to_c(w, n, lens_policy=rng.choice(["left", "right"]))
                assert verify_extension(w, e.cubillage) == []
                assert w <= e.spectrum and len(e.spectrum) == rank_formula(Kind.CHORD, n)
                assert greedy_complete(Kind.CHORD, e.spectrum, n) == e.spectrum
                if n == 6:
                    slowest = max(slowest, e.seconds)
        assert slowest < 1.0, f"slowest n=6 run {slowest:.3f} s"


def test_c09_w_membrane_extraction(capsys):
    with criterion(capsys, 9, "w-membrane for each w-collection in V_Q; octahedral law",
                   limit=120):
        for q in _both4():
            f = fragment(q)
            ws = [w for w in maximal_collections(Kind.WEAK, 4, domain=q.spectrum) if len(w) == 11]
            assert ws
            for w in ws:
                assert w_spectrum(w_membrane_for_w_collection(q, w)) == w
            flips = 0
            for m in enumerate_w_membranes(f):
                spec = w_spectrum(m)
                moves = [(fr, "lower") for fr in f.complex.lowerable(m)]
                moves += [(fr, "raise") for fr in f.complex.raisable(m)]
                for fr, d in moves:
                    after = w_spectrum(w_flip(f, m, fr, d))
                    removed, added = flip_spectrum_change(fr, d)
                    assert (spec - after, after - spec) == (removed, added)
                    if fr[1] == "O":
                        (x, i, j, k), _ = fr
                        xj, xik = x | 1 << (j - 1), x | 1 << (i - 1) | 1 << (k - 1)
                        assert {xj, xik} == removed | added
                    flips += 1
            assert flips > 0


def test_c10_escorts_and_normalization(capsys):
    with criterion(capsys, 10, "one combi per escort; fine membranes pair their edges",
                   limit=120):
        for q in _both4():
            f = fragment(q)
            mems = enumerate_w_membranes(f)
            done = set()
            for m in mems:
                if m in done:
                    continue
                e = escort(f, m)
                done |= e
                combis = set()
                for x in e:
                    k = membrane_to_quasi_combi(f, x)
                    assert k.fully_triangulated
                    outs = {normalize_to_combi(k, random.Random(s)) for s in range(4)}
                    assert len(outs) == 1
                    combis |= outs
                assert len(combis) == 1
                (k,) = combis
                assert k.is_combi and k.spectrum == w_spectrum(m)
                fine = fine_w_membrane(f, m)
                assert is_fine(f, fine) and horizontal_edges_paired(fine) == []
