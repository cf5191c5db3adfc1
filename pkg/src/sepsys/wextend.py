"""Extension of a maximal w-collection to a maximal c-collection.

The fully triangulated quasi-combi of W is embedded as a w-membrane in the
empty zonotope.  Phase 1 grows fragments in front of it, one local move at a
time, until the membrane has no horizontal triangles; whole cubes then fill
the rest of the front region.  Phase 2 is Phase 1 run on the complemented
instance (X -> [n] - X), which swaps front and rear.  The fragments are
finally assembled into cubes and the result is checked.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .combi import combi_from_w_collection, triangulate
from .cubillage import Cube, Cubillage, validate_cubillage
from .fragmentation import (Fragment, Tri, WMembrane, fragment_label, fragment_sides,
                            is_horizontal, triangle_kind, tri)
from .subsets import (Kind, bit, check_ground, complement, fmt, full,
                      is_maximal_in, is_separated_collection, rank_formula, size)
from .tiling import Tiling, find_hexagons, strong_flip


class ExtensionError(RuntimeError):
    pass


@dataclass
class PhaseLog:
    steps: list[tuple[str, int, int]] = field(default_factory=list)   # (case, p, horizontal triangles after)
    cubes_filled: int = 0

    @property
    def counts(self) -> Counter:
        return Counter(s[0] for s in self.steps)


@dataclass
class Extension:
    n: int
    w: frozenset[int]
    cubillage: Cubillage
    front: list[Fragment]
    rear: list[Fragment]
    logs: tuple[PhaseLog, PhaseLog]
    seconds: float

    @property
    def spectrum(self) -> frozenset[int]:
        return self.cubillage.spectrum


def _horizontal(m: set[Tri]) -> list[Tri]:
    return [t for t in m if is_horizontal(t)]


def _lower_boundary(t: Tri) -> list[frozenset[int]]:
    """Edges of the lower boundary of a horizontal triangle."""
    i, j, k = _colors(t)
    if triangle_kind(t) == "upper":
        x = t_inter(t)
        return [frozenset({x | bit(i), x | bit(k)})]
    y = t_union(t)
    return [frozenset({y & ~bit(k), y & ~bit(j)}), frozenset({y & ~bit(j), y & ~bit(i)})]


def t_inter(t: Tri) -> int:
    a, b, c = t
    return a & b & c


def t_union(t: Tri) -> int:
    a, b, c = t
    return a | b | c


def _colors(t: Tri) -> list[int]:
    diff = t_union(t) & ~t_inter(t)
    return [i for i in range(1, diff.bit_length() + 1) if diff & bit(i)]


class _Phase:
    """Phase 1 on one instance: fragments are added in front of the membrane."""

    def __init__(self, n: int, membrane: Iterable[Tri]):
        self.n = n
        self.m: set[Tri] = set(membrane)
        self.frags: list[Fragment] = []
        self.log = PhaseLog()

    def lower(self, frag: Fragment) -> None:
        front, rear = fragment_sides(frag)
        if not rear <= self.m:
            missing = ", ".join(sorted(map(_tl, rear - self.m)))
            raise ExtensionError(f"rear of {fragment_label(frag)} not on the membrane: {missing}")
        self.m -= rear
        self.m |= front
        self.frags.append(frag)

    def pick(self, hs: list[Tri]) -> Tri:
        h = min(size(next(iter(t))) for t in hs)
        level = [t for t in hs if size(next(iter(t))) == h]
        for t in sorted(level, key=lambda t: sorted(t)):
            if not any(s != t and e <= s for e in _lower_boundary(t) for s in level):
                return t
        raise ExtensionError(f"no admissible horizontal triangle at level {h}")

    def run(self) -> None:
        while True:
            hs = _horizontal(self.m)
            if not hs:
                break
            lam = self.pick(hs)
            if triangle_kind(lam) == "upper":
                x = t_inter(lam)
                i, j, k = _colors(lam)
                self.lower(((x, i, j, k), "N"))
                self.log.steps.append(("1", 0, len(_horizontal(self.m))))
            else:
                self.case2(lam)
        self.fill_cubes()

    def case2(self, lam: Tri) -> None:
        y = t_union(lam)
        i, j, k = _colors(lam)
        a = y & ~bit(j)
        chain = [k]
        while chain[-1] != i:
            cur = chain[-1]
            nxt = [c for c in range(i, cur) if a & bit(c) and tri(a, a & ~bit(cur), a & ~bit(c)) in self.m]
            if len(nxt) != 1:
                raise ExtensionError(f"fan at {fmt(a)} is not a chain of delta-tiles")
            chain.append(nxt[0])
        p = len(chain) - 1
        # apex fan: clip ears so that every new triangle uses the vertex of least value
        anchor = max(chain)
        while len(chain) > 2:
            s = chain.index(anchor)
            mid = s + 1 if s + 2 < len(chain) else (s - 1 if s >= 2 else s)
            c1, c2, c3 = sorted((chain[mid - 1], chain[mid], chain[mid + 1]))
            self.lower(((a & ~bit(c1) & ~bit(c2) & ~bit(c3), c1, c2, c3), "D"))
            del chain[mid]
        xt = y & ~bit(i) & ~bit(j) & ~bit(k)
        self.lower(((xt, i, j, k), "O"))
        self.log.steps.append(("2a" if p == 1 else "2b", p, len(_horizontal(self.m))))

    def fill_cubes(self) -> None:
        rhombi = set()
        for t in self.m:
            if triangle_kind(t) == "nabla":
                x = min(t, key=size)
                i, j = _colors(t)
                rhombi.add((x, i, j))
        tiling = Tiling(self.n, frozenset(rhombi))
        if len(rhombi) * 2 != len(self.m):
            raise ExtensionError("membrane without horizontal triangles is not a rhombus tiling")
        while True:
            hs = find_hexagons(tiling, "L")
            if not hs:
                break
            h = hs[0]
            for kind in ("D", "O", "N"):
                self.lower(((h.base, h.i, h.j, h.k), kind))
            tiling = strong_flip(tiling, h)
            self.log.cubes_filled += 1


def _tl(t: Tri) -> str:
    return "{" + ",".join(fmt(v) for v in sorted(t, key=lambda v: (size(v), v))) + "}"


def _complement_tri(t: Tri, n: int) -> Tri:
    return frozenset(complement(v, n) for v in t)


def _complement_frag(frag: Fragment, n: int) -> Fragment:
    (x, i, j, k), kind = frag
    y = full(n) & ~x & ~bit(i) & ~bit(j) & ~bit(k)
    return (y, i, j, k), {"N": "D", "D": "N", "O": "O"}[kind]


def initial_membrane(w: Iterable[int], n: int, lens_policy: str = "left") -> WMembrane:
    k = triangulate(combi_from_w_collection(w, n, validate=False), lens_policy)
    return frozenset(frozenset(t.cycle()) for t in k.tiles)


def assemble_cubes(fragments: Iterable[Fragment], n: int) -> Cubillage:
    groups: dict[Cube, set[str]] = {}
    for cube, kind in fragments:
        kinds = groups.setdefault(cube, set())
        if kind in kinds:
            raise ExtensionError(f"fragment {fragment_label((cube, kind))} produced twice")
        kinds.add(kind)
    broken = {c: ks for c, ks in groups.items() if ks != {"N", "O", "D"}}
    if broken:
        dump = "; ".join(f"{fmt(c[0])}|{c[1]}{c[2]}{c[3]} has {''.join(sorted(ks))}"
                         for c, ks in sorted(broken.items()))
        raise ExtensionError(f"incomplete cubes: {dump}")
    return Cubillage(n, frozenset(groups))


def extend_w_to_c(w: Iterable[int], n: int, lens_policy: str = "left") -> Extension:
    """A cubillage whose fragmentation holds the quasi-combi of W as a w-membrane."""
    t0 = time.perf_counter()
    check_ground(n)
    w = frozenset(w)
    if len(w) != rank_formula(Kind.WEAK, n) or not is_separated_collection(Kind.WEAK, w, n):
        raise ExtensionError("input is not a maximal weakly separated collection")
    k = initial_membrane(w, n, lens_policy)
    front = _Phase(n, k)
    front.run()
    rear = _Phase(n, (_complement_tri(t, n) for t in k))
    rear.run()
    back = [_complement_frag(f, n) for f in rear.frags]
    q = assemble_cubes(front.frags + back, n)
    return Extension(n, w, q, front.frags, back, (front.log, rear.log),
                     time.perf_counter() - t0)


def verify_extension(w: Iterable[int], q: Cubillage) -> list[str]:
    """Problems with q as an extension of w; empty means verified."""
    n = q.n
    w = frozenset(w)
    out = list(validate_cubillage(q))
    spec = q.spectrum
    if not w <= spec:
        out.append(f"spectrum misses {', '.join(fmt(v) for v in sorted(w - spec))}")
    if len(spec) != rank_formula(Kind.CHORD, n):
        out.append(f"spectrum has {len(spec)} members, expected {rank_formula(Kind.CHORD, n)}")
    if not is_separated_collection(Kind.CHORD, spec, n):
        out.append("spectrum is not chord separated")
    elif not is_maximal_in(Kind.CHORD, spec, n):
        out.append("spectrum is not a maximal chord separated collection")
    return out
