"""Rhombus tilings of the zonogon Z(n,2).

A tiling is stored purely combinatorially as a set of rhombi ``(X, i, j)``
meaning rho(X|ij), the tile with vertices X, Xi, Xj, Xij (i < j, i, j not in X).
Geometry is derived on demand from ``plain_generators``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Literal

from . import geometry as geo
from .subsets import (Collection, Kind, bit, check_ground, co_intervals, fmt,
                      intervals, is_separated_collection, rank_formula)

Rhombus = tuple[int, int, int]


class TilingError(ValueError):
    pass


class FlipError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def rhombus_vertices(r: Rhombus) -> tuple[int, int, int, int]:
    x, i, j = r
    return x, x | bit(i), x | bit(i) | bit(j), x | bit(j)


def rhombus_label(r: Rhombus) -> str:
    return f"rho({fmt(r[0])}|{r[1]}{r[2]})"


@dataclass(frozen=True)
class Tiling:
    n: int
    rhombi: frozenset[Rhombus]

    @property
    def spectrum(self) -> Collection:
        verts = {v for r in self.rhombi for v in rhombus_vertices(r)}
        if not self.rhombi:
            verts = {0, 1} if self.n == 1 else {0}
        return frozenset(verts)

    def rhombus_of(self, i: int, j: int) -> Rhombus:
        for r in self.rhombi:
            if r[1] == i and r[2] == j:
                return r
        raise KeyError((i, j))

    def color_map(self) -> dict[tuple[int, int], Rhombus]:
        return {(r[1], r[2]): r for r in self.rhombi}

    def __len__(self) -> int:
        return len(self.rhombi)


def quadruple_rhombi(coll: Iterable[int], n: int) -> frozenset[Rhombus]:
    members = frozenset(coll)
    out = set()
    for x in members:
        for i, j in combinations(range(1, n + 1), 2):
            bi, bj = bit(i), bit(j)
            if x & (bi | bj):
                continue
            if x | bi in members and x | bj in members and x | bi | bj in members:
                out.add((x, i, j))
    return frozenset(out)


def tiling_from_s_collection(coll: Iterable[int], n: int, validate: bool = True) -> Tiling:
    """The rhombus tiling whose spectrum is the maximal s-collection ``coll``."""
    check_ground(n)
    coll = frozenset(coll)
    if len(coll) != rank_formula(Kind.STRONG, n) or not is_separated_collection(Kind.STRONG, coll, n):
        raise TilingError("input is not a maximal strongly separated collection")
    t = Tiling(n, quadruple_rhombi(coll, n))
    if validate:
        problems = validate_tiling(t)
        if problems:
            raise TilingError("; ".join(map(str, problems)))
    return t


def standard_tiling(n: int) -> Tiling:
    return Tiling(n, quadruple_rhombi(intervals(n), n))


def antistandard_tiling(n: int) -> Tiling:
    return Tiling(n, quadruple_rhombi(co_intervals(n), n))


def rhombus_polygon(r: Rhombus, gens=None, n: int | None = None) -> list[geo.Point]:
    gens = gens or geo.plain_generators(n)
    return [geo.point(v, gens) for v in rhombus_vertices(r)]


def validate_tiling(t: Tiling) -> list[Violation]:
    n = t.n
    out: list[Violation] = []
    seen: dict[tuple[int, int], Rhombus] = {}
    for r in sorted(t.rhombi):
        x, i, j = r
        if not (1 <= i < j <= n) or x & (bit(i) | bit(j)) or x >> n:
            out.append(Violation("malformed rhombus", rhombus_label(r)))
            continue
        if (i, j) in seen:
            out.append(Violation("duplicate color pair", f"{i},{j}: {rhombus_label(seen[(i, j)])}, {rhombus_label(r)}"))
        seen[(i, j)] = r
    for i, j in combinations(range(1, n + 1), 2):
        if (i, j) not in seen:
            out.append(Violation("missing color pair", f"{i},{j}"))
    gens = geo.plain_generators(n)
    rh = sorted(t.rhombi)
    polys = [geo.ccw(rhombus_polygon(r, gens)) for r in rh]
    area = sum(geo.area2(p) for p in polys)
    if area != geo.zonogon_area2(gens):
        out.append(Violation("area mismatch", f"{area} != {geo.zonogon_area2(gens)} (doubled)"))
    for a, b in combinations(range(len(rh)), 2):
        if geo.interiors_overlap(polys[a], polys[b]):
            out.append(Violation("overlap", f"{rhombus_label(rh[a])} and {rhombus_label(rh[b])}"))
    # edge matching: every edge is on the boundary once or shared by two tiles
    uses: dict[tuple[int, int], int] = {}
    for r in rh:
        vs = rhombus_vertices(r)
        for k in range(4):
            e = tuple(sorted((vs[k], vs[(k + 1) % 4])))
            uses[e] = uses.get(e, 0) + 1
    boundary = {tuple(sorted(e)) for e in geo.zonogon_boundary(n)}
    for e, c in sorted(uses.items()):
        want = 1 if e in boundary else 2
        if c != want:
            out.append(Violation("edge mismatch", f"edge {fmt(e[0])}-{fmt(e[1])} used {c} times"))
    if not out and len(t.spectrum) != rank_formula(Kind.STRONG, n):
        out.append(Violation("spectrum size", f"{len(t.spectrum)}"))
    return out


# -- hexagons and flips -----------------------------------------------------

Config = Literal["Y", "L"]   # "L" stands for the turned-Y configuration


@dataclass(frozen=True, order=True)
class Hexagon:
    base: int
    i: int
    j: int
    k: int
    config: str

    def y_rhombi(self) -> tuple[Rhombus, Rhombus, Rhombus]:
        x, i, j, k = self.base, self.i, self.j, self.k
        return (x, i, j), (x, j, k), (x | bit(j), i, k)

    def l_rhombi(self) -> tuple[Rhombus, Rhombus, Rhombus]:
        x, i, j, k = self.base, self.i, self.j, self.k
        return (x, i, k), (x | bit(i), j, k), (x | bit(k), i, j)

    def rhombi(self) -> tuple[Rhombus, Rhombus, Rhombus]:
        return self.y_rhombi() if self.config == "Y" else self.l_rhombi()

    def __str__(self) -> str:
        return f"H({fmt(self.base)}|{self.i}{self.j}{self.k}){self.config}"


def find_hexagons(t: Tiling | Iterable[Rhombus], config: str = "any") -> list[Hexagon]:
    """All hexagons spanned by three rhombi of the tiling, sorted by (X, i, j, k)."""
    rhombi = t.rhombi if isinstance(t, Tiling) else frozenset(t)
    out = []
    for x, i, j in rhombi:
        for k in range(j + 1, 64):
            if (x, j, k) in rhombi and (x | bit(j), i, k) in rhombi and config in ("any", "Y"):
                out.append(Hexagon(x, i, j, k, "Y"))
        if config in ("any", "L"):
            # (x, i, k) is the bottom rhombus of a turned-Y hexagon
            for jj in range(i + 1, j):
                if (x | bit(i), jj, j) in rhombi and (x | bit(j), i, jj) in rhombi:
                    out.append(Hexagon(x, i, jj, j, "L"))
    return sorted(out)


def strong_flip(t: Tiling, h: Hexagon) -> Tiling:
    """Raising flip on a Y hexagon, lowering flip on a turned-Y hexagon."""
    old = h.rhombi()
    if not all(r in t.rhombi for r in old):
        raise FlipError(f"hexagon {h} is not present")
    new = h.l_rhombi() if h.config == "Y" else h.y_rhombi()
    return Tiling(t.n, (t.rhombi - set(old)) | set(new))


def flipped(h: Hexagon) -> Hexagon:
    return Hexagon(h.base, h.i, h.j, h.k, "L" if h.config == "Y" else "Y")


# -- dual paths and inversions ---------------------------------------------

def dual_path(t: Tiling, j: int) -> list[tuple[Fraction, Fraction]]:
    """Polyline D_j through midpoints of j-edges and centres of {i, j}-rhombi.

    Runs from the j-edge on the left boundary to the j-edge on the right
    boundary.  Coordinates use ``plain_generators``.
    """
    n = t.n
    gens = geo.plain_generators(n)
    bj = bit(j)
    # j-edges are identified by their bottom vertex; each j-rhombus holds two
    by_edge: dict[int, list[Rhombus]] = {}
    for r in t.rhombi:
        x, a, b = r
        if j not in (a, b):
            continue
        other = bit(b if a == j else a)
        for bottom in (x, x | other):
            by_edge.setdefault(bottom, []).append(r)

    def mid(bottom: int):
        px, py = geo.point(bottom, gens)
        gx, gy = gens[j - 1]
        return Fraction(2 * px + gx, 2), Fraction(2 * py + gy, 2)

    def centre(r: Rhombus):
        x, a, b = r
        px, py = geo.point(x, gens)
        ax, ay = gens[a - 1]
        bx, by = gens[b - 1]
        return Fraction(2 * px + ax + bx, 2), Fraction(2 * py + ay + by, 2)

    start = (bit(j) - 1)                      # [j-1]
    stop = geo.full(n) & ~geo.full(j)         # {j+1..n}
    path = [mid(start)]
    bottom = start
    seen: set[Rhombus] = set()
    while bottom != stop:
        nxt = [r for r in by_edge.get(bottom, ()) if r not in seen]
        if len(nxt) != 1:
            raise TilingError(f"dual path {j} is broken at edge from {fmt(bottom)}")
        r = nxt[0]
        seen.add(r)
        x, a, b = r
        other = bit(b if a == j else a)
        bottom = x | other if bottom == x else x
        path += [centre(r), mid(bottom)]
    if len(seen) != n - 1:
        raise TilingError(f"dual path {j} visits {len(seen)} rhombi, expected {n - 1}")
    del bj
    return path


def below_polyline(p, path) -> bool:
    """True iff p lies below the curve (odd number of crossings of the upward ray)."""
    px, py = p
    hits = 0
    for (x1, y1), (x2, y2) in zip(path, path[1:]):
        if (x1 <= px < x2) or (x2 <= px < x1):
            y = y1 + (y2 - y1) * (px - x1) / (x2 - x1)
            if y > py:
                hits += 1
    return hits % 2 == 1


def inversion_set(t: Tiling) -> frozenset[tuple[int, int, int]]:
    """Triples i<j<k whose ik-rhombus lies below the dual path D_j (traced)."""
    n = t.n
    gens = geo.plain_generators(n)
    cmap = t.color_map()
    paths = {j: dual_path(t, j) for j in range(2, n)}
    out = set()
    for (i, k), (x, _, _) in cmap.items():
        px, py = geo.point(x, gens)
        c = (Fraction(2 * px + gens[i - 1][0] + gens[k - 1][0], 2),
             Fraction(2 * py + gens[i - 1][1] + gens[k - 1][1], 2))
        for j in range(i + 1, k):
            if below_polyline(c, paths[j]):
                out.add((i, j, k))
    return frozenset(out)


def inversion_set_fast(t: Tiling) -> frozenset[tuple[int, int, int]]:
    """Same set via the bitmask rule: ijk is an inversion iff j is not in X for rho(X|ik)."""
    out = set()
    for x, i, k in t.rhombi:
        for j in range(i + 1, k):
            if not x & bit(j):
                out.add((i, j, k))
    return frozenset(out)


def elementary_triples(t: Tiling) -> dict[tuple[int, int, int], Hexagon]:
    return {(h.i, h.j, h.k): h for h in find_hexagons(t)}


def all_tilings(n: int) -> list[Tiling]:
    """Every rhombus tiling of Z(n,2), by flip search from the standard tiling."""
    start = standard_tiling(n)
    seen = {start.rhombi}
    stack = [start]
    while stack:
        t = stack.pop()
        for h in find_hexagons(t):
            u = strong_flip(t, h)
            if u.rhombi not in seen:
                seen.add(u.rhombi)
                stack.append(u)
    return sorted((Tiling(n, r) for r in seen), key=lambda t: sorted(t.rhombi))


def random_tiling(n: int, rng, steps: int = 200) -> Tiling:
    t = standard_tiling(n)
    for _ in range(steps):
        hs = find_hexagons(t)
        if not hs:
            break
        t = strong_flip(t, rng.choice(hs))
    return t
