"""Combined tilings (combies) and quasi-combies on Z(n,2).

Tiles are stored combinatorially:

* ``Tile("N", A, (i, j))``: the nabla-tile with bottom A and vertices A, Ai, Aj.
* ``Tile("D", A, (i, j))``: the delta-tile with top A and vertices A, A-i, A-j.
* ``Tile("H", X, up, low)``: a horizontal tile (lens, semi-lens or triangle) with
  lower root X.  ``up`` lists the upper-chain colours i_0 < .. < i_p (vertices
  X i_t) and ``low`` the lower-chain colours in ascending order (vertices Y - j
  with Y = X i_0 i_p).  Both start with a = i_0 and end with b = i_p.

Geometry always uses the strictly convex generators, under which every
horizontal tile is a convex polygon.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import geometry as geo
from .subsets import (Collection, Kind, bit, check_ground, fmt, intervals,
                      is_separated_collection, rank_formula, size)


class CombiError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Tile:
    kind: str
    root: int
    up: tuple[int, ...]
    low: tuple[int, ...] = ()

    # -- classification
    @property
    def vertical(self) -> bool:
        return self.kind in ("N", "D")

    @property
    def horizontal(self) -> bool:
        return self.kind == "H"

    @property
    def lower_root(self) -> int:
        return self.root

    @property
    def upper_root(self) -> int:
        return self.root | bit(self.up[0]) | bit(self.up[-1])

    @property
    def shape(self) -> str:
        if self.kind != "H":
            return "delta" if self.kind == "D" else "nabla"
        p, q = len(self.up) - 1, len(self.low) - 1
        if p >= 2 and q >= 2:
            return "lens"
        if p == 1 and q >= 2:
            return "lower"
        if q == 1 and p >= 2:
            return "upper"
        return "degenerate"

    @property
    def is_semilens(self) -> bool:
        return self.shape in ("lower", "upper")

    @property
    def is_triangle(self) -> bool:
        return len(self.vertices()) == 3

    @property
    def level(self) -> int:
        return size(self.root) + 1 if self.kind == "H" else -1

    # -- vertices
    def upper_chain(self) -> list[int]:
        return [self.root | bit(i) for i in self.up]

    def lower_chain(self) -> list[int]:
        y = self.upper_root
        return [y & ~bit(j) for j in reversed(self.low)]

    def longest_edge(self) -> tuple[int, int]:
        a, b = self.up[0], self.up[-1]
        return self.root | bit(a), self.root | bit(b)

    def cycle(self) -> tuple[int, ...]:
        """Boundary vertices in cyclic order."""
        a = self.root
        if self.kind == "N":
            i, j = self.up
            return a, a | bit(i), a | bit(j)
        if self.kind == "D":
            i, j = self.up
            return a, a & ~bit(i), a & ~bit(j)
        lower = self.lower_chain()
        upper = self.upper_chain()
        return tuple(lower + upper[-2:0:-1])

    def vertices(self) -> frozenset[int]:
        return frozenset(self.cycle())

    def edges(self) -> list[tuple[int, int]]:
        cyc = self.cycle()
        return [_edge(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))]

    def __str__(self) -> str:
        if self.kind == "N":
            return f"N({fmt(self.root)}|{self.up[0]}{self.up[1]})"
        if self.kind == "D":
            return f"D({fmt(self.root)}|{self.up[1]}{self.up[0]})"
        return (f"H({fmt(self.root)}|{''.join(map(str, self.up))}/"
                f"{''.join(map(str, self.low))})")


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def nabla(a: int, i: int, j: int) -> Tile:
    return Tile("N", a, (min(i, j), max(i, j)))


def delta(a: int, i: int, j: int) -> Tile:
    return Tile("D", a, (min(i, j), max(i, j)))


def htile(x: int, up: Iterable[int], low: Iterable[int]) -> Tile:
    return Tile("H", x, tuple(sorted(up)), tuple(sorted(low)))


def upper_triangle(x: int, i: int, j: int, k: int) -> Tile:
    """The triangle {Xi, Xj, Xk}."""
    return htile(x, (i, j, k), (i, k))


def lower_triangle(y: int, i: int, j: int, k: int) -> Tile:
    """The triangle {Y-k, Y-j, Y-i}."""
    return htile(y & ~bit(i) & ~bit(k), (i, k), (i, j, k))


def triangle_tile(verts: Iterable[int]) -> Tile:
    """Classify a three-vertex face by its vertex sets."""
    a, b, c = sorted(verts, key=lambda v: (size(v), v))
    sa, sb, sc = size(a), size(b), size(c)
    if sa == sb == sc:
        inter, union = a & b & c, a | b | c
        i, j, k = sorted(_elems(union & ~inter))
        if size(union) == sa + 1:          # {Y-k, Y-j, Y-i}
            return lower_triangle(union, i, j, k)
        if size(inter) == sa - 1:          # {Xi, Xj, Xk}
            return upper_triangle(inter, i, j, k)
        raise CombiError(f"not a horizontal triangle: {list(map(fmt, (a, b, c)))}")
    if sa + 1 == sb == sc:
        i, j = sorted(_elems((b | c) & ~a))
        return nabla(a, i, j)
    if sa == sb == sc - 1:
        i, j = sorted(_elems(c & ~(a & b)))
        return delta(c, i, j)
    raise CombiError(f"not a combi triangle: {list(map(fmt, (a, b, c)))}")


def _elems(x: int) -> set[int]:
    out, i = set(), 1
    while x:
        if x & 1:
            out.add(i)
        x >>= 1
        i += 1
    return out


# -- quasi-combies ---------------------------------------------------------

@dataclass(frozen=True)
class QuasiCombi:
    n: int
    tiles: frozenset[Tile]

    @property
    def spectrum(self) -> Collection:
        return frozenset(v for t in self.tiles for v in t.cycle())

    def horizontal(self) -> list[Tile]:
        return sorted(t for t in self.tiles if t.horizontal)

    def semilenses(self) -> list[Tile]:
        return sorted(t for t in self.tiles if t.is_semilens)

    def lenses(self) -> list[Tile]:
        return sorted(t for t in self.tiles if t.shape == "lens")

    @property
    def is_combi(self) -> bool:
        return not self.semilenses()

    @property
    def fully_triangulated(self) -> bool:
        return all(t.is_triangle for t in self.tiles)

    def edge_map(self) -> dict[tuple[int, int], list[Tile]]:
        out: dict[tuple[int, int], list[Tile]] = {}
        for t in self.tiles:
            for e in t.edges():
                out.setdefault(e, []).append(t)
        return out

    def replace(self, old: Iterable[Tile], new: Iterable[Tile]) -> "QuasiCombi":
        old = set(old)
        missing = old - self.tiles
        if missing:
            raise CombiError(f"tiles not present: {', '.join(map(str, sorted(missing)))}")
        return QuasiCombi(self.n, (self.tiles - old) | frozenset(new))

    def __len__(self) -> int:
        return len(self.tiles)


def tile_polygon(t: Tile, n: int) -> list[geo.Point]:
    gens = geo.strict_generators(n)
    return [geo.point(v, gens) for v in t.cycle()]


def tile_problems(t: Tile, n: int) -> list[str]:
    out = []
    full = geo.full(n)
    if t.root & ~full:
        return [f"{t}: root outside [n]"]
    if t.kind in ("N", "D"):
        i, j = t.up
        if not (1 <= i < j <= n):
            return [f"{t}: bad colours"]
        inside = t.root & (bit(i) | bit(j))
        if t.kind == "N" and inside:
            out.append(f"{t}: colour in bottom vertex")
        if t.kind == "D" and inside != bit(i) | bit(j):
            out.append(f"{t}: colour missing from top vertex")
        return out
    if t.kind != "H":
        return [f"{t}: unknown kind"]
    up, low = t.up, t.low
    if len(up) < 2 or len(low) < 2:
        return [f"{t}: chain too short"]
    if up[0] != low[0] or up[-1] != low[-1]:
        out.append(f"{t}: chains do not share endpoints")
    if len(set(up)) != len(up) or len(set(low)) != len(low):
        out.append(f"{t}: repeated colour")
    a, b = up[0], up[-1]
    if not (1 <= a < b <= n) or t.root & (bit(a) | bit(b)):
        out.append(f"{t}: bad end colours")
    if any(t.root & bit(i) for i in up[1:-1]):
        out.append(f"{t}: upper colour inside the lower root")
    if any(not t.root & bit(j) for j in low[1:-1]):
        out.append(f"{t}: lower colour outside the lower root")
    if t.shape == "degenerate":
        out.append(f"{t}: both chains have a single edge")
    if not out:
        poly = tile_polygon(t, n)
        s = geo.area2(poly)
        if s == 0 or any(geo.orient(poly[k], poly[(k + 1) % len(poly)], poly[(k + 2) % len(poly)])
                         * s <= 0 for k in range(len(poly))):
            out.append(f"{t}: not a strictly convex polygon")
    return out


def validate_quasi_combi(k: QuasiCombi) -> list[str]:
    """Structural problems of ``k``; an empty list means a valid quasi-combi."""
    n = k.n
    out = []
    for t in sorted(k.tiles):
        out += tile_problems(t, n)
    if out:
        return out
    gens = geo.strict_generators(n)
    tiles = sorted(k.tiles)
    out += [f"{msg}" for msg in geo.covers_exactly(n, [tile_polygon(t, n) for t in tiles], gens)]
    boundary = {_edge(u, v) for u, v in geo.zonogon_boundary(n)}
    for e, ts in sorted(k.edge_map().items()):
        want = 1 if e in boundary else 2
        if len(ts) != want:
            out.append(f"edge {fmt(e[0])}-{fmt(e[1])} used by {len(ts)} tiles")
    missing = boundary - set(k.edge_map())
    for e in sorted(missing):
        out.append(f"boundary edge {fmt(e[0])}-{fmt(e[1])} not covered")
    return out


# -- the four operations ---------------------------------------------------

def op_split(k: QuasiCombi, t: Tile, u: int, v: int) -> QuasiCombi:
    """(S): cut a horizontal tile along the chord between chain vertices u, v."""
    if t not in k.tiles or not t.horizontal:
        raise CombiError(f"{t} is not a horizontal tile of the quasi-combi")
    up, low = t.upper_chain(), t.lower_chain()
    if u in up and v in up:
        s, e = sorted((up.index(u), up.index(v)))
        if e - s < 2 or (s == 0 and e == len(up) - 1 and len(t.low) == 2):
            raise CombiError("split vertices are adjacent")
        piece = htile(t.root, t.up[s:e + 1], (t.up[s], t.up[e]))
        rest = htile(t.root, t.up[:s + 1] + t.up[e:], t.low)
    elif u in low and v in low:
        # lower chain runs left to right with decreasing colour
        cols = list(reversed(t.low))
        s, e = sorted((low.index(u), low.index(v)))
        if e - s < 2 or (s == 0 and e == len(low) - 1 and len(t.up) == 2):
            raise CombiError("split vertices are adjacent")
        seg = cols[s:e + 1]
        y = t.upper_root
        c, d = min(seg), max(seg)
        piece = htile(y & ~bit(c) & ~bit(d), (c, d), seg)
        rest = htile(t.root, t.up, cols[:s + 1] + cols[e:])
    else:
        raise CombiError("split vertices must lie on one chain of the tile")
    return k.replace([t], [piece, rest])


def _merged(t1: Tile, t2: Tile) -> Tile | None:
    """Union of t1 and t2 if t1 is a semi-lens whose longest edge lies on t2."""
    if not (t1.is_semilens and t2.horizontal):
        return None
    e = _edge(*t1.longest_edge())
    if e not in t2.edges():
        return None
    a, b = t1.up[0], t1.up[-1]
    if t1.shape == "lower":
        if t2.upper_root != t1.upper_root or a not in t2.low or b not in t2.low:
            return None
        return htile(t2.root, t2.up, set(t2.low) | set(t1.low))
    if t2.root != t1.root or a not in t2.up or b not in t2.up:
        return None
    return htile(t1.root, set(t2.up) | set(t1.up), t2.low)


def op_merge(k: QuasiCombi, t1: Tile, t2: Tile) -> QuasiCombi:
    """(M): merge two horizontal tiles across the longest edge of one of them."""
    m = _merged(t1, t2) or _merged(t2, t1)
    if m is None:
        raise CombiError(f"{t1} and {t2} cannot be merged")
    return k.replace([t1, t2], [m])


def _fan_of(semi: Tile) -> tuple[Tile, list[Tile]]:
    """The vertical tile paired with a semi-lens in (E), and the fan replacing both."""
    a, b = semi.up[0], semi.up[-1]
    if semi.shape == "lower":
        y = semi.upper_root
        cols = semi.low
        return delta(y, a, b), [delta(y, cols[t], cols[t + 1]) for t in range(len(cols) - 1)]
    cols = semi.up
    return nabla(semi.root, a, b), [nabla(semi.root, cols[t], cols[t + 1]) for t in range(len(cols) - 1)]


def op_eliminate(k: QuasiCombi, semi: Tile, vtile: Tile | None = None) -> QuasiCombi:
    """(E): replace a semi-lens and the vertical tile on its longest edge by a fan."""
    if not semi.is_semilens:
        raise CombiError(f"{semi} is not a semi-lens")
    partner, fan = _fan_of(semi)
    if vtile is not None and vtile != partner:
        raise CombiError(f"{vtile} does not sit on the longest edge of {semi}")
    if partner not in k.tiles:
        raise CombiError(f"{partner} is not present")
    return k.replace([semi, partner], fan)


def op_create(k: QuasiCombi, fan: Sequence[Tile]) -> QuasiCombi:
    """(C): replace a fan of >= 2 vertical tiles by a semi-lens plus one vertical tile."""
    fan = sorted(fan)
    if len(fan) < 2 or len({(t.kind, t.root) for t in fan}) != 1 or not fan[0].vertical:
        raise CombiError("a fan needs >= 2 vertical tiles of one kind with a common apex")
    kind, apex = fan[0].kind, fan[0].root
    cols = sorted({c for t in fan for c in t.up})
    pairs = sorted(t.up for t in fan)
    if pairs != [(cols[t], cols[t + 1]) for t in range(len(cols) - 1)]:
        raise CombiError("fan tiles are not consecutive")
    a, b = cols[0], cols[-1]
    if kind == "D":
        semi = htile(apex & ~bit(a) & ~bit(b), (a, b), cols)
        return k.replace(fan, [semi, delta(apex, a, b)])
    semi = htile(apex, cols, (a, b))
    return k.replace(fan, [semi, nabla(apex, a, b)])


def reductions(k: QuasiCombi) -> list[tuple[str, tuple[Tile, ...]]]:
    """Every applicable (M) or (E) step, as (op, tiles)."""
    emap = k.edge_map()
    out = []
    for s in k.semilenses():
        e = _edge(*s.longest_edge())
        for other in emap.get(e, ()):
            if other == s:
                continue
            if other.horizontal:
                out.append(("M", (s, other)))
            else:
                partner, _ = _fan_of(s)
                if other == partner:
                    out.append(("E", (s, other)))
    return out


def normalize_to_combi(k: QuasiCombi, rng: random.Random | None = None) -> QuasiCombi:
    """Apply (M) and (E) until no semi-lens is left.

    Steps are chosen in sorted order, or at random when ``rng`` is given.
    """
    while True:
        steps = reductions(k)
        if not steps:
            if k.semilenses():
                raise CombiError(f"stuck with semi-lenses {', '.join(map(str, k.semilenses()))}")
            return k
        op, ts = rng.choice(steps) if rng else steps[0]
        k = op_merge(k, *ts) if op == "M" else op_eliminate(k, *ts)


def _fan_triangles(t: Tile, policy: str) -> list[Tile]:
    """Triangulate a semi-lens by a fan from its left or right end."""
    if t.shape == "upper":
        c = t.up
        if policy == "left":
            return [upper_triangle(t.root, c[0], c[s], c[s + 1]) for s in range(1, len(c) - 1)]
        return [upper_triangle(t.root, c[s - 1], c[s], c[-1]) for s in range(1, len(c) - 1)]
    c = t.low
    y = t.upper_root
    # the left end is Y - c[-1], the right end Y - c[0]
    if policy == "left":
        return [lower_triangle(y, c[s - 1], c[s], c[-1]) for s in range(1, len(c) - 1)]
    return [lower_triangle(y, c[0], c[s], c[s + 1]) for s in range(1, len(c) - 1)]


def triangulate(k: QuasiCombi, policy: str = "left") -> QuasiCombi:
    """Fully triangulate: lenses are cut along (l, r), semi-lenses fanned."""
    if policy not in ("left", "right"):
        raise CombiError(f"unknown triangulation policy {policy!r}")
    tiles = set()
    for t in k.tiles:
        if not t.horizontal or t.is_triangle:
            tiles.add(t)
            continue
        pieces = [t]
        if t.shape == "lens":
            a, b = t.up[0], t.up[-1]
            pieces = [htile(t.root, t.up, (a, b)), htile(t.root, (a, b), t.low)]
        for pc in pieces:
            tiles |= set([pc] if pc.is_triangle else _fan_triangles(pc, policy))
    return QuasiCombi(k.n, frozenset(tiles))


# -- construction from a maximal w-collection -----------------------------

def candidate_triangles(w: Collection, n: int) -> list[Tile]:
    """Triangles of the four combi types with all vertices in ``w``."""
    out = []
    for a in w:
        up = [i for i in range(1, n + 1) if not a & bit(i) and a | bit(i) in w]
        down = [i for i in range(1, n + 1) if a & bit(i) and a & ~bit(i) in w]
        out += [nabla(a, i, j) for i, j in combinations(up, 2)]
        out += [delta(a, i, j) for i, j in combinations(down, 2)]
    # horizontal triangles: their roots need not belong to w
    roots = {v & ~bit(i) for v in w for i in range(1, n + 1) if v & bit(i)}
    tops = {v | bit(i) for v in w for i in range(1, n + 1) if not v & bit(i)}
    for x in roots:
        up = [i for i in range(1, n + 1) if not x & bit(i) and x | bit(i) in w]
        out += [upper_triangle(x, i, j, k) for i, j, k in combinations(up, 3)]
    for y in tops:
        down = [i for i in range(1, n + 1) if y & bit(i) and y & ~bit(i) in w]
        out += [lower_triangle(y, i, j, k) for i, j, k in combinations(down, 3)]
    return sorted(set(out))


def _empty(t: Tile, pts: dict[int, geo.Point], n: int) -> bool:
    poly = geo.ccw(tile_polygon(t, n))
    verts = t.vertices()
    return not any(v not in verts and geo.point_in_convex(p, poly) for v, p in pts.items())


def triangulation_from_w_collection(w: Iterable[int], n: int) -> QuasiCombi:
    """Some fully triangulated quasi-combi with spectrum ``w`` (exact cover search)."""
    check_ground(n)
    w = frozenset(w)
    if len(w) != rank_formula(Kind.WEAK, n) or not is_separated_collection(Kind.WEAK, w, n):
        raise CombiError("input is not a maximal weakly separated collection")
    gens = geo.strict_generators(n)
    pts = {v: geo.point(v, gens) for v in w}
    cands = [t for t in candidate_triangles(w, n) if _empty(t, pts, n)]
    search = geo.CoverSearch(n, [geo.Piece(t, t.cycle()) for t in cands], gens)
    sol = search.first()
    if sol is None:
        raise CombiError("no triangulation found (internal error)")
    k = QuasiCombi(n, frozenset(sol))
    if k.spectrum != w:
        raise CombiError("triangulation misses a vertex (internal error)")
    return k


def combi_from_w_collection(w: Iterable[int], n: int, validate: bool = True) -> QuasiCombi:
    """The unique combi whose spectrum is the maximal w-collection ``w``."""
    k = normalize_to_combi(triangulation_from_w_collection(w, n))
    if validate:
        problems = validate_quasi_combi(k)
        if problems:
            raise CombiError("; ".join(problems))
    return k


def combi_from_tiling(rhombi: Iterable[tuple[int, int, int]], n: int) -> QuasiCombi:
    """Cut each rhombus rho(X|ij) along its horizontal diagonal."""
    tiles = set()
    for x, i, j in rhombi:
        tiles.add(nabla(x, i, j))
        tiles.add(delta(x | bit(i) | bit(j), i, j))
    return QuasiCombi(n, frozenset(tiles))


def standard_combi(n: int) -> QuasiCombi:
    return combi_from_w_collection(intervals(n), n)


def weak_flip_witnesses(x: int, i: int, j: int, k: int) -> list[int]:
    return [x | bit(i), x | bit(k), x | bit(i) | bit(j), x | bit(j) | bit(k)]


def weak_flip(kc: QuasiCombi, x: int, i: int, j: int, k: int, direction: str = "raise") -> QuasiCombi:
    """Raising replaces Xj by Xik in the spectrum, lowering does the converse."""
    if not i < j < k or x & (bit(i) | bit(j) | bit(k)):
        raise CombiError("need i < j < k outside X")
    spec = kc.spectrum
    xj, xik = x | bit(j), x | bit(i) | bit(k)
    old, new = (xj, xik) if direction == "raise" else (xik, xj)
    if direction not in ("raise", "lower"):
        raise CombiError(f"unknown direction {direction!r}")
    if old not in spec or not all(v in spec for v in weak_flip_witnesses(x, i, j, k)):
        raise CombiError(f"flip {direction} at {fmt(x)}|{i}{j}{k} lacks its witnesses")
    return combi_from_w_collection((spec - {old}) | {new}, kc.n)
