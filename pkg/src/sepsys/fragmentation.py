"""Fragmentations of cubillages and their w-membranes.

Cutting each cube zeta(X|ijk) by the horizontal planes through its vertices
gives three fragments: the lower tetrahedron ("N"), the middle octahedron
("O") and the upper tetrahedron ("D").  Faces are triangles, stored as
frozensets of three vertex subsets.  Front and rear sides are taken with
respect to the strictly convex projection of ``geometry.strict_generators``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import geometry as geo
from .combi import (CombiError, QuasiCombi, Tile, combi_from_w_collection, tile_polygon,
                    triangle_tile)
from .cubillage import Cube, Cubillage
from .lattice import LayeredComplex, MembraneError
from .subsets import Kind, bit, fmt, is_separated_collection, rank_formula, size

Tri = frozenset[int]
Fragment = tuple[Cube, str]
WMembrane = frozenset[Tri]

KINDS = ("N", "O", "D")


class FragmentationError(ValueError):
    pass


def tri(*vs: int) -> Tri:
    return frozenset(vs)


def fragment_sides(frag: Fragment) -> tuple[frozenset[Tri], frozenset[Tri]]:
    (x, i, j, k), kind = frag
    bi, bj, bk = bit(i), bit(j), bit(k)
    xi, xj, xk = x | bi, x | bj, x | bk
    xij, xik, xjk, xijk = xi | bj, xi | bk, xj | bk, xi | bj | bk
    if kind == "N":
        front = {tri(x, xi, xj), tri(x, xj, xk)}
        rear = {tri(xi, xj, xk), tri(x, xi, xk)}
    elif kind == "O":
        front = {tri(xi, xj, xk), tri(xi, xj, xij), tri(xj, xk, xjk), tri(xj, xij, xjk)}
        rear = {tri(xi, xk, xik), tri(xi, xij, xik), tri(xk, xik, xjk), tri(xij, xik, xjk)}
    elif kind == "D":
        front = {tri(xij, xik, xjk), tri(xij, xjk, xijk)}
        rear = {tri(xik, xjk, xijk), tri(xij, xik, xijk)}
    else:
        raise FragmentationError(f"unknown fragment kind {kind!r}")
    return frozenset(front), frozenset(rear)


def fragment_vertices(frag: Fragment) -> frozenset[int]:
    fr, re = fragment_sides(frag)
    return frozenset(v for t in fr | re for v in t)


def fragment_label(frag: Fragment) -> str:
    (x, i, j, k), kind = frag
    sym = {"N": "nabla", "O": "square", "D": "delta"}[kind]
    return f"{sym}({fmt(x)}|{i}{j}{k})"


def is_horizontal(t: Tri) -> bool:
    return len({size(v) for v in t}) == 1


def tri_label(t: Tri) -> str:
    return "{" + ",".join(fmt(v) for v in sorted(t, key=lambda v: (size(v), v))) + "}"


@dataclass(frozen=True)
class Fragmentation:
    host: Cubillage

    @property
    def n(self) -> int:
        return self.host.n

    @cached_property
    def fragments(self) -> list[Fragment]:
        return sorted((c, kind) for c in self.host.cubes for kind in KINDS)

    @cached_property
    def complex(self) -> LayeredComplex:
        return LayeredComplex({f: fragment_sides(f) for f in self.fragments})

    @cached_property
    def faces(self) -> frozenset[Tri]:
        return frozenset(self.complex.faces())

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for t in self.faces:
            a, b, c = sorted(t)
            out |= {(a, b), (a, c), (b, c)}
        return frozenset(out)

    def __len__(self) -> int:
        return len(self.fragments)


def fragment(q: Cubillage) -> Fragmentation:
    return Fragmentation(q)


def section(f: Fragmentation, h: int) -> list[Tri]:
    """Horizontal triangles at level h: upper ones from cubes with |X| = h-1,
    lower ones from cubes with |X| = h-2."""
    out = []
    for x, i, j, k in f.host.cubes:
        bi, bj, bk = bit(i), bit(j), bit(k)
        if size(x) == h - 1:
            out.append(tri(x | bi, x | bj, x | bk))
        elif size(x) == h - 2:
            out.append(tri(x | bi | bj, x | bi | bk, x | bj | bk))
    return sorted(out, key=lambda t: sorted(t))


def triangle_kind(t: Tri) -> str:
    """'upper', 'lower', 'nabla' or 'delta'."""
    tile = triangle_tile(t)
    if tile.kind == "N":
        return "nabla"
    if tile.kind == "D":
        return "delta"
    return tile.shape


def longest_edge(t: Tri) -> tuple[int, int]:
    a, b = triangle_tile(t).longest_edge()
    return (a, b) if a < b else (b, a)


# -- w-membranes --------------------------------------------------------------

def frag_precedence_dag(f: Fragmentation) -> set[tuple[Fragment, Fragment]]:
    return f.complex.edges()


def w_spectrum(m: Iterable[Tri]) -> frozenset[int]:
    return frozenset(v for t in m for v in t)


def front_membrane(f: Fragmentation) -> WMembrane:
    return f.complex.front_boundary()


def rear_membrane(f: Fragmentation) -> WMembrane:
    return f.complex.rear_boundary()


def enumerate_w_membranes(f: Fragmentation) -> list[WMembrane]:
    return [f.complex.membrane(i) for i in f.complex.ideals()]


def w_ideal(f: Fragmentation, m: WMembrane) -> frozenset[Fragment]:
    return f.complex.ideal_of(m)


def w_meet(f: Fragmentation, m1: WMembrane, m2: WMembrane) -> WMembrane:
    return f.complex.meet(m1, m2)


def w_join(f: Fragmentation, m1: WMembrane, m2: WMembrane) -> WMembrane:
    return f.complex.join(m1, m2)


def w_flip(f: Fragmentation, m: WMembrane, frag: Fragment, direction: str) -> WMembrane:
    if frag not in f.complex.sides:
        raise FragmentationError(f"{fragment_label(frag)} is not a fragment")
    try:
        return f.complex.flip(m, frag, direction)
    except MembraneError as e:
        raise FragmentationError(str(e)) from None


def flip_spectrum_change(frag: Fragment, direction: str) -> tuple[frozenset[int], frozenset[int]]:
    """(removed, added) vertex sets predicted for a flip through ``frag``."""
    (x, i, j, k), kind = frag
    if kind != "O":
        return frozenset(), frozenset()
    xj, xik = x | bit(j), x | bit(i) | bit(k)
    if direction == "lower":
        return frozenset({xik}), frozenset({xj})
    return frozenset({xj}), frozenset({xik})


def tetrahedral_moves(f: Fragmentation, m: WMembrane) -> list[tuple[Fragment, str]]:
    cx = f.complex
    moves = [(fr, "lower") for fr in cx.lowerable(m) if fr[1] != "O"]
    moves += [(fr, "raise") for fr in cx.raisable(m) if fr[1] != "O"]
    return moves


def escort(f: Fragmentation, m: WMembrane) -> set[WMembrane]:
    """All w-membranes reachable from m by tetrahedral flips."""
    seen = {m}
    todo = deque([m])
    while todo:
        cur = todo.popleft()
        for fr, d in tetrahedral_moves(f, cur):
            nxt = f.complex.flip(cur, fr, d)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def v_edge_count(m: Iterable[Tri]) -> int:
    edges = set()
    for t in m:
        a, b, c = sorted(t)
        for e in ((a, b), (a, c), (b, c)):
            if size(e[0]) != size(e[1]):
                edges.add(e)
    return len(edges)


def _tri_key(m: WMembrane):
    return sorted(tuple(sorted(t)) for t in m)


def fine_w_membrane(f: Fragmentation, m: WMembrane) -> WMembrane:
    """Escort member with most V-edges; ties go to the least sorted triangle list."""
    members = escort(f, m)
    best = max(v_edge_count(x) for x in members)
    return min((x for x in members if v_edge_count(x) == best), key=_tri_key)


def is_fine(f: Fragmentation, m: WMembrane) -> bool:
    cx = f.complex
    return (not any(fr[1] == "N" for fr in cx.lowerable(m))
            and not any(fr[1] == "D" for fr in cx.raisable(m)))


def horizontal_edges_paired(m: WMembrane) -> list[Tri]:
    """Horizontal triangles whose longest edge lies on no other horizontal triangle."""
    hor = [t for t in m if is_horizontal(t)]
    bad = []
    for t in hor:
        e = set(longest_edge(t))
        if not any(s != t and e <= s for s in hor):
            bad.append(t)
    return bad


# -- quasi-combies ----------------------------------------------------------

def membrane_to_quasi_combi(f: Fragmentation, m: WMembrane) -> QuasiCombi:
    return QuasiCombi(f.n, frozenset(triangle_tile(t) for t in m))


def _tile_edges_ok(f: Fragmentation, tile: Tile) -> bool:
    return all(e in f.edges for e in tile.edges())


def compatible_quasi_combi_to_membrane(f: Fragmentation, k: QuasiCombi) -> WMembrane:
    """Triangulate the horizontal tiles of k inside the sections of f."""
    n = f.n
    bad = [t for t in k.tiles if not _tile_edges_ok(f, t)]
    if bad:
        raise FragmentationError(
            f"quasi-combi is not compatible: {', '.join(map(str, sorted(bad)[:3]))}")
    sections: dict[int, list[Tri]] = {}
    out = set()
    for tile in sorted(k.tiles):
        verts = tile.vertices()
        if tile.vertical:
            t = frozenset(verts)
            if t not in f.faces:
                raise FragmentationError(f"{tile} is not a face of the fragmentation")
            out.add(t)
            continue
        h = tile.level
        if h not in sections:
            sections[h] = section(f, h)
        inside = [t for t in sections[h] if t <= verts]
        area = sum(abs(geo.area2([geo.point(v, geo.strict_generators(n)) for v in sorted(t)]))
                   for t in inside)
        if area != abs(geo.area2(tile_polygon(tile, n))):
            raise FragmentationError(f"{tile} is not subdivided by the section at level {h}")
        out |= set(inside)
    m = frozenset(out)
    try:
        f.complex.ideal_of(m)
    except MembraneError as e:
        raise FragmentationError(f"result is not a w-membrane: {e}") from None
    return m


def w_membrane_for_w_collection(q: Cubillage, w: Iterable[int]) -> WMembrane:
    """A w-membrane of the fragmentation of q whose spectrum is w."""
    n = q.n
    w = frozenset(w)
    if not w <= q.spectrum:
        raise FragmentationError("collection is not contained in the cubillage spectrum")
    if len(w) != rank_formula(Kind.WEAK, n) or not is_separated_collection(Kind.WEAK, w, n):
        raise FragmentationError("collection is not a maximal-size w-collection")
    f = fragment(q)
    try:
        k = combi_from_w_collection(w, n)
    except CombiError as e:
        raise FragmentationError(str(e)) from None
    m = compatible_quasi_combi_to_membrane(f, k)
    if w_spectrum(m) != w:
        raise FragmentationError("membrane spectrum differs from the input (internal error)")
    return m
