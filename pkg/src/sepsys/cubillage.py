"""Cubillages of Z(n,3) and the lattice of s-membranes inside them.

A cube ``(X, i, j, k)`` stands for zeta(X|ijk) with vertices X .. Xijk.  Its
front side consists of rho(X|ij), rho(X|jk), rho(Xj|ik) and its rear side of
rho(X|ik), rho(Xi|jk), rho(Xk|ij).  An s-membrane is a frozenset of rhombi.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from . import geometry as geo
from .lattice import LayeredComplex, MembraneError
from .subsets import (Collection, Kind, bit, check_ground, fmt, is_separated_collection,
                      mirror, rank_formula)
from .tiling import (Hexagon, Rhombus, Tiling, antistandard_tiling, find_hexagons,
                     inversion_set_fast, standard_tiling, strong_flip,
                     validate_tiling)

Cube = tuple[int, int, int, int]
SMembrane = frozenset[Rhombus]


class CubillageError(ValueError):
    pass


def cube_label(c: Cube) -> str:
    return f"zeta({fmt(c[0])}|{c[1]}{c[2]}{c[3]})"


def cube_vertices(c: Cube) -> list[int]:
    x, i, j, k = c
    bs = (bit(i), bit(j), bit(k))
    return [x | (bs[0] if m & 1 else 0) | (bs[1] if m & 2 else 0) | (bs[2] if m & 4 else 0)
            for m in range(8)]


def front_side(c: Cube) -> frozenset[Rhombus]:
    x, i, j, k = c
    return frozenset({(x, i, j), (x, j, k), (x | bit(j), i, k)})


def rear_side(c: Cube) -> frozenset[Rhombus]:
    x, i, j, k = c
    return frozenset({(x, i, k), (x | bit(i), j, k), (x | bit(k), i, j)})


def cube_of_hexagon(h: Hexagon) -> Cube:
    return h.base, h.i, h.j, h.k


@dataclass(frozen=True)
class Cubillage:
    n: int
    cubes: frozenset[Cube]

    @cached_property
    def spectrum(self) -> Collection:
        if not self.cubes:
            return frozenset(standard_tiling(self.n).spectrum)
        return frozenset(v for c in self.cubes for v in cube_vertices(c))

    @cached_property
    def complex(self) -> LayeredComplex:
        return LayeredComplex({c: (front_side(c), rear_side(c)) for c in self.cubes})

    def rhombi(self) -> set[Rhombus]:
        return {r for c in self.cubes for r in front_side(c) | rear_side(c)}

    def __len__(self) -> int:
        return len(self.cubes)


def cubes_in(coll: Iterable[int], n: int) -> frozenset[Cube]:
    members = frozenset(coll)
    out = set()
    for x in members:
        for i, j, k in combinations(range(1, n + 1), 3):
            if x & (bit(i) | bit(j) | bit(k)):
                continue
            c = (x, i, j, k)
            if all(v in members for v in cube_vertices(c)):
                out.add(c)
    return frozenset(out)


def cubillage_from_c_collection(coll: Iterable[int], n: int, validate: bool = True) -> Cubillage:
    check_ground(n)
    coll = frozenset(coll)
    if len(coll) != rank_formula(Kind.CHORD, n) or not is_separated_collection(Kind.CHORD, coll, n):
        raise CubillageError("input is not a maximal chord separated collection")
    q = Cubillage(n, cubes_in(coll, n))
    if validate:
        problems = validate_cubillage(q)
        if problems:
            raise CubillageError("; ".join(problems))
    return q


# -- validation --------------------------------------------------------------

def _dot(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _point3(x: int, gens) -> tuple[int, int, int]:
    p = [0, 0, 0]
    for i, g in enumerate(gens, 1):
        if x & bit(i):
            p[0] += g[0]
            p[1] += g[1]
            p[2] += g[2]
    return p[0], p[1], p[2]


def cubes_overlap(c1: Cube, c2: Cube, gens) -> bool:
    """Separating-axis test for two parallelepipeds; shared faces do not count."""
    colors = sorted(set(c1[1:]) | set(c2[1:]))
    for a, b in combinations(colors, 2):
        axis = _cross3(gens[a - 1], gens[b - 1])
        spans = []
        for c in (c1, c2):
            base = _dot(_point3(c[0], gens), axis)
            lo = hi = base
            for col in c[1:]:
                d = _dot(gens[col - 1], axis)
                lo += min(d, 0)
                hi += max(d, 0)
            spans.append((lo, hi))
        (l1, h1), (l2, h2) = spans
        if h1 <= l2 or h2 <= l1:
            return False
    return True


def validate_cubillage(q: Cubillage) -> list[str]:
    n = q.n
    out = []
    seen: dict[tuple[int, int, int], Cube] = {}
    for c in sorted(q.cubes):
        x, i, j, k = c
        if not (1 <= i < j < k <= n) or x & (bit(i) | bit(j) | bit(k)) or x >> n:
            out.append(f"malformed cube {cube_label(c)}")
            continue
        if (i, j, k) in seen:
            out.append(f"two cubes of colour {i}{j}{k}")
        seen[(i, j, k)] = c
    for t in combinations(range(1, n + 1), 3):
        if t not in seen:
            out.append(f"missing cube of colour {''.join(map(str, t))} (volume deficit)")
    if out:
        return out
    gens = geo.cube_generators(n)
    cubes = sorted(q.cubes)
    for a, b in combinations(cubes, 2):
        if cubes_overlap(a, b, gens):
            out.append(f"{cube_label(a)} and {cube_label(b)} overlap")
    mult: dict[Rhombus, int] = {}
    for c in cubes:
        for r in front_side(c) | rear_side(c):
            mult[r] = mult.get(r, 0) + 1
    surface = standard_tiling(n).rhombi | antistandard_tiling(n).rhombi
    for r, m in sorted(mult.items()):
        if m > 2:
            out.append(f"rhombus {r} shared by {m} cubes")
    single = {r for r, m in mult.items() if m == 1}
    if n >= 3 and single != set(surface):
        out.append(f"unmatched facets: {len(single ^ set(surface))}")
    try:
        if not q.complex.is_acyclic():
            out.append("precedence graph has a cycle")
    except MembraneError as e:
        out.append(str(e))
    if not out and len(q.spectrum) != rank_formula(Kind.CHORD, n):
        out.append(f"spectrum has {len(q.spectrum)} members")
    return out


def front_rear_sides(q: Cubillage) -> tuple[SMembrane, SMembrane]:
    return standard_tiling(q.n).rhombi, antistandard_tiling(q.n).rhombi


# -- relabelling, pies, contraction and expansion --------------------------

def mirror_cube(c: Cube, n: int) -> Cube:
    x, i, j, k = c
    a, b, d = sorted(n + 1 - t for t in (i, j, k))
    return mirror(x, n), a, b, d


def mirror_cubillage(q: Cubillage) -> Cubillage:
    return Cubillage(q.n, frozenset(mirror_cube(c, q.n) for c in q.cubes))


def mirror_membrane(m: Iterable[Rhombus], n: int) -> SMembrane:
    return frozenset((mirror(x, n), n + 1 - j, n + 1 - i) for x, i, j in m)


@dataclass(frozen=True)
class Pie:
    color: int
    belt: frozenset[Cube]
    disk_front: SMembrane      # the side of the pie facing the front
    disk_rear: SMembrane
    before: frozenset[Cube]
    behind: frozenset[Cube]


def _check_color(q: Cubillage, color: int) -> None:
    if color not in (1, q.n):
        raise CubillageError(f"pies are only defined for colours 1 and {q.n}")


def pie(q: Cubillage, color: int) -> Pie:
    _check_color(q, color)
    n = q.n
    if color == 1 and n > 1:
        p = pie(mirror_cubillage(q), n)
        back = lambda cs: frozenset(mirror_cube(c, n) for c in cs)
        return Pie(1, back(p.belt), mirror_membrane(p.disk_front, n),
                   mirror_membrane(p.disk_rear, n), back(p.before), back(p.behind))
    b = bit(n)
    belt = frozenset(c for c in q.cubes if n in c[1:])
    before = frozenset(c for c in q.cubes if n not in c[1:] and not c[0] & b)
    behind = frozenset(c for c in q.cubes if n not in c[1:] and c[0] & b)
    # the n-edge faces of the belt split the pie into two disks
    disk_front = frozenset((x, i, j) for x, i, j, _ in belt)
    disk_rear = frozenset((x | b, i, j) for x, i, j, _ in belt)
    return Pie(n, belt, disk_front, disk_rear, before, behind)


def contract(q: Cubillage, color: int) -> tuple[Cubillage, SMembrane]:
    """Remove the pie of ``color`` (1 or n); returns Q' on n-1 colours and the image of the pie."""
    _check_color(q, color)
    n = q.n
    if color == 1 and n > 1:
        q2, m = contract(mirror_cubillage(q), n)
        return mirror_cubillage(q2), mirror_membrane(m, n - 1)
    b = bit(n)
    cubes = frozenset((x & ~b, i, j, k) for x, i, j, k in q.cubes if k != n)
    membrane = frozenset((x, i, j) for x, i, j, k in q.cubes if k == n)
    return Cubillage(n - 1, cubes), membrane


def expand(q: Cubillage, m: Iterable[Rhombus], color: int) -> Cubillage:
    """Inverse of ``contract``: insert a pie along the membrane ``m`` of ``q``."""
    n = q.n + 1
    if color not in (1, n):
        raise CubillageError(f"pies are only defined for colours 1 and {n}")
    m = frozenset(m)
    if color == 1:
        q2 = expand(mirror_cubillage(q), mirror_membrane(m, q.n), n)
        return mirror_cubillage(q2)
    if q.n >= 3:
        try:
            heap = q.complex.ideal_of(m)
        except MembraneError as e:
            raise CubillageError(f"not a membrane of the cubillage: {e}") from None
    else:
        if validate_tiling(Tiling(q.n, m)):
            raise CubillageError("not a membrane of the cubillage")
        heap = frozenset()
    b = bit(n)
    cubes = {c if c in heap else (c[0] | b, *c[1:]) for c in q.cubes}
    cubes |= {(x, i, j, n) for x, i, j in m}
    return Cubillage(n, frozenset(cubes))


# -- precedence, ideals, membranes ------------------------------------------

def precedence_dag(q: Cubillage) -> set[tuple[Cube, Cube]]:
    return q.complex.edges()


def enumerate_ideals(q: Cubillage) -> list[frozenset[Cube]]:
    return sorted(q.complex.ideals(), key=lambda s: (len(s), sorted(s)))


def membrane_of_ideal(q: Cubillage, ideal: Iterable[Cube]) -> SMembrane:
    if not q.cubes:
        return standard_tiling(q.n).rhombi
    return q.complex.membrane(ideal)


def s_membranes(q: Cubillage) -> list[SMembrane]:
    return [membrane_of_ideal(q, i) for i in enumerate_ideals(q)]


def meet(q: Cubillage, m1: SMembrane, m2: SMembrane) -> SMembrane:
    return q.complex.meet(m1, m2)


def join(q: Cubillage, m1: SMembrane, m2: SMembrane) -> SMembrane:
    return q.complex.join(m1, m2)


def membrane_flip(q: Cubillage, m: SMembrane, cube: Cube, direction: str) -> SMembrane:
    if cube not in q.cubes:
        raise CubillageError(f"{cube_label(cube)} is not a cube of the cubillage")
    try:
        return q.complex.flip(m, cube, direction)
    except MembraneError as e:
        raise CubillageError(str(e)) from None


def membrane_from_tiling(q: Cubillage, t: Tiling) -> SMembrane:
    if not t.spectrum <= q.spectrum:
        raise CubillageError("tiling spectrum is not contained in the cubillage spectrum")
    m = frozenset(t.rhombi)
    known = q.rhombi() if q.cubes else set(m)
    stray = m - known
    if stray:
        raise CubillageError(f"rhombi missing from the cubillage: {sorted(stray)}")
    if q.cubes:
        q.complex.ideal_of(m)
    return m


# -- filling algorithms -------------------------------------------------------

def extend_membrane_to_cubillage(t: Tiling) -> Cubillage:
    """Glue cubes below the membrane (towards the front) and above it."""
    if validate_tiling(t):
        raise CubillageError("not a valid membrane")
    cubes = set()
    cur = t
    while True:
        hs = find_hexagons(cur, "L")
        if not hs:
            break
        cubes.add(cube_of_hexagon(hs[0]))
        cur = strong_flip(cur, hs[0])
    cur = t
    while True:
        hs = find_hexagons(cur, "Y")
        if not hs:
            break
        cubes.add(cube_of_hexagon(hs[0]))
        cur = strong_flip(cur, hs[0])
    return Cubillage(t.n, frozenset(cubes))


@dataclass(frozen=True)
class FillResult:
    cubes: frozenset[Cube] | None
    witness: tuple[int, int, int] | None

    @property
    def possible(self) -> bool:
        return self.cubes is not None


def fill_between_membranes(m: Tiling, m2: Tiling) -> FillResult:
    """Cubes filling the region between m (in front) and m2, or a blocking inversion."""
    inv, inv2 = inversion_set_fast(m), inversion_set_fast(m2)
    extra = inv - inv2
    if extra:
        return FillResult(None, min(extra))
    cubes = set()
    cur = m
    while True:
        todo = inv2 - inversion_set_fast(cur)
        if not todo:
            break
        hs = [h for h in find_hexagons(cur, "Y") if (h.i, h.j, h.k) in todo]
        if not hs:
            raise CubillageError("no elementary triple to flip (internal error)")
        cubes.add(cube_of_hexagon(hs[0]))
        cur = strong_flip(cur, hs[0])
    if cur.rhombi != m2.rhombi:
        raise CubillageError("filling did not reach the target membrane (internal error)")
    return FillResult(frozenset(cubes), None)


def random_cubillage(n: int, rng, steps: int = 200) -> Cubillage:
    """A cubillage obtained by extending a random rhombus tiling."""
    from .tiling import random_tiling

    return extend_membrane_to_cubillage(random_tiling(n, rng, steps))


def cubillage_13() -> Cubillage:
    """The four-cube cubillage on Z(4,3) whose spectrum misses 24."""
    return cubillage_from_c_collection(frozenset(range(16)) - {0b1010}, 4)

