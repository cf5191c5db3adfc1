"""Exact planar geometry on integer coordinates.

Every point used by the library is a subset sum of generator vectors with
integer coordinates, so all predicates here are exact.  Two generator systems
are provided:

* ``plain_generators(n)``: xi_i = (x_i, 1) with x_i = 2i - n - 1.  This is the
  image pi(theta_i) of the cubillage generators theta_i = (x_i, x_i^2, 1).
* ``strict_generators(n)``: xi_i = (D x_i, D - x_i^2), i.e. the projection
  pi_eps(theta_i) = (x_i, 1 - eps y_i) scaled by D = 1/eps.  These are strictly
  convex; D is chosen large enough that every orientation and projection sign
  below agrees with its eps -> 0+ limit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Iterator, Sequence

from .subsets import elements, full

Point = tuple[int, int]


def cube_xs(n: int) -> list[int]:
    return [2 * i - n - 1 for i in range(1, n + 1)]


def cube_generators(n: int) -> list[tuple[int, int, int]]:
    """theta_i = (x_i, x_i^2, 1): the points (x_i, x_i^2) are in convex position."""
    return [(x, x * x, 1) for x in cube_xs(n)]


def eps_scale(n: int) -> int:
    # Predicates below are linear in eps with coefficients bounded by ~2 n^5;
    # any D above that bound reproduces the infinitesimal-eps signs.
    return 4 * max(n, 2) ** 6


@lru_cache(maxsize=None)
def plain_generators(n: int) -> tuple[Point, ...]:
    return tuple((x, 1) for x in cube_xs(n))


@lru_cache(maxsize=None)
def strict_generators(n: int, scale: int | None = None) -> tuple[Point, ...]:
    d = eps_scale(n) if scale is None else scale
    return tuple((d * x, d - x * x) for x in cube_xs(n))


def is_strictly_convex(gens: Sequence[Point]) -> bool:
    """xi_j = l xi_i + l' xi_k with l, l' > 0 and l + l' > 1 for all i < j < k."""
    from fractions import Fraction

    n = len(gens)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                (a, b), (c, d), (e, f) = gens[i], gens[j], gens[k]
                det = a * f - b * e
                if det == 0:
                    return False
                lam = Fraction(c * f - d * e, det)
                lam2 = Fraction(a * d - b * c, det)
                if not (lam > 0 and lam2 > 0 and lam + lam2 > 1):
                    return False
    return True


def is_clockwise(gens: Sequence[Point]) -> bool:
    return all(g[1] > 0 for g in gens) and all(
        cross(gens[i], gens[i + 1]) < 0 for i in range(len(gens) - 1))


def point(x: int, gens: Sequence[Point]) -> Point:
    px = py = 0
    for i in elements(x):
        gx, gy = gens[i - 1]
        px += gx
        py += gy
    return px, py


def cross(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c: +1 left (ccw), -1 right, 0 collinear."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def area2(poly: Sequence[Point]) -> int:
    """Twice the signed area (positive for counter-clockwise)."""
    s = 0
    for k in range(len(poly)):
        x1, y1 = poly[k]
        x2, y2 = poly[(k + 1) % len(poly)]
        s += x1 * y2 - x2 * y1
    return s


def ccw(poly: Sequence[Point]) -> list[Point]:
    poly = list(poly)
    return poly if area2(poly) > 0 else poly[::-1]


def zonogon_area2(gens: Sequence[Point]) -> int:
    n = len(gens)
    return 2 * sum(abs(cross(gens[i], gens[j])) for i in range(n) for j in range(i + 1, n))


def point_in_convex(p: Point, poly: Sequence[Point], strict: bool = False) -> bool:
    """Point in a ccw convex polygon; ``strict`` excludes the boundary."""
    for k in range(len(poly)):
        o = orient(poly[k], poly[(k + 1) % len(poly)], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def point_on_open_segment(p: Point, a: Point, b: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
    return 0 < dot < (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2


def _bbox(poly: Sequence[Point]) -> tuple[int, int, int, int]:
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def interiors_overlap(p: Sequence[Point], q: Sequence[Point]) -> bool:
    """Separating-axis test for convex polygons; touching boundaries do not count."""
    ax0, ay0, ax1, ay1 = _bbox(p)
    bx0, by0, bx1, by1 = _bbox(q)
    if ax1 <= bx0 or bx1 <= ax0 or ay1 <= by0 or by1 <= ay0:
        return False
    for poly in (p, q):
        for k in range(len(poly)):
            a, b = poly[k], poly[(k + 1) % len(poly)]
            nx_, ny_ = a[1] - b[1], b[0] - a[0]
            pp = [nx_ * x + ny_ * y for x, y in p]
            qq = [nx_ * x + ny_ * y for x, y in q]
            if max(pp) <= min(qq) or max(qq) <= min(pp):
                return False
    return True


def zonogon_boundary(n: int) -> list[tuple[int, int]]:
    """Edges (as subset pairs) of the left path [0],[1],..,[n] and the right path."""
    left = [(full(i), full(i + 1)) for i in range(n)]
    right = [(full(n) & ~full(n - i), full(n) & ~full(n - i - 1)) for i in range(n)]
    return left + right


# -- exact cover of the zonogon by convex tiles --------------------------------

@dataclass(frozen=True)
class Piece:
    """A candidate tile: a key and its boundary as a cyclic list of subsets."""
    key: Hashable
    cycle: tuple[int, ...]


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class CoverSearch:
    """Edge-to-edge tilings of the zonogon from a fixed pool of convex tiles.

    The search keeps a frontier of edges covered on one side only, always
    extends the edge with the fewest admissible tiles, and backtracks on dead
    ends.  Starting from the zonogon boundary, a state with an empty frontier
    is a complete tiling.
    """

    def __init__(self, n: int, pieces: Iterable[Piece], gens: Sequence[Point]):
        self.n = n
        self.gens = gens
        self.pieces = list(pieces)
        self.polys = [ccw([point(v, gens) for v in pc.cycle]) for pc in self.pieces]
        self.by_side: dict[tuple[tuple[int, int], int], list[int]] = {}
        self.sides: list[list[tuple[tuple[int, int], int]]] = []
        for idx, pc in enumerate(self.pieces):
            sides = []
            cyc = pc.cycle
            for k in range(len(cyc)):
                u, v = cyc[k], cyc[(k + 1) % len(cyc)]
                e = _edge(u, v)
                other = next(w for w in cyc if w not in e)
                side = orient(point(e[0], gens), point(e[1], gens), point(other, gens))
                sides.append((e, side))
                self.by_side.setdefault((e, side), []).append(idx)
            self.sides.append(sides)
        self._conflict: dict[tuple[int, int], bool] = {}
        total = [0, 0]
        for g in gens:
            total[0] += g[0]
            total[1] += g[1]
        self.start: dict[tuple[int, int], int] = {}
        for u, v in zonogon_boundary(n):
            e = _edge(u, v)
            a, b = point(e[0], gens), point(e[1], gens)
            # side of the zonogon centre (total / 2), computed on doubled coordinates
            inner = orient((2 * a[0], 2 * a[1]), (2 * b[0], 2 * b[1]), (total[0], total[1]))
            self.start[e] = inner

    def conflict(self, i: int, j: int) -> bool:
        key = (i, j) if i < j else (j, i)
        hit = self._conflict.get(key)
        if hit is None:
            hit = interiors_overlap(self.polys[i], self.polys[j])
            self._conflict[key] = hit
        return hit

    def _admissible(self, idx: int, chosen: list[int], covered: dict) -> bool:
        for e, side in self.sides[idx]:
            if covered.get(e, 0) & (1 if side > 0 else 2):
                return False
        return not any(self.conflict(idx, c) for c in chosen)

    def solutions(self, limit: int | None = None) -> Iterator[list[Hashable]]:
        # covered[e]: bit 1 = left side taken, bit 2 = right side taken
        covered: dict[tuple[int, int], int] = {}
        for e, inner in self.start.items():
            covered[e] = 2 if inner > 0 else 1
        chosen: list[int] = []
        found = 0

        def open_sides():
            for e, mask in covered.items():
                if mask == 1:
                    yield e, -1
                elif mask == 2:
                    yield e, 1

        def rec() -> Iterator[list[Hashable]]:
            nonlocal found
            best = None
            for e, side in open_sides():
                opts = [i for i in self.by_side.get((e, side), ())
                        if self._admissible(i, chosen, covered)]
                if best is None or len(opts) < len(best[1]):
                    best = ((e, side), opts)
                    if not opts:
                        break
            if best is None:
                found += 1
                yield [self.pieces[i].key for i in chosen]
                return
            for idx in best[1]:
                saved = [(e, covered.get(e, 0)) for e, _ in self.sides[idx]]
                for e, side in self.sides[idx]:
                    covered[e] = covered.get(e, 0) | (1 if side > 0 else 2)
                chosen.append(idx)
                yield from rec()
                chosen.pop()
                for e, mask in saved:
                    if mask:
                        covered[e] = mask
                    else:
                        del covered[e]
                if limit is not None and found >= limit:
                    return

        yield from rec()

    def first(self) -> list[Hashable] | None:
        for sol in self.solutions(limit=1):
            return sol
        return None


def count_covers(n: int, pieces: Iterable[Piece], gens: Sequence[Point]) -> int:
    return sum(1 for _ in CoverSearch(n, pieces, gens).solutions())


def covers_exactly(n: int, polys: Iterable[Sequence[Point]], gens: Sequence[Point]) -> list[str]:
    """Problems preventing ``polys`` from tiling the zonogon (empty list = tiling)."""
    polys = [ccw(p) for p in polys]
    problems = []
    total = sum(area2(p) for p in polys)
    want = zonogon_area2(gens)
    if total != want:
        problems.append(f"area {total} != zonogon area {want} (doubled)")
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            if interiors_overlap(polys[a], polys[b]):
                problems.append(f"tiles {a} and {b} overlap")
    return problems


def has_vertex_on_edge(polys: Sequence[Sequence[Point]]) -> bool:
    """True if a polygon vertex sits inside an edge of another (a T-junction)."""
    verts = {p for poly in polys for p in poly}
    for poly in polys:
        for k in range(len(poly)):
            a, b = poly[k], poly[(k + 1) % len(poly)]
            if any(point_on_open_segment(v, a, b) for v in verts):
                return True
    return False
