"""Deterministic SVG drawings of planar subdivisions.

V-edges are drawn thick and H-edges thin.  Sections shade upper and lower
triangles differently.  Coordinates come from generators (x_i, 1 - e x_i^2)
with a visible e; the combinatorics does not depend on that choice.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .geometry import cube_xs
from .subsets import elements, fmt, size

UNIT = 40.0
MARGIN = 20.0


def _gens(n: int, strict: bool) -> list[tuple[float, float]]:
    e = 0.5 / max(n - 1, 1) ** 2 if strict else 0.0
    return [(x / 2, 1 - e * x * x) for x in cube_xs(n)]


class _Canvas:
    def __init__(self, n: int, strict: bool):
        self.n = n
        self.gens = _gens(n, strict)
        xs = cube_xs(n)
        self.left = sum(x for x in xs if x < 0) / 2
        self.width = sum(abs(x) for x in xs) / 2
        self.height = sum(g[1] for g in self.gens)
        self.items: list[str] = []

    def xy(self, v: int) -> tuple[float, float]:
        px = sum(self.gens[i - 1][0] for i in elements(v))
        py = sum(self.gens[i - 1][1] for i in elements(v))
        return (MARGIN + (px - self.left) * UNIT, MARGIN + (self.height - py) * UNIT)

    def polygon(self, verts: Sequence[int], fill: str, title: str) -> None:
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(self.xy, verts))
        self.items.append(f'<polygon points="{pts}" fill="{fill}" stroke="none">'
                          f"<title>{title}</title></polygon>")

    def edge(self, u: int, v: int) -> None:
        (x1, y1), (x2, y2) = self.xy(u), self.xy(v)
        w = 3 if size(u) != size(v) else 1
        self.items.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                          f'stroke="black" stroke-width="{w}"/>')

    def label(self, v: int) -> None:
        x, y = self.xy(v)
        self.items.append(f'<text x="{x + 3:.2f}" y="{y - 3:.2f}" font-size="9">{fmt(v)}</text>')

    def render(self) -> str:
        w = 2 * MARGIN + self.width * UNIT
        h = 2 * MARGIN + self.height * UNIT
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{w:.0f}" height="{h:.0f}" viewBox="0 0 {w:.2f} {h:.2f}">')
        return "\n".join([head, *self.items, "</svg>"]) + "\n"


def _draw(n: int, cells: Iterable[tuple[Sequence[int], str, str]], strict: bool) -> str:
    cv = _Canvas(n, strict)
    cells = sorted(cells, key=lambda c: (c[2], tuple(c[0])))
    edges, verts = set(), set()
    for cyc, fill, title in cells:
        cv.polygon(cyc, fill, title)
        for k in range(len(cyc)):
            a, b = cyc[k], cyc[(k + 1) % len(cyc)]
            edges.add((min(a, b), max(a, b)))
            verts.add(a)
    for u, v in sorted(edges):
        cv.edge(u, v)
    for v in sorted(verts):
        cv.label(v)
    return cv.render()


def tiling_svg(t) -> str:
    from .tiling import rhombus_label, rhombus_vertices

    return _draw(t.n, [(rhombus_vertices(r), "#dde8f5", rhombus_label(r)) for r in t.rhombi], False)


def combi_svg(k) -> str:
    colours = {"N": "#f5e6d3", "D": "#d3e6f5", "H": "#e3f5d3"}
    return _draw(k.n, [(t.cycle(), colours[t.kind], str(t)) for t in k.tiles], True)


def section_svg(f, h: int) -> str:
    from .combi import triangle_tile
    from .fragmentation import section, tri_label

    cells = []
    for t in section(f, h):
        tile = triangle_tile(t)
        fill = "#f2c6c6" if tile.shape == "upper" else "#c6d4f2"
        cells.append((tile.cycle(), fill, f"{tile.shape} {tri_label(t)}"))
    return _draw(f.n, cells, True)


def polygon_count(svg: str) -> int:
    return svg.count("<polygon")


def write_svg(text: str, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
