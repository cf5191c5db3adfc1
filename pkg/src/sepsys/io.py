"""Plain-text formats for collections and cubillages.

Collection file::

    n 4
    # comment
    -
    1 3
    2 3 4

Cubillage file::

    n 4
    cube - | 1 2 3
    cube 1 | 2 3 4
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from .cubillage import Cube, Cubillage
from .subsets import GroundError, bit, check_ground, elements


class ParseError(ValueError):
    pass


def subset_literal(x: int) -> str:
    return " ".join(map(str, elements(x))) if x else "-"


def parse_subset(text: str, n: int, where: str = "") -> int:
    text = text.strip()
    if text == "-":
        return 0
    x = 0
    try:
        items = [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"{where}bad subset literal {text!r}") from None
    if not items:
        raise ParseError(f"{where}empty subset literal (use '-')")
    if items != sorted(set(items)):
        raise ParseError(f"{where}elements must be strictly ascending: {text!r}")
    for i in items:
        if not 1 <= i <= n:
            raise ParseError(f"{where}element {i} outside [1, {n}]")
        x |= bit(i)
    return x


def _lines(stream: TextIO) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _header(lines: list[tuple[int, str]]) -> int:
    if not lines:
        raise ParseError("missing header 'n <int>'")
    no, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParseError(f"line {no}: expected header 'n <int>'")
    try:
        n = int(parts[1])
        check_ground(n)
    except (ValueError, GroundError):
        raise ParseError(f"line {no}: bad ground size {parts[1]!r}") from None
    return n


@dataclass(frozen=True)
class CollectionFile:
    n: int
    members: frozenset[int]


def read_collection(stream: TextIO) -> CollectionFile:
    lines = _lines(stream)
    n = _header(lines)
    seen: set[int] = set()
    for no, line in lines[1:]:
        x = parse_subset(line, n, f"line {no}: ")
        if x in seen:
            raise ParseError(f"line {no}: duplicate subset {line!r}")
        seen.add(x)
    return CollectionFile(n, frozenset(seen))


def write_collection(n: int, members: Iterable[int], stream: TextIO) -> None:
    stream.write(f"n {n}\n")
    for x in sorted(members):
        stream.write(subset_literal(x) + "\n")


def format_collection(n: int, members: Iterable[int]) -> str:
    lines = [f"n {n}"] + [subset_literal(x) for x in sorted(members)]
    return "\n".join(lines) + "\n"


def read_cubillage(stream: TextIO) -> Cubillage:
    lines = _lines(stream)
    n = _header(lines)
    cubes: set[Cube] = set()
    for no, line in lines[1:]:
        if not line.startswith("cube ") or "|" not in line:
            raise ParseError(f"line {no}: expected 'cube <X> | i j k'")
        left, right = line[5:].split("|", 1)
        x = parse_subset(left, n, f"line {no}: ")
        try:
            cols = [int(t) for t in right.split()]
        except ValueError:
            raise ParseError(f"line {no}: bad colours {right.strip()!r}") from None
        if len(cols) != 3 or cols != sorted(set(cols)) or not all(1 <= c <= n for c in cols):
            raise ParseError(f"line {no}: need three ascending colours in [1, {n}]")
        if any(x & bit(c) for c in cols):
            raise ParseError(f"line {no}: colour inside the base subset")
        cube = (x, cols[0], cols[1], cols[2])
        if cube in cubes:
            raise ParseError(f"line {no}: duplicate cube")
        cubes.add(cube)
    return Cubillage(n, frozenset(cubes))


def format_cubillage(q: Cubillage) -> str:
    lines = [f"n {q.n}"]
    for x, i, j, k in sorted(q.cubes, key=lambda c: (c[1:], c[0])):
        lines.append(f"cube {subset_literal(x)} | {i} {j} {k}")
    return "\n".join(lines) + "\n"


def load_collection(path: str | Path) -> CollectionFile:
    with open(path, encoding="utf-8") as fh:
        return read_collection(fh)


def load_cubillage(path: str | Path) -> Cubillage:
    with open(path, encoding="utf-8") as fh:
        return read_cubillage(fh)
