"""Layered cell complexes: cells with a front and a rear side.

Cubes of a cubillage and fragments of a fragmentation both fit this shape.
A membrane is determined by its front heap, an order ideal of the precedence
DAG; this module implements that correspondence once for both uses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

C = TypeVar("C", bound=Hashable)
F = TypeVar("F", bound=Hashable)


class MembraneError(ValueError):
    pass


@dataclass
class LayeredComplex(Generic[C, F]):
    """Cells mapped to their (front faces, rear faces)."""
    sides: Mapping[C, tuple[frozenset[F], frozenset[F]]]
    before: dict[F, C] = field(init=False)    # cell having the face on its rear
    after: dict[F, C] = field(init=False)     # cell having the face on its front

    def __post_init__(self):
        self.before, self.after = {}, {}
        for c, (fr, re) in self.sides.items():
            for f in re:
                if f in self.before:
                    raise MembraneError(f"face {f!r} is on the rear of two cells")
                self.before[f] = c
            for f in fr:
                if f in self.after:
                    raise MembraneError(f"face {f!r} is on the front of two cells")
                self.after[f] = c

    @property
    def cells(self) -> list[C]:
        return sorted(self.sides)

    def faces(self) -> set[F]:
        return set(self.before) | set(self.after)

    def front(self, c: C) -> frozenset[F]:
        return self.sides[c][0]

    def rear(self, c: C) -> frozenset[F]:
        return self.sides[c][1]

    # -- precedence
    def edges(self) -> set[tuple[C, C]]:
        return {(self.before[f], self.after[f]) for f in self.before if f in self.after}

    def predecessors(self) -> dict[C, set[C]]:
        preds: dict[C, set[C]] = {c: set() for c in self.sides}
        for a, b in self.edges():
            preds[b].add(a)
        return preds

    def is_acyclic(self) -> bool:
        try:
            tuple(TopologicalSorter(self.predecessors()).static_order())
        except CycleError:
            return False
        return True

    def topological_order(self) -> list[C]:
        return list(TopologicalSorter(self.predecessors()).static_order())

    def is_ideal(self, ideal: Iterable[C]) -> bool:
        ideal = set(ideal)
        preds = self.predecessors()
        return ideal <= set(self.sides) and all(preds[c] <= ideal for c in ideal)

    def ideals(self) -> Iterator[frozenset[C]]:
        """All order ideals, by branching on cells in topological order."""
        order = self.topological_order()
        preds = self.predecessors()
        succs: dict[C, set[C]] = {c: set() for c in self.sides}
        for b, ps in preds.items():
            for a in ps:
                succs[a].add(b)

        def rec(pos: int, chosen: set[C], banned: set[C]) -> Iterator[frozenset[C]]:
            if pos == len(order):
                yield frozenset(chosen)
                return
            c = order[pos]
            if c in banned or not preds[c] <= chosen:
                yield from rec(pos + 1, chosen, banned)
                return
            chosen.add(c)
            yield from rec(pos + 1, chosen, banned)
            chosen.discard(c)
            # leaving c out forbids everything above it
            extra = _closure(c, succs) - banned
            banned |= extra
            yield from rec(pos + 1, chosen, banned)
            banned -= extra

        yield from rec(0, set(), set())

    # -- membranes
    def membrane(self, ideal: Iterable[C]) -> frozenset[F]:
        ideal = set(ideal)
        if not self.is_ideal(ideal):
            raise MembraneError("cell set is not an order ideal")
        out = set()
        for f in self.faces():
            b, a = self.before.get(f), self.after.get(f)
            if (b is None or b in ideal) and (a is None or a not in ideal):
                out.add(f)
        return frozenset(out)

    def front_boundary(self) -> frozenset[F]:
        return frozenset(f for f in self.after if f not in self.before)

    def rear_boundary(self) -> frozenset[F]:
        return frozenset(f for f in self.before if f not in self.after)

    def lowerable(self, membrane: frozenset[F]) -> list[C]:
        return sorted(c for c in self.sides if self.rear(c) <= membrane)

    def raisable(self, membrane: frozenset[F]) -> list[C]:
        return sorted(c for c in self.sides if self.front(c) <= membrane)

    def flip(self, membrane: frozenset[F], c: C, direction: str) -> frozenset[F]:
        fr, re = self.sides[c]
        if direction == "lower":
            if not re <= membrane:
                raise MembraneError(f"rear of {c!r} is not in the membrane")
            return (membrane - re) | fr
        if direction == "raise":
            if not fr <= membrane:
                raise MembraneError(f"front of {c!r} is not in the membrane")
            return (membrane - fr) | re
        raise MembraneError(f"unknown direction {direction!r}")

    def ideal_of(self, membrane: Iterable[F]) -> frozenset[C]:
        """Front heap of a membrane, found by lowering flips down to the front side."""
        m = frozenset(membrane)
        heap: set[C] = set()
        target = self.front_boundary()
        while m != target:
            cand = [c for c in self.lowerable(m) if c not in heap]
            if not cand:
                raise MembraneError("face set is not a membrane of this complex")
            c = cand[0]
            m = self.flip(m, c, "lower")
            heap.add(c)
        ideal = frozenset(heap)
        if self.membrane(ideal) != frozenset(membrane):
            raise MembraneError("face set is not a membrane of this complex")
        return ideal

    def meet(self, m1: Iterable[F], m2: Iterable[F]) -> frozenset[F]:
        return self.membrane(self.ideal_of(m1) & self.ideal_of(m2))

    def join(self, m1: Iterable[F], m2: Iterable[F]) -> frozenset[F]:
        return self.membrane(self.ideal_of(m1) | self.ideal_of(m2))


def _closure(c, succs) -> set:
    out, stack = {c}, [c]
    while stack:
        for d in succs[stack.pop()]:
            if d not in out:
                out.add(d)
                stack.append(d)
    return out
