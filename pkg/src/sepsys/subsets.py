"""Subsets of [n] as bitmasks, with the separation relations and purity checks on them.

A subset X of [n] = {1, ..., n} is stored as a Python int whose bit ``i - 1``
is set iff ``i`` is in X.  Collections are frozensets of such ints; every
function that enumerates a collection does so in ascending bit-value order.
"""
from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable

import networkx as nx

MAX_N = 64

Collection = frozenset


class GroundError(ValueError):
    """A subset has elements outside the ground set [n]."""


class SeparationError(ValueError):
    """A collection that must be pairwise separated is not."""


class Kind(enum.Enum):
    STRONG = "s"
    WEAK = "w"
    CHORD = "c"

    @classmethod
    def parse(cls, text: str | "Kind") -> "Kind":
        if isinstance(text, Kind):
            return text
        key = text.strip().lower()
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown separation kind {text!r}")


# -- single subsets ---------------------------------------------------------

def check_ground(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise GroundError(f"ground size must lie in 1..{MAX_N}, got {n}")


def full(n: int) -> int:
    return (1 << n) - 1


def in_ground(x: int, n: int) -> bool:
    return 0 <= x and x >> n == 0


def bit(i: int) -> int:
    return 1 << (i - 1)


def subset(elements: Iterable[int] | str) -> int:
    """Build a bitmask from elements; a string like ``"124"`` means {1, 2, 4}."""
    if isinstance(elements, str):
        text = elements.strip()
        if text in ("", "-", "0", "∅"):
            return 0
        elements = [int(ch) for ch in text]
    x = 0
    for i in elements:
        if i < 1:
            raise GroundError(f"element {i} is not a positive integer")
        x |= bit(i)
    return x


S = subset


def elements(x: int) -> list[int]:
    out = []
    i = 1
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def size(x: int) -> int:
    return bin(x).count("1")


def smin(x: int) -> int:
    """Smallest element, 0 for the empty set."""
    return (x & -x).bit_length() if x else 0


def smax(x: int) -> int:
    """Largest element, 0 for the empty set."""
    return x.bit_length()


def fmt(x: int) -> str:
    """Compact label: ``124`` for {1,2,4}, ``∅`` for the empty set."""
    els = elements(x)
    if not els:
        return "∅"
    if els[-1] < 10:
        return "".join(map(str, els))
    return "{" + ",".join(map(str, els)) + "}"


def complement(x: int, n: int) -> int:
    return full(n) & ~x


def mirror(x: int, n: int) -> int:
    """Relabel i -> n + 1 - i."""
    return subset(n + 1 - i for i in elements(x))


def all_subsets(n: int) -> range:
    return range(1 << n)


def intervals(n: int) -> Collection:
    """The intervals {i, ..., j} of [n] together with the empty set."""
    out = {0}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out.add(full(j) & ~full(i - 1))
    return frozenset(out)


def co_intervals(n: int) -> Collection:
    return frozenset(complement(x, n) for x in intervals(n))


def rim(n: int) -> Collection:
    """Prefixes [i] and suffixes [n] - [i]: the vertices on both boundary paths."""
    return frozenset({full(i) for i in range(n + 1)} | {full(n) & ~full(i) for i in range(n + 1)})


# -- relations --------------------------------------------------------------

def _same_ground(a: int, b: int, n: int | None) -> None:
    if a < 0 or b < 0:
        raise GroundError("subsets are non-negative bitmasks")
    if n is not None and not (in_ground(a, n) and in_ground(b, n)):
        raise GroundError(f"{fmt(a)} or {fmt(b)} is not a subset of [{n}]")


def rel_global_lt(a: int, b: int, n: int | None = None) -> bool:
    """A < B: max(A) < min(B), with max(∅) = min(∅) = 0."""
    _same_ground(a, b, n)
    return smax(a) < smin(b)


def rel_lessdot(a: int, b: int, n: int | None = None) -> bool:
    """A ⋖ B: (A - B) < (B - A)."""
    _same_ground(a, b, n)
    return smax(a & ~b) < smin(b & ~a)


def rel_split(a: int, b: int, n: int | None = None) -> bool:
    """A ▷ B: B - A splits into nonempty B' < (A - B) < B''."""
    _same_ground(a, b, n)
    amb = a & ~b
    if not amb:
        return False
    bma = b & ~a
    lo, hi = smin(amb), smax(amb)
    below = bma & full(lo - 1)
    above = bma & ~full(hi)
    return bool(below) and bool(above) and (below | above) == bma


def surrounds(a: int, b: int, n: int | None = None) -> bool:
    """True iff no i < j < k has i, k in B - A and j in A - B."""
    _same_ground(a, b, n)
    bma = b & ~a
    amb = a & ~b
    if not bma or not amb:
        return True
    lo, hi = smin(bma), smax(bma)
    # elements of A - B strictly between min and max of B - A
    return amb & full(hi - 1) & ~full(lo) == 0


def separated(kind: Kind | str, a: int, b: int, n: int | None = None) -> bool:
    kind = Kind.parse(kind)
    _same_ground(a, b, n)
    if kind is Kind.STRONG:
        return a == b or rel_lessdot(a, b) or rel_lessdot(b, a)
    if kind is Kind.WEAK:
        sa, sb = size(a), size(b)
        return (sa <= sb and surrounds(a, b)) or (sb <= sa and surrounds(b, a))
    return surrounds(a, b) or surrounds(b, a)


def chord_crossing(a: int, b: int) -> tuple[int, int, int, int] | None:
    """Return i<j<k<l alternating between A - B and B - A, if any."""
    amb, bma = elements(a & ~b), elements(b & ~a)
    marks = sorted([(i, 0) for i in amb] + [(i, 1) for i in bma])
    for quad in combinations(marks, 4):
        sides = [s for _, s in quad]
        if sides in ([0, 1, 0, 1], [1, 0, 1, 0]):
            return tuple(i for i, _ in quad)  # type: ignore[return-value]
    return None


# -- collections ------------------------------------------------------------

def violating_pair(kind: Kind | str, coll: Iterable[int], n: int | None = None) -> tuple[int, int] | None:
    kind = Kind.parse(kind)
    members = sorted(set(coll))
    for a, b in combinations(members, 2):
        if not separated(kind, a, b, n):
            return a, b
    return None


def is_separated_collection(kind: Kind | str, coll: Iterable[int], n: int | None = None) -> bool:
    return violating_pair(kind, coll, n) is None


def is_maximal_in(kind: Kind | str, coll: Iterable[int], n: int,
                  domain: Iterable[int] | None = None) -> bool:
    """True iff ``coll`` is separated and no member of ``domain`` can be added."""
    kind = Kind.parse(kind)
    coll = frozenset(coll)
    dom = frozenset(all_subsets(n)) if domain is None else frozenset(domain)
    if not coll <= dom:
        raise ValueError("collection is not contained in the domain")
    if not is_separated_collection(kind, coll, n):
        return False
    return not any(all(separated(kind, x, c) for c in coll) for x in sorted(dom - coll))


def greedy_complete(kind: Kind | str, coll: Iterable[int], n: int,
                    rng: random.Random | None = None,
                    domain: Iterable[int] | None = None) -> Collection:
    """Extend ``coll`` to a maximal separated collection.

    Candidates are scanned in ascending bit order, or in a shuffled order when
    ``rng`` is given.
    """
    kind = Kind.parse(kind)
    check_ground(n)
    current = set(coll)
    pair = violating_pair(kind, current, n)
    if pair is not None:
        raise SeparationError(f"input not {kind.name.lower()} separated: {fmt(pair[0])}, {fmt(pair[1])}")
    candidates = sorted(set(all_subsets(n) if domain is None else domain) - current)
    if rng is not None:
        rng.shuffle(candidates)
    for x in candidates:
        if all(separated(kind, x, c) for c in current):
            current.add(x)
    return frozenset(current)


def rank_formula(kind: Kind | str, n: int) -> int:
    kind = Kind.parse(kind)
    base = comb(n, 2) + n + 1
    return base + comb(n, 3) if kind is Kind.CHORD else base


def compatibility_graph(kind: Kind | str, n: int, domain: Iterable[int] | None = None) -> nx.Graph:
    kind = Kind.parse(kind)
    nodes = sorted(set(all_subsets(n) if domain is None else domain))
    g = nx.Graph()
    g.add_nodes_from(nodes)
    g.add_edges_from((a, b) for a, b in combinations(nodes, 2) if separated(kind, a, b))
    return g


def maximal_collections(kind: Kind | str, n: int,
                        domain: Iterable[int] | None = None) -> list[Collection]:
    """All inclusion-maximal separated collections inside ``domain``.

    These are the maximal cliques of the compatibility graph; only sensible
    for small domains.
    """
    g = compatibility_graph(kind, n, domain)
    found = [frozenset(c) for c in nx.find_cliques(g)]
    return sorted(found, key=lambda c: sorted(c))


@dataclass
class PurityReport:
    kind: Kind
    n: int
    mode: str
    expected: int
    sizes: Counter = field(default_factory=Counter)

    @property
    def count(self) -> int:
        return sum(self.sizes.values())

    @property
    def ok(self) -> bool:
        return set(self.sizes) == {self.expected}

    def summary(self) -> str:
        got = ", ".join(f"{s}x{c}" for s, c in sorted(self.sizes.items()))
        status = "pure" if self.ok else "NOT pure"
        return (f"{self.kind.name.lower()} n={self.n} {self.mode}: {self.count} maximal "
                f"collections, sizes [{got}], rank {self.expected}: {status}")


def verify_purity(kind: Kind | str, n: int, trials: int | None = None,
                  seed: int = 0, exhaustive: bool | None = None) -> PurityReport:
    """Check that every maximal collection found has the size given by the rank formula.

    Exhaustive mode enumerates all maximal collections (n <= 4); otherwise
    ``trials`` random-order greedy completions are sampled.
    """
    kind = Kind.parse(kind)
    check_ground(n)
    if exhaustive is None:
        exhaustive = trials is None
    report = PurityReport(kind, n, "exhaustive" if exhaustive else "sampled", rank_formula(kind, n))
    if exhaustive:
        if n > 4:
            raise ValueError("exhaustive purity check is limited to n <= 4")
        for coll in maximal_collections(kind, n):
            report.sizes[len(coll)] += 1
        return report
    if n > 7:
        raise ValueError("sampled purity check is limited to n <= 7")
    rng = random.Random(seed)
    for _ in range(trials or 100):
        report.sizes[len(greedy_complete(kind, (), n, rng=rng))] += 1
    return report


# -- weak flips on spectra ---------------------------------------------------

def weak_flips(coll: Collection, n: int) -> list[tuple[int, int, int, int, str]]:
    """Available weak flips (X, i, j, k, direction) on a maximal w-collection.

    Raising replaces Xj by Xik in the presence of Xi, Xk, Xij, Xjk; lowering is
    the reverse.
    """
    out = []
    for i, j, k in combinations(range(1, n + 1), 3):
        bi, bj, bk = bit(i), bit(j), bit(k)
        for x in coll:
            # x plays the role of Xi: recover X
            if not x & bi or x & (bj | bk):
                continue
            base = x & ~bi
            witnesses = (base | bi, base | bk, base | bi | bj, base | bj | bk)
            if not all(w in coll for w in witnesses):
                continue
            if base | bj in coll and base | bi | bk not in coll:
                out.append((base, i, j, k, "raise"))
            elif base | bi | bk in coll and base | bj not in coll:
                out.append((base, i, j, k, "lower"))
    return sorted(out)


def apply_weak_flip(coll: Collection, flip: tuple[int, int, int, int, str]) -> Collection:
    base, i, j, k, direction = flip
    xj, xik = base | bit(j), base | bit(i) | bit(k)
    if direction == "raise":
        return (coll - {xj}) | {xik}
    return (coll - {xik}) | {xj}


def random_weak_walk(n: int, steps: int, rng: random.Random,
                     start: Collection | None = None) -> Collection:
    """Random walk over maximal w-collections by weak flips, from the intervals."""
    coll = intervals(n) if start is None else frozenset(start)
    for _ in range(steps):
        flips = weak_flips(coll, n)
        if not flips:
            break
        coll = apply_weak_flip(coll, rng.choice(flips))
    return coll
