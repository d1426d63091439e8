"""Shadow diagrams as planar-diagram codes, and the brute-force state sum.

A diagram is a set of crossings, each a 4-tuple of edge-end labels listed
counterclockwise, plus ``P a b`` arc pairings that glue ends together and a
count of crossing-free circles. Smoothing A at a crossing joins positions
{0,1} and {2,3}; smoothing B joins {1,2} and {3,0}.

The bracket of a shadow is the sum over all 2^c smoothings of x^(circles).
Everything else in the package is checked against :func:`bracket_statesum`.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    EmptyDiagram,
    InvalidDiagram,
    LengthMismatch,
    ParseError,
    TooManyCrossings,
)
from .polyring import IntPoly

MAX_STATESUM_CROSSINGS = 30

Crossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class ShadowDiagram:
    crossings: tuple[Crossing, ...] = ()
    pairings: tuple[tuple[int, int], ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in c) for c in self.crossings))
        object.__setattr__(self, "pairings", tuple(tuple(int(v) for v in p) for p in self.pairings))
        if self.free_loops < 0:
            raise InvalidDiagram("negative free loop count")
        seen: Counter[int] = Counter()
        for c in self.crossings:
            if len(c) != 4:
                raise InvalidDiagram(f"crossing {c} does not have four ends")
            seen.update(c)
        for p in self.pairings:
            if len(p) != 2:
                raise InvalidDiagram(f"pairing {p} does not have two ends")
            seen.update(p)
        for label, k in seen.items():
            if label < 0:
                raise InvalidDiagram(f"negative edge-end label {label}")
            if k != 2:
                raise InvalidDiagram(f"edge-end label {label} appears {k} times, expected 2")

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @property
    def labels(self) -> set[int]:
        out: set[int] = set()
        for c in self.crossings:
            out.update(c)
        for p in self.pairings:
            out.update(p)
        return out

    @property
    def num_edge_ends(self) -> int:
        return 4 * len(self.crossings)

    @property
    def num_edges(self) -> int:
        """Edges of the underlying 4-regular graph; free loops count as edges."""
        return 2 * len(self.crossings) + self.free_loops + _closed_arc_cycles(self)

    def is_empty(self) -> bool:
        return not self.crossings and not self.pairings and self.free_loops == 0


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _closed_arc_cycles(d: ShadowDiagram) -> int:
    return _compile(d)[2]


def _compile(d: ShadowDiagram) -> tuple[list[tuple[int, int, int, int]], int, int]:
    """Contract pairings into arcs.

    Returns crossing ends as arc ids, the number of arcs that touch a crossing,
    and the number of pairing-only closed cycles (circles untouched by any
    smoothing).
    """
    index = {label: i for i, label in enumerate(sorted(d.labels))}
    dsu = _DSU(len(index))
    for a, b in d.pairings:
        dsu.union(index[a], index[b])
    roots: dict[int, int] = {}
    ends = []
    for c in d.crossings:
        ids = []
        for label in c:
            r = dsu.find(index[label])
            ids.append(roots.setdefault(r, len(roots)))
        ends.append(tuple(ids))
    all_roots = {dsu.find(i) for i in range(len(index))}
    closed = len(all_roots) - len(roots)
    return ends, len(roots), closed


class CircleCounter:
    """Precompiled circle counter for repeated smoothing queries on one diagram.

    Pairings are contracted once into arcs; each query then runs a fresh
    union-find over the arcs with two unions per crossing.
    """

    def __init__(self, d: ShadowDiagram):
        self.diagram = d
        ends, self.num_arcs, closed = _compile(d)
        self.base = closed + d.free_loops
        self.num_crossings = len(ends)
        # (a, b, c, d) -> A joins (a,b),(c,d); B joins (b,c),(d,a)
        self._ends = ends

    def count(self, bits: int) -> int:
        parent = list(range(self.num_arcs))
        merges = 0
        for c, (e0, e1, e2, e3) in enumerate(self._ends):
            if (bits >> c) & 1:
                pairs = ((e1, e2), (e3, e0))
            else:
                pairs = ((e0, e1), (e2, e3))
            for a, b in pairs:
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[a] = b
                    merges += 1
        return self.num_arcs - merges + self.base

    def histogram(self, start: int = 0, stop: int | None = None) -> Counter[int]:
        if stop is None:
            stop = 1 << self.num_crossings
        hist: Counter[int] = Counter()
        count = self.count
        for bits in range(start, stop):
            hist[count(bits)] += 1
        return hist


def count_circles(d: ShadowDiagram, s: int | Sequence[int]) -> int:
    """Circles left after smoothing every crossing of ``d`` according to ``s``.

    ``s`` is either a bitmask (bit c selects smoothing B at crossing c) or a
    sequence of 0/1 of the same length as the crossing list.
    """
    if isinstance(s, int):
        if s < 0 or s >> len(d.crossings):
            raise LengthMismatch(f"bitmask {s:#x} exceeds {len(d.crossings)} crossings")
        bits = s
    else:
        if len(s) != len(d.crossings):
            raise LengthMismatch(f"{len(s)} choices for {len(d.crossings)} crossings")
        bits = sum((1 << i) for i, b in enumerate(s) if b)
    return CircleCounter(d).count(bits)


def _histogram_chunk(args: tuple[ShadowDiagram, int, int]) -> Counter[int]:
    d, start, stop = args
    return CircleCounter(d).histogram(start, stop)


def state_histogram(d: ShadowDiagram, workers: int | None = 1) -> Counter[int]:
    """Map circle count -> number of states. ``workers`` > 1 fans out over bitmask ranges."""
    c = len(d.crossings)
    if c > MAX_STATESUM_CROSSINGS:
        raise TooManyCrossings(f"{c} crossings exceeds the state-sum limit of {MAX_STATESUM_CROSSINGS}")
    total = 1 << c
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or c < 14:
        return CircleCounter(d).histogram()
    step = -(-total // (workers * 4))
    chunks = [(d, lo, min(lo + step, total)) for lo in range(0, total, step)]
    hist: Counter[int] = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_histogram_chunk, chunks):
            hist.update(part)
    return hist


def bracket_statesum(d: ShadowDiagram, workers: int | None = 1) -> IntPoly:
    """Kauffman bracket of a shadow by enumeration of all 2^c states."""
    hist = state_histogram(d, workers)
    top = max(hist)
    return IntPoly(hist.get(k, 0) for k in range(top + 1))


# -- constructions ---------------------------------------------------------


def make_loop() -> ShadowDiagram:
    return ShadowDiagram(free_loops=1)


def make_foil(n: int) -> ShadowDiagram:
    """Shadow of the (2, n) torus link: a closed chain of ``n`` twists.

    Crossing i is stored as (right-top, left-top, left-bottom, right-bottom),
    so smoothing A turns every twist into a cup/cap pair.
    """
    if n < 1:
        raise ValueError("an n-foil needs n >= 1")

    def lt(i):
        return 4 * i

    def lb(i):
        return 4 * i + 1

    def rb(i):
        return 4 * i + 2

    def rt(i):
        return 4 * i + 3

    crossings = [(rt(i), lt(i), lb(i), rb(i)) for i in range(n)]
    pairings = []
    for i in range(n):
        j = (i + 1) % n
        pairings.append((rt(i), lt(j)))
        pairings.append((rb(i), lb(j)))
    return ShadowDiagram(tuple(crossings), tuple(pairings))


def relabel(d: ShadowDiagram, mapping) -> ShadowDiagram:
    """Apply an injective label map (dict or callable) to every edge end."""
    f = mapping.__getitem__ if isinstance(mapping, dict) else mapping
    return ShadowDiagram(
        tuple(tuple(f(v) for v in c) for c in d.crossings),
        tuple(tuple(f(v) for v in p) for p in d.pairings),
        d.free_loops,
    )


def _max_label(d: ShadowDiagram) -> int:
    return max(d.labels, default=-1)


def connected_sum(a: ShadowDiagram, b: ShadowDiagram) -> ShadowDiagram:
    """Cut one edge of each diagram and splice the four loose ends crosswise.

    Any edge will do for the bracket: splicing always merges the two circles
    that pass through the cut points, so x<a#b> = <a><b>.
    """
    if a.is_empty() or b.is_empty():
        raise EmptyDiagram("connected sum needs at least one edge in each diagram")
    # a free loop is an edge: cutting and splicing it in just disappears into b
    if a.free_loops and not a.labels:
        return ShadowDiagram(b.crossings, b.pairings, b.free_loops + a.free_loops - 1)
    if b.free_loops and not b.labels:
        return ShadowDiagram(a.crossings, a.pairings, a.free_loops + b.free_loops - 1)
    offset = _max_label(a) + 1
    b = relabel(b, lambda v: v + offset)
    fresh = _max_label(b) + 1
    a_cross, a_pair, (la, la2) = _cut_edge(a, fresh)
    b_cross, b_pair, (lb, lb2) = _cut_edge(b, fresh + 1)
    return ShadowDiagram(
        a_cross + b_cross,
        a_pair + b_pair + ((la, lb), (la2, lb2)),
        a.free_loops + b.free_loops,
    )


def _cut_edge(d: ShadowDiagram, fresh: int):
    """Split the edge through the smallest label.

    Returns the crossings and pairings with one occurrence of that label
    renamed to ``fresh``, plus the two loose ends.
    """
    label = min(d.labels)
    crossings = [list(c) for c in d.crossings]
    pairings = [list(p) for p in d.pairings]
    for item in pairings + crossings:
        if label in item:
            item[item.index(label)] = fresh
            break
    return (
        tuple(map(tuple, crossings)),
        tuple(map(tuple, pairings)),
        (label, fresh),
    )


def smooth_crossing(d: ShadowDiagram, index: int, choice: int) -> ShadowDiagram:
    """Replace crossing ``index`` by its A (0) or B (1) smoothing."""
    if not 0 <= index < len(d.crossings):
        raise IndexError(f"no crossing {index}")
    e0, e1, e2, e3 = d.crossings[index]
    arcs = ((e0, e1), (e2, e3)) if choice == 0 else ((e1, e2), (e3, e0))
    crossings = d.crossings[:index] + d.crossings[index + 1:]
    return ShadowDiagram(crossings, d.pairings + arcs, d.free_loops)


# -- PD text format --------------------------------------------------------


def parse_pd(text: str) -> ShadowDiagram:
    """Read ``L`` / ``X a b c d`` / ``P a b`` lines. Blank lines and ``#`` comments are skipped."""
    crossings = []
    pairings = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            values = [int(v) for v in rest]
        except ValueError:
            raise ParseError(f"non-integer label in {raw.strip()!r}", lineno) from None
        if any(v < 0 for v in values):
            raise ParseError("labels must be nonnegative", lineno)
        if head == "L":
            if values:
                raise ParseError("L takes no arguments", lineno)
            loops += 1
        elif head == "X":
            if len(values) != 4:
                raise ParseError(f"X expects 4 labels, got {len(values)}", lineno)
            crossings.append(tuple(values))
        elif head == "P":
            if len(values) != 2:
                raise ParseError(f"P expects 2 labels, got {len(values)}", lineno)
            pairings.append(tuple(values))
        else:
            raise ParseError(f"unknown record {head!r}", lineno)
    try:
        return ShadowDiagram(tuple(crossings), tuple(pairings), loops)
    except InvalidDiagram as exc:
        raise ParseError(str(exc)) from None


def format_pd(d: ShadowDiagram) -> str:
    lines = [f"X {a} {b} {c} {e}" for a, b, c, e in d.crossings]
    lines += [f"P {a} {b}" for a, b in d.pairings]
    lines += ["L"] * d.free_loops
    return "\n".join(lines) + ("\n" if lines else "")


def disjoint_union(parts: Iterable[ShadowDiagram]) -> ShadowDiagram:
    crossings: tuple = ()
    pairings: tuple = ()
    loops = 0
    offset = 0
    for d in parts:
        shifted = relabel(d, lambda v, o=offset: v + o)
        crossings += shifted.crossings
        pairings += shifted.pairings
        loops += d.free_loops
        offset = max(offset, _max_label(shifted) + 1)
    return ShadowDiagram(crossings, pairings, loops)
