"""The barrier-free Celtic plait on a 4 x 2n grid of squares.

Grid lines are numbered 0..4 top to bottom and 0..2n left to right. Crossings
sit on the interior lattice points whose coordinates have odd sum: row 2 at
the odd columns and rows 1 and 3 at the even columns, 3n - 2 in all. Strands
run diagonally between crossings and bounce off the frame like billiard
balls, so the frame corners are never touched.

Each crossing's four ends are stored in the counterclockwise order NE, NW,
SW, SE. Smoothing A therefore joins NE-NW and SW-SE, which is the horizontal
pair ``H``; smoothing B is the vertical pair ``V``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import NoSuchCrossing, TooLarge
from .polyring import IntPoly
from .shadow_core import CircleCounter, ShadowDiagram, smooth_crossing

Kind = Literal["H", "V"]
Address = tuple[int, int]

MAX_BARRIER_N = 8

# counterclockwise, row axis pointing down
_DIRECTIONS = ((-1, 1), (-1, -1), (1, -1), (1, 1))
_KIND_BIT = {"H": 0, "V": 1}


def crossing_addresses(n: int) -> list[Address]:
    """Crossing positions of the 4 x 2n grid in column-major order."""
    if n < 1:
        raise ValueError("grid half-width must be >= 1")
    out = []
    for col in range(1, 2 * n):
        for row in (1, 2, 3):
            if (row + col) % 2 == 1:
                out.append((row, col))
    return out


@dataclass(frozen=True)
class CelticDiagram:
    """A shadow diagram whose crossings remember their grid address."""

    n: int
    shadow: ShadowDiagram
    addresses: tuple[Address, ...]

    def index_of(self, row: int, col: int) -> int:
        try:
            return self.addresses.index((row, col))
        except ValueError:
            raise NoSuchCrossing(f"no crossing at row {row}, column {col}") from None

    @property
    def num_crossings(self) -> int:
        return len(self.addresses)


def build_ck(n: int) -> CelticDiagram:
    """PD code of the Celtic knot shadow on the 4 x 2n grid."""
    addresses = crossing_addresses(n)
    index = {a: i for i, a in enumerate(addresses)}
    width = 2 * n

    def end_label(addr: Address, d: tuple[int, int]) -> int:
        return 4 * index[addr] + _DIRECTIONS.index(d)

    pairings = set()
    for addr in addresses:
        for d in _DIRECTIONS:
            (r, c), (dr, dc) = addr, d
            r, c = r + dr, c + dc
            while (r, c) not in index:
                if r in (0, 4):
                    dr = -dr
                if c in (0, width):
                    dc = -dc
                r, c = r + dr, c + dc
            a = end_label(addr, d)
            b = end_label((r, c), (-dr, -dc))
            pairings.add((min(a, b), max(a, b)))
    crossings = tuple(tuple(4 * i + k for k in range(4)) for i in range(len(addresses)))
    shadow = ShadowDiagram(crossings, tuple(sorted(pairings)))
    return CelticDiagram(n, shadow, tuple(addresses))


def smooth_at(d: CelticDiagram, row: int, col: int, kind: Kind) -> CelticDiagram:
    """Replace the crossing at (row, col) by its horizontal or vertical pair."""
    if kind not in _KIND_BIT:
        raise ValueError(f"smoothing kind must be 'H' or 'V', got {kind!r}")
    i = d.index_of(row, col)
    shadow = smooth_crossing(d.shadow, i, _KIND_BIT[kind])
    return CelticDiagram(d.n, shadow, d.addresses[:i] + d.addresses[i + 1:])


def smooth_all(d: CelticDiagram, ops: Iterable[tuple[Kind, int, int]]) -> CelticDiagram:
    """Apply several ``(kind, row, col)`` smoothings, e.g. ``[("V", 2, 5), ("H", 1, 4)]``."""
    for kind, row, col in ops:
        d = smooth_at(d, row, col, kind)
    return d


# -- barrier configurations ------------------------------------------------


def assignment_to_bits(d: CelticDiagram, assignment: dict[Address, Kind]) -> int:
    """Encode an address -> H/V map as a smoothing bitmask."""
    if set(assignment) != set(d.addresses):
        raise ValueError("assignment must cover exactly the grid's crossings")
    return sum(_KIND_BIT[assignment[a]] << i for i, a in enumerate(d.addresses))


def bits_to_assignment(d: CelticDiagram, bits: int) -> dict[Address, Kind]:
    return {a: ("V" if (bits >> i) & 1 else "H") for i, a in enumerate(d.addresses)}


def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError("grid half-width must be >= 1")
    if n > MAX_BARRIER_N:
        raise TooLarge(f"n={n} needs 2^{3 * n - 2} configurations; limit is n={MAX_BARRIER_N}")


def barrier_component_distribution(n: int) -> dict[int, int]:
    """How many H/V barrier configurations give exactly k components."""
    _check_size(n)
    d = build_ck(n)
    counter = CircleCounter(d.shadow)
    dist: Counter[int] = Counter()
    for bits in range(1 << d.num_crossings):
        dist[counter.count(bits)] += 1
    return dict(sorted(dist.items()))


def symmetry_permutations(n: int) -> dict[str, list[int]]:
    """Crossing-index permutations of the four D2 symmetries of the grid.

    ``perm[i]`` is the index that crossing i is carried to. The H/V label is
    preserved by all four maps.
    """
    addresses = crossing_addresses(n)
    index = {a: i for i, a in enumerate(addresses)}
    maps = {
        "identity": lambda r, c: (r, c),
        "mirror_columns": lambda r, c: (r, 2 * n - c),
        "mirror_rows": lambda r, c: (4 - r, c),
        "rotate_180": lambda r, c: (4 - r, 2 * n - c),
    }
    return {name: [index[f(*a)] for a in addresses] for name, f in maps.items()}


def _permute_bits(bits: int, perm: list[int]) -> int:
    out = 0
    for i, j in enumerate(perm):
        if (bits >> i) & 1:
            out |= 1 << j
    return out


def configurations_by_components(n: int) -> dict[int, list[int]]:
    """Bitmasks of all configurations, grouped by the number of components."""
    _check_size(n)
    d = build_ck(n)
    counter = CircleCounter(d.shadow)
    groups: dict[int, list[int]] = {}
    for bits in range(1 << d.num_crossings):
        groups.setdefault(counter.count(bits), []).append(bits)
    return dict(sorted(groups.items()))


def _orbit_sizes(configs: list[int], perms: list[list[int]]) -> list[int]:
    remaining = set(configs)
    sizes = []
    for bits in configs:
        if bits not in remaining:
            continue
        orbit = {_permute_bits(bits, p) for p in perms}
        remaining -= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def orbit_table(n: int) -> dict[int, list[int]]:
    """Component count k -> sorted D2 orbit sizes, for every k at once."""
    perms = list(symmetry_permutations(n).values())
    return {k: _orbit_sizes(c, perms) for k, c in configurations_by_components(n).items()}


def symmetry_orbits(n: int, k: int) -> list[int]:
    """Sorted orbit sizes of the k-component configurations under D2."""
    configs = configurations_by_components(n).get(k, [])
    return _orbit_sizes(configs, list(symmetry_permutations(n).values()))


def distribution_matches_bracket(dist: dict[int, int], bracket: IntPoly) -> bool:
    return all(bracket[k] == dist.get(k, 0) for k in range(max(bracket.degree, max(dist, default=0)) + 1))
