"""The 4-strand diagram monoid and the 14 x 14 tangle transfer matrix.

Boundary points are numbered 0..3 for T1..T4 (top, left to right) and 4..7
for B1..B4 (bottom, left to right). A basis element is a non-crossing perfect
matching of those eight points; going round the boundary they read
T1 T2 T3 T4 B4 B3 B2 B1.

The fundamental tangle G is a crossing between strands 2 and 3 followed by
crossings between strands 1-2 and 3-4. Every shadow crossing expands into
its two smoothings, the identity and the cup/cap ``e_i``, so G expands into
eight loop-free basis elements. Stacking copies of G and tracking the basis
coefficients gives the state matrix M with A_n = M^n A_0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InexactDivision, NoIsomorphism
from .polyring import ONE, X, ZERO, IntPoly, PolyMatrix, mat_vec, poly_div_exact, render

STRANDS = 4
NUM_POINTS = 2 * STRANDS
POINT_NAMES = ("T1", "T2", "T3", "T4", "B1", "B2", "B3", "B4")
# boundary circle position of each point
_CYCLIC_POS = (0, 1, 2, 3, 7, 6, 5, 4)
# top caps T1-T2, T3-T4 and bottom cups B1-B2, B3-B4
CLOSURE_ARCS = ((0, 1), (2, 3), (4, 5), (6, 7))

# G as a word of crossings in strand gaps, top to bottom (gap i joins strands i+1, i+2)
G_WORD = (1, 0, 2)
G_WORD_ALTERNATE = (0, 2, 1)


@dataclass(frozen=True, order=True)
class Pairing:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        points = sorted(v for p in pairs for v in p)
        if points != list(range(NUM_POINTS)):
            raise ValueError(f"not a perfect matching of the 8 boundary points: {pairs}")

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> Pairing:
        return cls(tuple(pairs))

    def partner(self, p: int) -> int:
        for a, b in self.pairs:
            if a == p:
                return b
            if b == p:
                return a
        raise KeyError(p)

    def is_noncrossing(self) -> bool:
        return is_noncrossing(self.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{POINT_NAMES[a]}-{POINT_NAMES[b]}" for a, b in self.pairs) + "}"


@dataclass(frozen=True)
class WeightedPairing:
    loops: int
    pairing: Pairing


def is_noncrossing(pairs: Iterable[tuple[int, int]]) -> bool:
    chords = [tuple(sorted((_CYCLIC_POS[a], _CYCLIC_POS[b]))) for a, b in pairs]
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        if (a < c < b) != (a < d < b):
            return False
    return True


def _perfect_matchings(points: list[int]):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, other in enumerate(rest):
        for tail in _perfect_matchings(rest[:i] + rest[i + 1:]):
            yield ((first, other),) + tail


IDENTITY = Pairing(tuple((i, i + STRANDS) for i in range(STRANDS)))


def cup_cap(gap: int) -> Pairing:
    """``e_gap``: caps T(gap+1)-T(gap+2) and B(gap+1)-B(gap+2), other strands straight."""
    pairs = [(gap, gap + 1), (gap + STRANDS, gap + 1 + STRANDS)]
    pairs += [(i, i + STRANDS) for i in range(STRANDS) if i not in (gap, gap + 1)]
    return Pairing(tuple(pairs))


def enumerate_basis() -> list[Pairing]:
    """The 14 non-crossing matchings, identity first, others in lexicographic order."""
    found = sorted(Pairing(m) for m in _perfect_matchings(list(range(NUM_POINTS))) if is_noncrossing(m))
    found.remove(IDENTITY)
    return [IDENTITY] + found


def _find(parent: list[int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def compose(upper: Pairing, lower: Pairing) -> WeightedPairing:
    """Stack ``upper`` on ``lower``: glue upper's bottom points to lower's top points.

    Nodes 0..3 are the result's top, 4..7 the glued middle row, 8..11 the
    result's bottom. Components with no outer node are closed loops.
    """
    parent = list(range(3 * STRANDS))
    for a, b in upper.pairs:
        parent[_find(parent, a)] = _find(parent, b)
    for a, b in lower.pairs:
        parent[_find(parent, a + STRANDS)] = _find(parent, b + STRANDS)
    outer = [*range(STRANDS), *range(2 * STRANDS, 3 * STRANDS)]
    ends: dict[int, list[int]] = {}
    for v in outer:
        ends.setdefault(_find(parent, v), []).append(v if v < STRANDS else v - STRANDS)
    roots = {_find(parent, v) for v in range(3 * STRANDS)}
    loops = len(roots) - len(ends)
    return WeightedPairing(loops, Pairing(tuple(tuple(e) for e in ends.values())))


def compose_weighted(a: WeightedPairing, b: WeightedPairing) -> WeightedPairing:
    c = compose(a.pairing, b.pairing)
    return WeightedPairing(a.loops + b.loops + c.loops, c.pairing)


def expand_word(word: Sequence[int]) -> dict[Pairing, IntPoly]:
    """Smooth every crossing of a tangle word both ways; map pairing -> sum of x^loops."""
    out: dict[Pairing, IntPoly] = {}
    for choice in itertools.product((False, True), repeat=len(word)):
        state = WeightedPairing(0, IDENTITY)
        for gap, cap in zip(word, choice):
            state = compose_weighted(state, WeightedPairing(0, cup_cap(gap) if cap else IDENTITY))
        out[state.pairing] = out.get(state.pairing, ZERO) + IntPoly.monomial(state.loops)
    return out


def expand_G(word: Sequence[int] = G_WORD) -> list[IntPoly]:
    """Coefficient vector of the fundamental tangle over :func:`enumerate_basis`."""
    basis = enumerate_basis()
    expansion = expand_word(word)
    return [expansion.get(g, ZERO) for g in basis]


def build_state_matrix(word: Sequence[int] = G_WORD) -> PolyMatrix:
    """M[j][i] collects x^loops over G-states h with compose(g_i, h) = g_j."""
    basis = enumerate_basis()
    index = {g: i for i, g in enumerate(basis)}
    expansion = expand_word(word)
    size = len(basis)
    cells = [[ZERO] * size for _ in range(size)]
    for i, g in enumerate(basis):
        for h, coeff in expansion.items():
            w = compose(g, h)
            j = index[w.pairing]
            cells[j][i] = cells[j][i] + coeff * IntPoly.monomial(w.loops)
    return PolyMatrix.from_rows(cells)


_CACHE: dict[tuple, PolyMatrix] = {}


def state_matrix(word: Sequence[int] = G_WORD) -> PolyMatrix:
    key = tuple(word)
    if key not in _CACHE:
        _CACHE[key] = build_state_matrix(key)
    return _CACHE[key]


def initial_vector() -> list[IntPoly]:
    return [ONE] + [ZERO] * 13


def iterate_states(n: int, matrix: PolyMatrix | None = None) -> list[IntPoly]:
    if n < 0:
        raise ValueError("n must be >= 0")
    m = state_matrix() if matrix is None else matrix
    v = initial_vector()
    for _ in range(n):
        v = mat_vec(m, v)
    return v


def closure_circles(g: Pairing) -> int:
    parent = list(range(NUM_POINTS))
    for a, b in g.pairs + CLOSURE_ARCS:
        parent[_find(parent, a)] = _find(parent, b)
    return len({_find(parent, v) for v in range(NUM_POINTS)})


def closure_value(g: Pairing) -> IntPoly:
    return IntPoly.monomial(closure_circles(g))


def closure_vector() -> list[IntPoly]:
    return [closure_value(g) for g in enumerate_basis()]


def closed_bracket(n: int, matrix: PolyMatrix | None = None) -> IntPoly:
    if n < 1:
        raise ValueError("n must be >= 1")
    a = iterate_states(n, matrix)
    return sum((ai * ci for ai, ci in zip(a, closure_vector())), ZERO)


S = X + 1


def tangle_bracket_ck(n: int, matrix: PolyMatrix | None = None) -> IntPoly:
    """<CK_n> = <closure of G^n> / (x+1)^2, checked to divide exactly."""
    closed = closed_bracket(n, matrix)
    try:
        return poly_div_exact(closed, S * S)
    except InexactDivision:
        raise InexactDivision(f"closure of G^{n} = {closed} is not divisible by (x+1)^2") from None


# -- the reference 14 x 14 matrix and its basis indexing --------------------

_SYMBOLS = {"0": ZERO, "1": ONE, "s": X + 1, "t": X + 2, "u": X * X + 3 * X + 2, "v": X * X + 3 * X + 3}
_REFERENCE_ROWS = """
1 0 0 0 0 0 0 0 0 0 0 0 0 0
1 t 0 0 0 s 0 0 0 0 0 0 0 1
1 0 s 0 1 0 0 1 0 0 0 0 0 0
1 0 0 t 0 0 s 0 0 0 0 0 1 0
1 0 s 0 t 0 0 1 0 0 0 0 0 0
0 1 0 0 0 s 0 0 0 0 0 0 0 1
0 0 0 1 0 0 s 0 0 0 0 0 1 0
1 0 s 0 1 0 0 t 0 0 0 0 0 0
1 0 s 0 t 0 0 t v u 0 0 0 0
0 0 0 0 0 0 0 0 1 s 0 0 0 0
1 t 0 t 0 s s 0 0 0 v u t t
0 0 0 0 0 0 0 0 0 0 1 s 0 0
0 0 0 1 0 0 s 0 0 0 0 0 t 0
0 1 0 0 0 s 0 0 0 0 0 0 0 t
"""
REFERENCE_MATRIX = PolyMatrix.from_rows(
    [[_SYMBOLS[tok] for tok in line.split()] for line in _REFERENCE_ROWS.strip().splitlines()]
)
# circles in the closure of g_1 .. g_14 under the reference indexing
REFERENCE_CLOSURE_CIRCLES = (2, 3, 1, 3, 2, 2, 2, 2, 3, 2, 4, 3, 3, 3)
REFERENCE_G_SUPPORT = (1, 2, 3, 4, 5, 8, 9, 11)


def match_reference_matrix(
    derived: PolyMatrix,
    reference: PolyMatrix = REFERENCE_MATRIX,
    closures: Sequence[int] | None = None,
    reference_closures: Sequence[int] = REFERENCE_CLOSURE_CIRCLES,
) -> tuple[int, ...]:
    """Find a relabelling of the derived basis that reproduces the reference matrix.

    Returns ``perm`` with ``perm[i]`` the 1-based reference index of derived
    basis element i, such that ``reference[perm[j]-1, perm[i]-1] == derived[j, i]``
    for all i, j. The identity must map to index 1 and closure circle counts
    must agree. Raises NoIsomorphism when no such relabelling exists.
    """
    size = derived.rows
    if (derived.rows, derived.cols) != (reference.rows, reference.cols) or derived.rows != derived.cols:
        raise NoIsomorphism("matrix shapes differ")
    if closures is None:
        closures = [closure_circles(g) for g in enumerate_basis()]

    def signature(m: PolyMatrix, i: int, cl: Sequence[int]):
        return (
            cl[i],
            m[i, i],
            tuple(sorted(e.coeffs for e in m.row(i))),
            tuple(sorted(e.coeffs for e in m.column(i))),
        )

    ref_sig = [signature(reference, j, reference_closures) for j in range(size)]
    candidates = []
    for i in range(size):
        sig = signature(derived, i, closures)
        cands = [j for j in range(size) if ref_sig[j] == sig]
        if i == 0:
            cands = [j for j in cands if j == 0]
        candidates.append(cands)

    order = sorted(range(size), key=lambda i: len(candidates[i]))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int, j: int) -> bool:
        if derived[i, i] != reference[j, j]:
            return False
        for i2, j2 in assign.items():
            if derived[i, i2] != reference[j, j2] or derived[i2, i] != reference[j2, j]:
                return False
        return True

    def search(pos: int) -> bool:
        if pos == size:
            return True
        i = order[pos]
        for j in candidates[i]:
            if j in used or not consistent(i, j):
                continue
            assign[i] = j
            used.add(j)
            if search(pos + 1):
                return True
            del assign[i]
            used.discard(j)
        return False

    if not search(0):
        raise NoIsomorphism("derived state matrix is not a relabelling of the reference matrix")
    return tuple(assign[i] + 1 for i in range(size))


def fundamental_word() -> tuple[int, ...]:
    """The stacking order of G whose state matrix relabels onto the reference matrix."""
    for word in (G_WORD, G_WORD_ALTERNATE):
        expansion = expand_word(word)
        if len(expansion) != 8 or any(c != ONE for c in expansion.values()):
            continue
        try:
            match_reference_matrix(state_matrix(word))
        except NoIsomorphism:
            continue
        return tuple(word)
    raise NoIsomorphism("neither stacking order of G reproduces the reference matrix")


def permute_to_reference(vector: Sequence[IntPoly], perm: Sequence[int]) -> list[IntPoly]:
    """Reorder a derived-basis vector into reference indexing."""
    out = [ZERO] * len(vector)
    for i, j in enumerate(perm):
        out[j - 1] = vector[i]
    return out


def format_state_matrix(m: PolyMatrix, perm: Sequence[int] | None = None) -> str:
    """14 x 14 grid of polynomial strings, plus the matching permutation if given."""
    cells = [[render(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
    width = max(len(c) for row in cells for c in row)
    lines = ["  ".join(c.rjust(width) for c in row) for row in cells]
    if perm is not None:
        lines.append("")
        lines.append("perm: " + " ".join(f"{i + 1}->{j}" for i, j in enumerate(perm)))
    return "\n".join(lines)


# -- floating-point checks of the radical forms -----------------------------


def _radicals(x0: float):
    r = math.sqrt(2 * x0 + 3)
    p = x0 * x0 + 4 * x0 + 4
    q = math.sqrt(x0**4 + 4 * x0**3 + 12 * x0**2 + 20 * x0 + 12)
    return r, p, q


def charpoly_closed_form(lam: float, x0: float) -> float:
    r, p, q = _radicals(x0)
    return (
        (lam - 1)
        * (lam - x0 - 1) ** 3
        * (lam - x0 - 2 - r) ** 3
        * (lam - x0 - 2 + r) ** 3
        * (lam - (p - q) / 2) ** 2
        * (lam - (p + q) / 2) ** 2
    )


def charpoly_spot_check(lam: float, x0: float, matrix: PolyMatrix | None = None) -> float:
    """Relative error between det(lam I - M(x0)) and the factored characteristic polynomial."""
    m = np.array((REFERENCE_MATRIX if matrix is None else matrix).evaluate(x0))
    det = float(np.linalg.det(lam * np.eye(m.shape[0]) - m))
    closed = charpoly_closed_form(lam, x0)
    return abs(det - closed) / max(abs(closed), 1e-300)


def basis_coefficient_closed_form(i: int, n: int, x0: float) -> float:
    """a_i^(n) in reference indexing from its radical form, for i in {1, 3, 5}.

    The (x^2-1)^2 and q factors of the common prefactor cancel by hand, which
    keeps x0 = 1 usable.
    """
    r = math.sqrt(2 * x0 + 3)
    l2 = x0 + 2 - r
    l3 = x0 + 2 + r
    if i == 1:
        return 1.0
    if i == 3:
        body = l2**n * ((r + 1) * x0 + 2) + l3**n * ((r - 1) * x0 - 2) - 2 * r * x0
        return body / (2 * r * (x0 * x0 - 2))
    if i == 5:
        body = (
            l2**n * (-2 * x0 * x0 - 2 * x0 + 2 - 2 * r)
            + l3**n * (2 * x0 * x0 + 2 * x0 - 2 - 2 * r)
            + 4 * r
        )
        return body / (4 * r * (x0 * x0 - 2))
    raise ValueError("closed forms are provided for a_1, a_3 and a_5 only")
