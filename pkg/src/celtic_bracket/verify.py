"""Cross-method consistency checks run by ``celtic-bracket verify``."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Callable

from . import celtic_grid as grid
from . import celtic_recursion as rec
from . import tangle_monoid as tm
from .fixtures import KNOWN_CLOSURE_MULTISET, KNOWN_ORBITS_N3, KNOWN_TABLE, known_bracket
from .polyring import X, PolyMatrix
from .shadow_core import bracket_statesum


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


@functools.lru_cache(maxsize=None)
def _relation_sides(n: int) -> dict[str, tuple]:
    """Both sides of the four smoothing relations at width 2n, by state sum."""
    d = grid.build_ck(n)
    m = 2 * n - 1
    prev = bracket_statesum(grid.build_ck(n - 1).shadow)

    def bs(ops):
        return bracket_statesum(grid.smooth_all(d, ops).shadow)

    prev_v = bracket_statesum(grid.smooth_at(grid.build_ck(n - 1), 2, m - 2, "V").shadow)
    return {
        "R1": (bs([("H", 2, m)]), (X + 1) ** 2 * prev),
        "R2": (bs([("V", 1, m - 1), ("V", 2, m)]), (X + 1) * prev),
        "R3": (bs([("H", 3, m - 1), ("H", 1, m - 1), ("V", 2, m)]), (X + 1) * prev_v),
        "R4": (bs([("V", 3, m - 1), ("H", 1, m - 1), ("V", 2, m)]), prev),
    }


def corrupt_matrix(m: PolyMatrix) -> PolyMatrix:
    """Deliberately wrong state matrix for fault-injection runs."""
    return m.replace(1, 1, m[1, 1] + 1)


def build_checks(n: int = 5, orbits: bool = False, inject_fault: bool = False) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    matrix = tm.state_matrix()
    if inject_fault:
        matrix = corrupt_matrix(matrix)
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = []

    def add(name):
        def wrap(fn):
            checks.append((name, fn))
            return fn
        return wrap

    @add("celtic-matrix reproduces the known table (n=1..7)")
    def _():
        bad = [k for k in KNOWN_TABLE if rec.celtic_bracket(k).ck != known_bracket(k)]
        return not bad, f"mismatched rows {bad}" if bad else "7 rows equal"

    @add("gf recurrence = celtic-matrix (n=1..12)")
    def _():
        seq = rec.celtic_sequence(12)
        gf = rec.gf_series(12)
        bad = [i + 1 for i in range(12) if seq[i] != gf[i]]
        return not bad, f"differs at n={bad}" if bad else "12 values equal"

    @add("tangle = celtic-matrix (n=1..12)")
    def _():
        seq = rec.celtic_sequence(12)
        bad = []
        for i in range(12):
            try:
                if tm.tangle_bracket_ck(i + 1, matrix) != seq[i]:
                    bad.append(i + 1)
            except Exception as exc:  # inexact division under a corrupted matrix
                bad.append(f"{i + 1} ({type(exc).__name__})")
        return not bad, f"differs at n={bad}" if bad else "12 values equal"

    @add("closure of G^n = (x+1)^2 <CK> (n=1..12)")
    def _():
        seq = rec.celtic_sequence(12)
        bad = [i + 1 for i in range(12) if tm.closed_bracket(i + 1, matrix) != (X + 1) ** 2 * seq[i]]
        return not bad, f"differs at n={bad}" if bad else "12 values equal"

    @add(f"state sum = fast methods (n=1..{n})")
    def _():
        bad = []
        for k in range(1, n + 1):
            ss = bracket_statesum(grid.build_ck(k).shadow)
            if not (ss == rec.celtic_bracket(k).ck == rec.celtic_bracket_gf(k)):
                bad.append(k)
            elif tm.tangle_bracket_ck(k, matrix) != ss:
                bad.append(k)
        return not bad, f"differs at n={bad}" if bad else f"{n} diagrams agree"

    relation_ns = list(range(2, max(3, min(n, 4)) + 1))
    for rel in ("R1", "R2", "R3", "R4"):
        @add(f"smoothing relation {rel} (n={','.join(map(str, relation_ns))})")
        def _(rel=rel):
            bad = [k for k in relation_ns if len(set(_relation_sides(k)[rel])) != 1]
            return not bad, f"fails at n={bad}" if bad else "both sides equal"

    @add("linear coefficients follow A001353 (n=1..12)")
    def _():
        try:
            col = rec.oeis_column_check(12)
        except AssertionError as exc:
            return False, str(exc)
        return True, ", ".join(map(str, col[:7])) + ", ..."

    @add("2x2 matrix trace = (x+2)^2 and det = (x+1)^3")
    def _():
        m = rec.CELTIC_MATRIX
        return m.trace() == (X + 2) ** 2 and m.det2() == (X + 1) ** 3, "trace/det identities"

    @add("monoid basis has 14 elements with the known closure multiset")
    def _():
        basis = tm.enumerate_basis()
        ms: dict[int, int] = {}
        for g in basis:
            c = tm.closure_circles(g)
            ms[c] = ms.get(c, 0) + 1
        return len(basis) == 14 and ms == KNOWN_CLOSURE_MULTISET, f"{len(basis)} elements, closures {dict(sorted(ms.items()))}"

    @add("derived state matrix relabels onto the reference matrix")
    def _():
        try:
            perm = tm.match_reference_matrix(matrix)
        except Exception as exc:
            return False, str(exc)
        return True, "perm " + " ".join(map(str, perm))

    @add("radical closed form of <CK> (x0 in 0.5,1,2,3; n=1..12)")
    def _():
        worst = max(rec.closed_form_spot_check(k, x0) for k in range(1, 13) for x0 in (0.5, 1.0, 2.0, 3.0))
        return worst <= 1e-9, f"max relative error {worst:.2e}"

    @add("factored characteristic polynomial of M (20 samples)")
    def _():
        rng = random.Random(20250101)
        worst = 0.0
        for _ in range(20):
            lam, x0 = rng.uniform(-2.0, 12.0), rng.uniform(0.5, 3.0)
            worst = max(worst, tm.charpoly_spot_check(lam, x0, matrix))
        return worst <= 1e-6, f"max relative error {worst:.2e}"

    @add("barrier distribution n=3 and its D2 orbits")
    def _():
        dist = grid.barrier_component_distribution(3)
        want = dict(enumerate(KNOWN_TABLE[3]))
        want.pop(0)
        o1, o6 = grid.symmetry_orbits(3, 1), grid.symmetry_orbits(3, 6)
        ok = dist == want and o1 == KNOWN_ORBITS_N3[1] and o6 == KNOWN_ORBITS_N3[6]
        return ok, f"k=1 orbits {o1}, k=6 orbits {o6}"

    if orbits:
        @add(f"D2 orbit sizes at n={n}")
        def _():
            dist = grid.barrier_component_distribution(n)
            table = grid.orbit_table(n)
            lines = []
            ok = True
            for k, count in dist.items():
                sizes = table[k]
                ok &= sum(sizes) == count and all(4 % s == 0 for s in sizes)
                lines.append(f"k={k}: {sizes}")
            return ok, "; ".join(lines)

    return checks


def run_checks(n: int = 5, orbits: bool = False, inject_fault: bool = False) -> list[CheckResult]:
    out = []
    for name, fn in build_checks(n, orbits, inject_fault):
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out
