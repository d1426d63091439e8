"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from celtic_bracket import celtic_grid as grid  # noqa: E402
from celtic_bracket import celtic_recursion as rec  # noqa: E402
from celtic_bracket import tangle_monoid as tm  # noqa: E402
from celtic_bracket.fixtures import known_bracket  # noqa: E402
from celtic_bracket.polyring import X  # noqa: E402
from celtic_bracket.shadow_core import bracket_statesum, connected_sum, relabel  # noqa: E402
from celtic_bracket.verify import _relation_sides  # noqa: E402
from conftest import ACCEPTANCE_LINES, random_pd  # noqa: E402


def _golden_rows():
    rows: dict[int, dict[int, int]] = {}
    for line in (Path(__file__).parent / "data" / "table1.golden").read_text().splitlines():
        n, k, c = map(int, line.split(","))
        rows.setdefault(n, {})[k] = c
    return rows


def criterion_1():
    t = time.perf_counter()
    golden = _golden_rows()
    bad = []
    for n in range(1, 8):
        want = golden[n]
        for name, p in (
            ("celtic-matrix", rec.celtic_bracket(n).ck),
            ("gf", rec.celtic_bracket_gf(n)),
            ("tangle", tm.tangle_bracket_ck(n)),
        ):
            if {k: p[k] for k in range(1, p.degree + 1)} != want or p[0] != 0:
                bad.append((n, name))
    dt = time.perf_counter() - t
    return not bad and dt < 1.0, f"3 methods x 7 rows exact, {dt:.3f}s (< 1 s)" + (f", mismatches {bad}" if bad else "")


def criterion_2():
    t = time.perf_counter()
    bad = []
    for n in range(1, 7):
        ss = bracket_statesum(grid.build_ck(n).shadow)
        if not ss == rec.celtic_bracket(n).ck == rec.celtic_bracket_gf(n) == tm.tangle_bracket_ck(n):
            bad.append(n)
    base = time.perf_counter() - t
    t = time.perf_counter()
    ok7 = bracket_statesum(grid.build_ck(7).shadow) == rec.celtic_bracket(7).ck
    dt7 = time.perf_counter() - t
    ok = not bad and ok7 and dt7 < 30.0
    return ok, f"n=1..6 agree ({base:.2f}s); optional n=7 {'agrees' if ok7 else 'DIFFERS'} in {dt7:.1f}s (< 30 s)"


def criterion_3():
    t = time.perf_counter()
    seq = rec.celtic_sequence(12)
    bad = [n for n in range(1, 13) if tm.closed_bracket(n) != (X + 1) ** 2 * seq[n - 1]]
    dt = time.perf_counter() - t
    return not bad and dt < 1.0, f"n=1..12 exact, {dt:.3f}s (< 1 s)"


def criterion_4():
    t = time.perf_counter()
    bad = [(n, r) for n in (2, 3) for r, (lhs, rhs) in _relation_sides(n).items() if lhs != rhs]
    dt = time.perf_counter() - t
    return not bad and dt < 5.0, f"R1-R4 at n=2,3 by state sum, {dt:.3f}s (< 5 s)"


def criterion_5():
    t = time.perf_counter()
    dist = grid.barrier_component_distribution(3)
    o1, o6 = grid.symmetry_orbits(3, 1), grid.symmetry_orbits(3, 6)
    dt = time.perf_counter() - t
    ok = dist == {1: 15, 2: 40, 3: 42, 4: 23, 5: 7, 6: 1} and o1 == [1, 2, 2, 2, 4, 4] and o6 == [1]
    return ok and dt < 1.0, f"distribution {dist}, k=1 orbits {o1}, k=6 orbits {o6}, {dt:.3f}s (< 1 s)"


def criterion_6():
    col = [p[1] for p in rec.celtic_sequence(7)]
    rec_ok = all(col[i] == 4 * col[i - 1] - col[i - 2] for i in range(2, 7))
    return col == [1, 4, 15, 56, 209, 780, 2911] and rec_ok, f"column {col}, a_n = 4a_(n-1) - a_(n-2)"


def criterion_7():
    t = time.perf_counter()
    basis = tm.enumerate_basis()
    ms: dict[int, int] = {}
    for g in basis:
        c = tm.closure_circles(g)
        ms[c] = ms.get(c, 0) + 1
    m = tm.build_state_matrix()
    perm = tm.match_reference_matrix(m)
    exact = all(tm.REFERENCE_MATRIX[perm[j] - 1, perm[i] - 1] == m[j, i] for i in range(14) for j in range(14))
    dt = time.perf_counter() - t
    ok = len(basis) == 14 and ms == {1: 1, 2: 6, 3: 6, 4: 1} and exact and perm[0] == 1 and dt < 5.0
    return ok, f"14 elements, closures {dict(sorted(ms.items()))}, perm {perm}, {dt:.3f}s (< 5 s)"


def criterion_8():
    worst_cf = max(rec.closed_form_spot_check(n, x0) for n in range(1, 13) for x0 in (0.5, 1.0, 2.0, 3.0))
    rng = random.Random(20250101)
    worst_cp = max(tm.charpoly_spot_check(rng.uniform(-2.0, 12.0), rng.uniform(0.5, 3.0)) for _ in range(20))
    ok = worst_cf <= 1e-9 and worst_cp <= 1e-6
    return ok, f"closed form max rel err {worst_cf:.1e} (<= 1e-9); charpoly max rel err {worst_cp:.1e} (<= 1e-6)"


def criterion_9():
    rng = random.Random(9)
    sums = all(bracket_statesum(d)(1.0) == 2 ** d.num_crossings for d in (random_pd(rng) for _ in range(50)))
    relabels = True
    for _ in range(20):
        d = random_pd(rng)
        labels = sorted(d.labels)
        image = rng.sample(range(1000), len(labels))
        relabels &= bracket_statesum(relabel(d, dict(zip(labels, image)))) == bracket_statesum(d)
    sums_cs = True
    for _ in range(20):
        a, b = random_pd(rng, 6), random_pd(rng, 6)
        sums_cs &= X * bracket_statesum(connected_sum(a, b)) == bracket_statesum(a) * bracket_statesum(b)
    basis = tm.enumerate_basis()
    assoc = True
    for _ in range(200):
        a, b, c = (tm.WeightedPairing(rng.randint(0, 3), rng.choice(basis)) for _ in range(3))
        assoc &= tm.compose_weighted(tm.compose_weighted(a, b), c) == tm.compose_weighted(a, tm.compose_weighted(b, c))
    flags = {"coefficient sum (50)": sums, "relabel (20)": relabels, "connected sum (20)": sums_cs, "associativity (200)": assoc}
    return all(flags.values()), ", ".join(f"{k} {'ok' if v else 'FAILED'}" for k, v in flags.items())


CRITERIA = [
    (1, "coefficient table reproduction", criterion_1),
    (2, "state-sum oracle agreement", criterion_2),
    (3, "closure identity", criterion_3),
    (4, "smoothing relations R1-R4", criterion_4),
    (5, "barrier combinatorics", criterion_5),
    (6, "A001353 column", criterion_6),
    (7, "monoid certification", criterion_7),
    (8, "radical closed forms", criterion_8),
    (9, "property suites", criterion_9),
]


def _line(num, title, ok, detail):
    return f"criterion {num} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn):
    ok, detail = fn()
    line = _line(num, title, ok, detail)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [(num, title, *fn()) for num, title, fn in CRITERIA]
    for r in results:
        print(_line(*r))
    sys.exit(0 if all(r[2] for r in results) else 1)
