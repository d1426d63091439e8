import random

import pytest

from celtic_bracket.shadow_core import ShadowDiagram

ACCEPTANCE_LINES: list[str] = []


def random_pd(rng: random.Random, max_crossings: int = 10, max_loops: int = 2) -> ShadowDiagram:
    """Random abstract gluing of crossings (not necessarily planar).

    Ends are matched uniformly; about a third of the matches are written as
    a shared label between two ends instead of a ``P`` record.
    """
    c = rng.randint(1, max_crossings)
    ends = list(range(4 * c))
    rng.shuffle(ends)
    rename = {}
    pairings = []
    for a, b in zip(ends[::2], ends[1::2]):
        if rng.random() < 0.33:
            rename[b] = a
        else:
            pairings.append((a, b))
    crossings = [tuple(rename.get(4 * i + k, 4 * i + k) for k in range(4)) for i in range(c)]
    return ShadowDiagram(tuple(crossings), tuple(pairings), rng.randint(0, max_loops))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
