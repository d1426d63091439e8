"""Published reference values used by ``verify`` and the test suite."""

from .polyring import IntPoly

# [x^k]<CK_n> for k = 0.. (row n = 1..7)
KNOWN_TABLE = {
    1: (0, 1, 1),
    2: (0, 4, 7, 4, 1),
    3: (0, 15, 40, 42, 23, 7, 1),
    4: (0, 56, 201, 306, 262, 140, 48, 10, 1),
    5: (0, 209, 943, 1877, 2189, 1672, 881, 325, 82, 13, 1),
    6: (0, 780, 4239, 10412, 15368, 15276, 10841, 5660, 2194, 624, 125, 16, 1),
    7: (0, 2911, 18506, 54051, 96501, 118175, 105495, 71107, 36885, 14817, 4579, 1064, 177, 19, 1),
}


def known_bracket(n: int) -> IntPoly:
    return IntPoly(KNOWN_TABLE[n])


# D2 orbit sizes of the 1- and 6-component configurations on the 4 x 6 grid
KNOWN_ORBITS_N3 = {1: [1, 2, 2, 2, 4, 4], 6: [1]}

# circles in the closures of the 14 basis elements, as a multiset
KNOWN_CLOSURE_MULTISET = {1: 1, 2: 6, 3: 6, 4: 1}
