"""Fast exact brackets for the Celtic family via a 2x2 transfer matrix.

The pair (<CK_n>, <V CK_n>) - the bracket and the bracket with the last
middle-row crossing split vertically - advances from width 2n-2 to 2n by

    [<CK_n>  ]   [x^2+3x+3  x+1] [<CK_{n-1}>  ]
    [<V CK_n>] = [x+2       x+1] [<V CK_{n-1}>]

starting from (x^2+x, x) at n = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .polyring import ONE, X, IntPoly, PolyMatrix, ZERO, mat_vec, poly_eval_float

MAX_MATRIX_N = 12

CELTIC_MATRIX = PolyMatrix.from_rows([
    [X * X + 3 * X + 3, X + 1],
    [X + 2, X + 1],
])
CK_1 = X * X + X
VCK_1 = X


@dataclass(frozen=True)
class CelticStatePair:
    n: int
    ck: IntPoly
    vck: IntPoly


def celtic_bracket(n: int, matrix: PolyMatrix = CELTIC_MATRIX) -> CelticStatePair:
    if n < 1:
        raise ValueError("n must be >= 1")
    v = [CK_1, VCK_1]
    for _ in range(n - 1):
        v = mat_vec(matrix, v)
    return CelticStatePair(n, v[0], v[1])


def celtic_sequence(n_max: int) -> list[IntPoly]:
    """<CK_n> for n = 1..n_max from a single pass of the iteration."""
    out = []
    v = [CK_1, VCK_1]
    for n in range(1, n_max + 1):
        if n > 1:
            v = mat_vec(CELTIC_MATRIX, v)
        out.append(v[0])
    return out


# generating function  sum_n <CK_n> y^n = N(y) / D(y)
GF_NUMERATOR = (ZERO, X * (X + 1), -(X * X) * (X + 1))
GF_DENOMINATOR = (ONE, -((X + 2) ** 2), (X + 1) ** 3)


def gf_series(n_max: int) -> list[IntPoly]:
    """Coefficients b_1..b_{n_max} of the power series of N(y)/D(y) in y.

    D has constant term 1, so b_n = N_n - D_1 b_{n-1} - D_2 b_{n-2}; past the
    numerator's degree this is the scalar recurrence
    b_n = (x+2)^2 b_{n-1} - (x+1)^3 b_{n-2}.
    """
    b = [ZERO] * (n_max + 1)
    for n in range(n_max + 1):
        acc = GF_NUMERATOR[n] if n < len(GF_NUMERATOR) else ZERO
        for k in range(1, len(GF_DENOMINATOR)):
            if n - k >= 0:
                acc = acc - GF_DENOMINATOR[k] * b[n - k]
        b[n] = acc
    return b[1:]


def celtic_bracket_gf(n: int) -> IntPoly:
    if n < 1:
        raise ValueError("n must be >= 1")
    return gf_series(n)[n - 1]


# -- floating-point checks of the radical closed forms ---------------------


def _pq(x0: float) -> tuple[float, float]:
    p = x0 * x0 + 4 * x0 + 4
    q = math.sqrt(x0**4 + 4 * x0**3 + 12 * x0**2 + 20 * x0 + 12)
    return p, q


def closed_form_ck(n: int, x0: float) -> float:
    p, q = _pq(x0)
    base = x0 * x0 + 2 * x0 + 4
    hi = (base + q) * ((p + q) / 2) ** (n - 1)
    lo = (base - q) * ((p - q) / 2) ** (n - 1)
    return (x0 * x0 + x0) * (hi - lo) / (2 * q)


def closed_form_vck(n: int, x0: float) -> float:
    p, q = _pq(x0)
    base = x0 * x0 + 4 * x0 + 2
    hi = (base + q) * ((p + q) / 2) ** (n - 1)
    lo = (base - q) * ((p - q) / 2) ** (n - 1)
    return x0 * (hi - lo) / (2 * q)


def _rel_err(approx: float, exact: float) -> float:
    return abs(approx - exact) / max(abs(exact), 1e-300)


def closed_form_spot_check(n: int, x0: float) -> float:
    """Relative error of the radical closed form against the exact bracket at x0."""
    if x0 <= 0:
        raise ValueError("x0 must be positive")
    if not 1 <= n <= MAX_MATRIX_N:
        raise ValueError(f"n must be in 1..{MAX_MATRIX_N}")
    exact = poly_eval_float(celtic_bracket(n).ck, x0)
    return _rel_err(closed_form_ck(n, x0), exact)


def closed_form_vck_spot_check(n: int, x0: float) -> float:
    exact = poly_eval_float(celtic_bracket(n).vck, x0)
    return _rel_err(closed_form_vck(n, x0), exact)


def charpoly_spot_check(lam: float, x0: float) -> float:
    """det(lam I - M) against (lam - (p-q)/2)(lam - (p+q)/2) at one point."""
    m = CELTIC_MATRIX.evaluate(x0)
    det = (lam - m[0][0]) * (lam - m[1][1]) - m[0][1] * m[1][0]
    p, q = _pq(x0)
    return _rel_err((lam - (p - q) / 2) * (lam - (p + q) / 2), det)


# -- OEIS A001353 -----------------------------------------------------------

A001353 = (0, 1, 4, 15, 56, 209, 780, 2911, 10864, 40545, 151316, 564719, 2107560)


def oeis_column_check(n_max: int) -> list[int]:
    """Linear coefficients [x^1]<CK_n> for n = 1..n_max.

    Raises AssertionError if they leave A001353 or break a_n = 4a_{n-1} - a_{n-2}.
    """
    if not 1 <= n_max <= MAX_MATRIX_N:
        raise ValueError(f"n_max must be in 1..{MAX_MATRIX_N}")
    col = [ck[1] for ck in celtic_sequence(n_max)]
    for i, a in enumerate(col):
        if a != A001353[i + 1]:
            raise AssertionError(f"[x]<CK_{i + 1}> = {a}, expected {A001353[i + 1]}")
        if i >= 2 and a != 4 * col[i - 1] - col[i - 2]:
            raise AssertionError(f"recurrence broken at n={i + 1}")
    return col
