"""Dense univariate polynomials over Z and small polynomial matrices.

Coefficients are Python ints, so nothing ever overflows. ``IntPoly`` stores
them lowest degree first with trailing zeros stripped; the zero polynomial is
the empty tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InexactDivision, NonzeroConstantTerm, ParseError

__all__ = [
    "IntPoly",
    "PolyMatrix",
    "ZERO",
    "ONE",
    "X",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_div_x_exact",
    "poly_div_exact",
    "poly_eval_float",
    "poly_from_string",
    "mat_mul",
    "mat_vec",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Immutable polynomial in ``x`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        """Coefficient of x^k (zero outside the stored range)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> IntPoly:
        return poly_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> IntPoly:
        return poly_sub(self, _coerce(other))

    def __rsub__(self, other) -> IntPoly:
        return poly_sub(_coerce(other), self)

    def __mul__(self, other) -> IntPoly:
        return poly_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x0: float) -> float:
        return poly_eval_float(self, x0)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"IntPoly({render(self)!r})"


def _coerce(value) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return IntPoly.const(value)
    raise TypeError(f"cannot combine IntPoly with {type(value).__name__}")


ZERO = IntPoly()
ONE = IntPoly([1])
X = IntPoly([0, 1])


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    ac, bc = a.coeffs, b.coeffs
    if len(ac) < len(bc):
        ac, bc = bc, ac
    out = list(ac)
    for i, c in enumerate(bc):
        out[i] += c
    return IntPoly(out)


def poly_sub(a: IntPoly, b: IntPoly) -> IntPoly:
    return poly_add(a, -b)


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    ac, bc = a.coeffs, b.coeffs
    if not ac or not bc:
        return ZERO
    out = [0] * (len(ac) + len(bc) - 1)
    for i, ca in enumerate(ac):
        if ca == 0:
            continue
        for j, cb in enumerate(bc):
            out[i + j] += ca * cb
    return IntPoly(out)


def poly_div_x_exact(a: IntPoly) -> IntPoly:
    """Return a / x; the constant term of ``a`` must vanish."""
    if a[0] != 0:
        raise NonzeroConstantTerm(f"{a} is not divisible by x")
    return IntPoly(a.coeffs[1:])


def poly_div_exact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient a / b over Z; raises InexactDivision on any remainder."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a.coeffs)
    db = b.degree
    lead = b.coeffs[-1]
    if len(rem) - 1 < db:
        if rem:
            raise InexactDivision(f"{a} is not divisible by {b}")
        return ZERO
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise InexactDivision(f"{a} is not divisible by {b}")
        quot[k - db] = q
        for i, cb in enumerate(b.coeffs):
            rem[k - db + i] -= q * cb
    if any(rem):
        raise InexactDivision(f"{a} is not divisible by {b}")
    return IntPoly(quot)


def poly_eval_float(a: IntPoly, x0: float) -> float:
    acc = 0.0
    for c in reversed(a.coeffs):
        acc = acc * x0 + c
    return float(acc)


# -- text form -------------------------------------------------------------


def render(a: IntPoly) -> str:
    """Descending powers, explicit ``*`` and ``^``, e.g. ``x^2+3*x-1``."""
    if a.is_zero():
        return "0"
    parts = []
    for k in range(a.degree, -1, -1):
        c = a.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            xpow = "x" if k == 1 else f"x^{k}"
            body = xpow if mag == 1 else f"{mag}*{xpow}"
        parts.append(sign + body)
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


_SPLIT = re.compile(r"[+-]?[^+-]+")
_BODY = re.compile(r"(?:(\d+)\*)?x(?:\^(\d+))?|(\d+)")


def poly_from_string(text: str) -> IntPoly:
    """Parse the form produced by :func:`render`."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    terms = _SPLIT.findall(s)
    if "".join(terms) != s:
        raise ParseError(f"bad polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        m = _BODY.fullmatch(body)
        if m is None:
            raise ParseError(f"bad polynomial term {term!r} in {text!r}")
        if m.group(3) is not None:
            c, k = int(m.group(3)), 0
        else:
            c = int(m.group(1)) if m.group(1) else 1
            k = int(m.group(2)) if m.group(2) else 1
        coeffs[k] = coeffs.get(k, 0) + sign * c
    top = max(coeffs)
    return IntPoly(coeffs.get(k, 0) for k in range(top + 1))


# -- matrices --------------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[IntPoly, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[IntPoly | int]]) -> PolyMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, tuple(_coerce(e) for row in rows for e in row))

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> IntPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[IntPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[IntPoly, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[IntPoly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def replace(self, i: int, j: int, value: IntPoly) -> PolyMatrix:
        entries = list(self.entries)
        entries[i * self.cols + j] = value
        return PolyMatrix(self.rows, self.cols, tuple(entries))

    def trace(self) -> IntPoly:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), ZERO)

    def det2(self) -> IntPoly:
        if (self.rows, self.cols) != (2, 2):
            raise DimensionMismatch("det2 needs a 2x2 matrix")
        return self[0, 0] * self[1, 1] - self[0, 1] * self[1, 0]

    def evaluate(self, x0: float) -> list[list[float]]:
        return [[poly_eval_float(e, x0) for e in self.row(i)] for i in range(self.rows)]

    def __matmul__(self, other):
        if isinstance(other, PolyMatrix):
            return mat_mul(self, other)
        return mat_vec(self, other)


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = ZERO
            for k, e in enumerate(arow):
                if e.coeffs:
                    f = b[k, j]
                    if f.coeffs:
                        acc = acc + e * f
            out.append(acc)
    return PolyMatrix(a.rows, b.cols, tuple(out))


def mat_vec(a: PolyMatrix, v: Sequence[IntPoly]) -> list[IntPoly]:
    if a.cols != len(v):
        raise DimensionMismatch(f"{a.rows}x{a.cols} @ vector of length {len(v)}")
    out = []
    for i in range(a.rows):
        acc = ZERO
        for e, w in zip(a.row(i), v):
            if e.coeffs and w.coeffs:
                acc = acc + e * w
        out.append(acc)
    return out
