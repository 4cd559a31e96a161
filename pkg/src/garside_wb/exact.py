"""Exact arithmetic in Q(sqrt2, sqrt3, sqrt5).

Scalars are rational linear combinations of the eight monomials
sqrt(d) for d in {1, 2, 3, 5, 6, 10, 15, 30}, which form a Q-basis of the
field.  Equality is exact (coefficient comparison); the sign of a nonzero
scalar is decided by adaptive-precision integer enclosures of the radicals,
so comparisons never rely on floating point.

The field contains 2*cos(pi/m) for m in {2, 3, 4, 5, 6} (and the value 2
standing in for m = infinity), which is all the generator geometry needs.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .diagram import INFINITY

#: Square-free parts spanning the field, in fixed order.
BASIS = (1, 2, 3, 5, 6, 10, 15, 30)
_INDEX = {d: i for i, d in enumerate(BASIS)}

ZERO8 = (Fraction(0),) * 8


def _mult_table():
    # sqrt(d1) * sqrt(d2) = g * sqrt(d1 * d2 / g^2) with g = gcd(d1, d2)
    table = []
    for d1 in BASIS:
        row = []
        for d2 in BASIS:
            g = math.gcd(d1, d2)
            row.append((_INDEX[d1 * d2 // (g * g)], g))
        table.append(tuple(row))
    return tuple(table)


_MULT = _mult_table()


class FieldError(ArithmeticError):
    """Value outside Q(sqrt2, sqrt3, sqrt5) (e.g. an unsupported label)."""


class ExactScalar:
    """Immutable element of Q(sqrt2, sqrt3, sqrt5)."""

    __slots__ = ("coords",)

    def __init__(self, value=0):
        if isinstance(value, ExactScalar):
            coords = value.coords
        elif isinstance(value, tuple):
            if len(value) != 8:
                raise FieldError("coordinate tuple must have length 8")
            coords = tuple(Fraction(c) for c in value)
        else:
            coords = (Fraction(value),) + ZERO8[1:]
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *_):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def sqrt_of(cls, d: int) -> "ExactScalar":
        if d not in _INDEX:
            raise FieldError(f"sqrt({d}) is not in the field")
        coords = list(ZERO8)
        coords[_INDEX[d]] = Fraction(1)
        return cls(tuple(coords))

    @classmethod
    def two_cos(cls, m) -> "ExactScalar":
        """2*cos(pi/m) for the supported labels; 2 for the infinite label."""
        if m == INFINITY:
            return cls(2)
        table = {
            2: cls(0),
            3: cls(1),
            4: cls.sqrt_of(2),
            5: (cls(1) + cls.sqrt_of(5)) / cls(2),
            6: cls.sqrt_of(3),
        }
        if m not in table:
            raise FieldError(f"field not supported for label m = {m!r}")
        return table[m]

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return ExactScalar(
            tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out = [Fraction(0)] * 8
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                k, g = _MULT[i][j]
                out[k] += a * b * g
        return ExactScalar(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def inverse(self) -> "ExactScalar":
        """Multiplicative inverse, by solving the 8x8 rational system
        self * x = 1 in coordinates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # column j of M is self * basis[j]
        cols = []
        for j in range(8):
            col = [Fraction(0)] * 8
            for i, a in enumerate(self.coords):
                if a:
                    k, g = _MULT[i][j]
                    col[k] += a * g
            cols.append(col)
        m = [[cols[j][i] for j in range(8)] for i in range(8)]
        rhs = [Fraction(1)] + [Fraction(0)] * 7
        x = _solve(m, rhs)
        return ExactScalar(tuple(x))

    # -- comparisons --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def sign(self) -> int:
        """-1, 0 or +1, decided exactly."""
        if self.is_zero():
            return 0
        prec = 16
        while True:
            lo = Fraction(0)
            hi = Fraction(0)
            scale = 1 << prec
            for c, d in zip(self.coords, BASIS):
                if not c:
                    continue
                root_lo = Fraction(math.isqrt(d * scale * scale), scale)
                root_hi = root_lo + Fraction(1, scale)
                if c > 0:
                    lo += c * root_lo
                    hi += c * root_hi
                else:
                    lo += c * root_hi
                    hi += c * root_lo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
            if prec > 1 << 16:  # pragma: no cover - nonzero values terminate
                raise FieldError("sign did not converge")

    def __eq__(self, other):
        if isinstance(other, (ExactScalar, int, Fraction)):
            return self.coords == _coerce(other).coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce(other)).sign() >= 0

    # -- presentation -------------------------------------------------------

    def __float__(self):
        return float(
            sum(float(c) * math.sqrt(d) for c, d in zip(self.coords, BASIS))
        )

    def __repr__(self):
        terms = [
            (f"{c}" if d == 1 else f"{c}*sqrt{d}")
            for c, d in zip(self.coords, BASIS)
            if c
        ]
        return " + ".join(terms) if terms else "0"


def _coerce(value) -> ExactScalar:
    return value if isinstance(value, ExactScalar) else ExactScalar(value)


def _solve(matrix, rhs):
    """Gaussian elimination over Fractions; matrix is square and regular."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def dot(row: Iterable, col: Iterable) -> ExactScalar:
    total = ExactScalar(0)
    for a, b in zip(row, col):
        total = total + a * b
    return total
