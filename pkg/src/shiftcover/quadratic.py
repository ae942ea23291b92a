"""Exact arithmetic in a real quadratic field Q(sqrt(D)).

Used for mechanical-word floors: floating point floors of k*alpha + rho are
unreliable for large k, so comparisons here are algebraic throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionError


@dataclass(frozen=True)
class Surd:
    """The number a + b*sqrt(d) with rational a, b and a fixed nonsquare d > 0."""

    a: Fraction
    b: Fraction
    d: int

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError("mixed radicands")
            return other
        return Surd(Fraction(other), Fraction(0), self.d)

    def __add__(self, other) -> "Surd":
        o = self._coerce(other)
        return Surd(self.a + o.a, self.b + o.b, self.d)

    def __radd__(self, other) -> "Surd":
        return self.__add__(other)

    def __sub__(self, other) -> "Surd":
        o = self._coerce(other)
        return Surd(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other) -> "Surd":
        return self._coerce(other).__sub__(self)

    def __neg__(self) -> "Surd":
        return Surd(-self.a, -self.b, self.d)

    def __mul__(self, other) -> "Surd":
        o = self._coerce(other)
        return Surd(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    def __rmul__(self, other) -> "Surd":
        return self.__mul__(other)

    def __truediv__(self, other) -> "Surd":
        o = self._coerce(other)
        norm = o.a * o.a - o.b * o.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        conj = Surd(o.a / norm, -o.b / norm, self.d)
        return self * conj

    def __rtruediv__(self, other) -> "Surd":
        return self._coerce(other).__truediv__(self)

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 * d
        lhs, rhs = a * a, b * b * self.d
        if a > 0:  # b < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        n = math.floor(float(self))
        # float estimate can be off by one near integers; fix exactly
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n


def _cf_matrix(digits) -> tuple[int, int, int, int]:
    p, p1, q, q1 = 1, 0, 0, 1  # product of [[b,1],[1,0]]
    for b in digits:
        p, p1 = b * p + p1, p
        q, q1 = b * q + q1, q
    return p, p1, q, q1


def periodic_cf_value(period) -> Surd:
    """Value of the purely periodic continued fraction [b1; b2, ..., bm, b1, ...]."""
    if not period or any(b < 1 for b in period):
        raise ConstructionError("periodic part must be positive integers")
    p, p1, q, q1 = _cf_matrix(period)
    # t = (p t + p1) / (q t + q1)  =>  q t^2 + (q1 - p) t - p1 = 0
    disc = (q1 - p) ** 2 + 4 * q * p1
    root = math.isqrt(disc)
    if root * root == disc:
        raise ConstructionError("continued fraction value is rational")
    t = Surd(Fraction(p - q1, 2 * q), Fraction(1, 2 * q), disc)
    assert t.sign() > 0
    return t


def cf_value(preperiod, period) -> Surd:
    """Value of [0; a1, a2, ..., ar, (b1, ..., bm) repeating]."""
    x = periodic_cf_value(period)
    for a in reversed(list(preperiod)):
        x = a + 1 / x
    return 1 / x
