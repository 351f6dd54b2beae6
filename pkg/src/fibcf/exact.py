"""Exact 2x2 integer matrices, the letter homomorphism, and rational
interval arithmetic.

All interval operations are *enclosures*: the returned interval contains
every exact value the operation can take on the inputs.  Endpoints are
exact rationals, so there is no rounding anywhere except where an outward
rounding is requested explicitly (:func:`round_out`, :func:`round_out_rel`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .backend import HALF, ZERO, mpq, mpz, rat_ceil, rat_floor
from . import words


@dataclass(frozen=True)
class Params:
    """The pair of distinct positive integers driving the partial quotients."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive integers")
        if self.a == self.b:
            raise ValueError("a and b must be distinct")


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix with arbitrary-precision integer entries."""

    m00: object
    m01: object
    m10: object
    m11: object

    @classmethod
    def identity(cls) -> "Mat2":
        one, zero = mpz(1), mpz(0)
        return cls(one, zero, zero, one)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def det(self):
        return self.m00 * self.m11 - self.m01 * self.m10

    def is_symmetric(self) -> bool:
        return self.m01 == self.m10

    def unimodular_inverse(self) -> "Mat2":
        """Exact integer inverse; requires det = +-1."""
        d = self.det()
        if d != 1 and d != -1:
            raise ValueError("matrix is not unimodular")
        return Mat2(d * self.m11, -d * self.m01, -d * self.m10, d * self.m00)


def mat_mul(m: Mat2, n: Mat2) -> Mat2:
    return m @ n


def letter_matrix(value: int) -> Mat2:
    return Mat2(mpz(value), mpz(1), mpz(1), mpz(0))


def phi(word: str, p: Params) -> Mat2:
    """Monoid homomorphism: 'a' -> ((a,1),(1,0)), 'b' -> ((b,1),(1,0))."""
    mat_a = letter_matrix(p.a)
    mat_b = letter_matrix(p.b)
    out = Mat2.identity()
    for ch in word:
        if ch == words.LETTER_A:
            out = out @ mat_a
        elif ch == words.LETTER_B:
            out = out @ mat_b
        else:
            raise ValueError(f"letter {ch!r} is not in the alphabet")
    return out


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: object
    hi: object

    def __post_init__(self):
        lo, hi = mpq(self.lo), mpq(self.hi)
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> "RatInterval":
        x = mpq(x)
        return cls(x, x)

    def width(self):
        return self.hi - self.lo

    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __mul__(self, other: "RatInterval") -> "RatInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(products), max(products))

    def scale(self, c) -> "RatInterval":
        """Multiply by an exact scalar."""
        c = mpq(c)
        if c >= 0:
            return RatInterval(self.lo * c, self.hi * c)
        return RatInterval(self.hi * c, self.lo * c)

    def shift(self, c) -> "RatInterval":
        c = mpq(c)
        return RatInterval(self.lo + c, self.hi + c)

    def abs(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return RatInterval(-self.hi, -self.lo)
        return RatInterval(ZERO, max(-self.lo, self.hi))

    def power(self, k: int) -> "RatInterval":
        """Enclosure of {t^k : t in self} for k in {1, 2, 3}."""
        if k == 1:
            return self
        if k == 3:
            return RatInterval(self.lo**3, self.hi**3)
        if k == 2:
            if self.lo >= 0:
                return RatInterval(self.lo**2, self.hi**2)
            if self.hi <= 0:
                return RatInterval(self.hi**2, self.lo**2)
            return RatInterval(ZERO, max(self.lo**2, self.hi**2))
        raise ValueError("exponent must be 1, 2 or 3")

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / mpq(self.hi), 1 / mpq(self.lo))

    def __truediv__(self, other: "RatInterval") -> "RatInterval":
        return self * other.reciprocal()


def interval_add(x: RatInterval, y: RatInterval) -> RatInterval:
    return x + y


def interval_sub(x: RatInterval, y: RatInterval) -> RatInterval:
    return x - y


def interval_mul(x: RatInterval, y: RatInterval) -> RatInterval:
    return x * y


def interval_pow(x: RatInterval, k: int) -> RatInterval:
    return x.power(k)


def interval_max(x: RatInterval, y: RatInterval) -> RatInterval:
    return RatInterval(max(x.lo, y.lo), max(x.hi, y.hi))


def strictly_less(x: RatInterval, y: RatInterval):
    """True / False when the order of the exact values is decided by the
    enclosures, None when they overlap."""
    if x.hi < y.lo:
        return True
    if y.hi < x.lo:
        return False
    return None


def nearest_int_distance(x: RatInterval) -> RatInterval:
    """Enclosure of dist(t, Z) = min_n |t - n| for t in x; values in [0, 1/2]."""

    def dist(t):
        f = t - rat_floor(t)
        return min(f, 1 - f)

    has_integer = rat_floor(x.hi) >= rat_ceil(x.lo)
    lo = ZERO if has_integer else min(dist(x.lo), dist(x.hi))
    has_half = rat_floor(x.hi - HALF) >= rat_ceil(x.lo - HALF)
    hi = HALF if has_half else max(dist(x.lo), dist(x.hi))
    return RatInterval(lo, hi)


def golden_ratio(precision) -> RatInterval:
    """Enclosure of (1 + sqrt 5)/2 of width <= precision.

    Consecutive Fibonacci ratios f(n+1)/f(n) bracket the golden ratio
    alternately, and the bracket width 1/(f(n) f(n+1)) shrinks geometrically,
    so no square root is ever needed.
    """
    precision = mpq(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    f0, f1 = 1, 1
    while True:
        f2 = f0 + f1
        r1, r2 = mpq(f1, f0), mpq(f2, f1)
        lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
        if hi - lo <= precision:
            return RatInterval(lo, hi)
        f0, f1 = f1, f2


def round_out(x: RatInterval, digits: int) -> RatInterval:
    """Outward rounding to fixed-point endpoints with denominator 10^digits."""
    s = mpz(10) ** digits
    lo = mpq((x.lo.numerator * s) // x.lo.denominator, s)
    hi = mpq(-((-x.hi.numerator * s) // x.hi.denominator), s)
    return RatInterval(lo, hi)


def round_out_rel(x: RatInterval, sig: int) -> RatInterval:
    """Outward rounding keeping about ``sig`` significant digits.

    Useful to stop exact rationals from snowballing inside long interval
    products; the result still encloses the input.
    """
    from .backend import dec_exponent

    def one(q, up: bool):
        if q == 0:
            return q
        e = dec_exponent(abs(q))
        shift = sig - 1 - e
        if shift <= 0:
            return q
        s = mpz(10) ** shift
        n = -((-q.numerator * s) // q.denominator) if up else (q.numerator * s) // q.denominator
        return mpq(n, s)

    return RatInterval(one(mpq(x.lo), False), one(mpq(x.hi), True))
