"""Arbitrary-precision integer/rational backend.

Everything downstream works with ``mpz``/``mpq`` from gmpy2 (GMP) when it is
installed, and falls back to the standard library (``int`` /
``fractions.Fraction``) otherwise.  Set ``FIBCF_BACKEND=python`` or
``FIBCF_BACKEND=gmpy2`` to force a choice; the default is auto-detection.

Both backends expose the same duck type: ``.numerator`` / ``.denominator``
on rationals, ``.bit_length()`` on integers, exact comparisons, and the
usual ring operators.  Rationals are always kept in lowest terms with a
positive denominator by both implementations.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

_choice = os.environ.get("FIBCF_BACKEND", "auto").lower()
if _choice not in ("auto", "gmpy2", "python"):
    raise ValueError("FIBCF_BACKEND must be 'auto', 'gmpy2' or 'python'")

_gmpy2 = None
if _choice in ("auto", "gmpy2"):
    try:
        import gmpy2 as _gmpy2
    except ImportError:
        if _choice == "gmpy2":
            raise

if _gmpy2 is not None:
    BACKEND = "gmpy2"
    mpz = _gmpy2.mpz
    mpq = _gmpy2.mpq
    isqrt = _gmpy2.isqrt
else:
    BACKEND = "python"
    mpz = int
    mpq = Fraction
    isqrt = math.isqrt

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)

_LOG10_2 = 0.30102999566398114


def rat_floor(q):
    """floor(q) as a backend integer, exact for any rational."""
    return q.numerator // q.denominator


def rat_ceil(q):
    return -((-q.numerator) // q.denominator)


def num_digits(n) -> int:
    """Number of decimal digits of ``|n|`` (1 for n = 0), without str()."""
    n = abs(mpz(n))
    if n < 10:
        return 1
    d = max(1, int((n.bit_length() - 1) * _LOG10_2))
    p = mpz(10) ** d
    while p <= n:
        p *= 10
        d += 1
    return d


def dec_exponent(q) -> int:
    """e such that 10^e <= |q| < 10^(e+1); q must be nonzero."""
    num, den = abs(q.numerator), q.denominator
    e = num_digits(num) - num_digits(den)
    # num_digits bounds leave e or e-1 as the answer; settle by comparison.
    if e >= 0:
        if num < den * mpz(10) ** e:
            e -= 1
    else:
        if num * mpz(10) ** (-e) < den:
            e -= 1
    return e


def _scaled_int(q, shift: int, ceil: bool):
    """floor/ceil of q * 10^shift as a backend integer (shift may be < 0)."""
    num, den = q.numerator, q.denominator
    if shift >= 0:
        num = num * mpz(10) ** shift
    else:
        den = den * mpz(10) ** (-shift)
    if ceil:
        return -((-num) // den)
    return num // den


def sci_str(q, sig: int, roundup: bool) -> str:
    """Scientific-notation decimal string with directed rounding.

    ``roundup=False`` rounds toward -inf, ``roundup=True`` toward +inf, so a
    (lo, hi) pair printed with (False, True) still encloses the exact value.
    """
    if q == 0:
        return "0"
    neg = q < 0
    a = -q if neg else q
    up = roundup != neg  # direction for the magnitude
    e = dec_exponent(a)
    m = _scaled_int(a, sig - 1 - e, ceil=up)
    if m >= mpz(10) ** sig:  # ceil overflowed into the next decade
        e += 1
        m = _scaled_int(a, sig - 1 - e, ceil=up)
    digits = str(m).rjust(sig, "0")
    body = digits[0] + "." + digits[1:] if sig > 1 else digits
    return ("-" if neg else "") + body + "e" + ("%+d" % e)


def fixed_str(q, digits: int, roundup: bool) -> str:
    """Fixed-point decimal string with ``digits`` fractional digits and
    directed rounding."""
    n = _scaled_int(q, digits, ceil=roundup)
    neg = n < 0
    if neg:
        n = -n
    s = str(n).rjust(digits + 1, "0")
    out = s[:-digits] + "." + s[-digits:] if digits else s
    return ("-" if neg else "") + out
