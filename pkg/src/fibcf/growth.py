"""Quantitative growth diagnostics with guaranteed enclosures.

Everything here reduces to four primitives with proven error bounds:

* ``log_enclosure``: argument reduction x = m * 2^e with m in [1, 2),
  then the atanh series 2*sum u^(2j+1)/(2j+1) at u = (m-1)/(m+1), whose
  tail after the u^(2J+1) term is below 2 u^(2J+3) / ((2J+3)(1 - u^2)).
* ``exp_enclosure``: split t = n + r with |r| <= 1/2; the series tail for
  e^r after the r^k/k! term is below 2 |r|^(k+1)/(k+1)!, and e^n is an
  interval power of a cached enclosure of e with outward rounding at every
  step, so huge negative exponents stay cheap.
* the golden-ratio enclosure from Fibonacci ratios (:mod:`fibcf.exact`).
* exact integer/rational arithmetic for everything else.

X_{i-1}^gamma itself is never formed: the ratio q_i = X_i X_{i-1}^(-gamma)
is evaluated as exp(log X_i - gamma log X_{i-1}).
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .backend import (
    HALF,
    ONE,
    ZERO,
    dec_exponent,
    mpq,
    mpz,
    num_digits,
    rat_ceil,
    rat_floor,
)
from .cf import MAX_ESCALATIONS, ApproxTriple, XiApprox, get_xi, triple_sequence
from .errors import ResourceLimitError, UndecidedError
from .exact import (
    Params,
    RatInterval,
    golden_ratio,
    nearest_int_distance,
    round_out_rel,
    strictly_less,
)

_TWO = mpq(2)


def _ln_bounds(r, eps):
    """(lo, hi) with lo <= ln(r) <= hi and hi - lo <= eps, for r in (0, 4]."""
    u = (r - ONE) / (r + ONE)
    if u == 0:
        return ZERO, ZERO
    neg = u < 0
    if neg:
        u = -u
    u2 = u * u
    s = ZERO
    upow = u
    k = 1
    while True:
        s += upow / k
        upow *= u2
        k += 2
        rem = _TWO * upow / (k * (ONE - u2))
        if rem <= eps / 2:
            break
    lo, hi = _TWO * s, _TWO * s + rem
    if neg:
        return -hi, -lo
    return lo, hi


class _Cached:
    """Cache of enclosures keyed by the requested width.

    Keying by width (rather than keeping a best-so-far interval) makes every
    lookup a pure function of its argument, so serialized results cannot
    depend on what other callers computed earlier in the process.
    """

    def __init__(self, compute):
        self._compute = compute
        self._lock = threading.Lock()
        self._store: dict = {}

    def at(self, eps) -> RatInterval:
        eps = mpq(eps)
        with self._lock:
            got = self._store.get(eps)
            if got is None:
                got = self._store[eps] = self._compute(eps)
            return got


def _compute_ln2(eps) -> RatInterval:
    return RatInterval(*_ln_bounds(_TWO, eps))


def _compute_e(eps) -> RatInterval:
    s = ONE
    term = ONE
    k = 1
    while True:
        term /= k
        s += term
        k += 1
        rem = _TWO * term / (k)
        if rem <= eps:
            return RatInterval(s, s + rem)


_ln2 = _Cached(_compute_ln2)
_e_const = _Cached(_compute_e)
_gamma = _Cached(golden_ratio)


def gamma_enclosure(eps) -> RatInterval:
    """Cached golden-ratio enclosure of width <= eps."""
    return _gamma.at(mpq(eps))


def _bits_for(q) -> int:
    """Smallest k with 2^k >= q (q > 0)."""
    n = rat_ceil(mpq(q))
    if n <= 1:
        return 0
    return int(n - 1).bit_length()


def log_enclosure(x, precision) -> RatInterval:
    """Interval containing ln(x) of width <= precision, x > 0 rational."""
    x = mpq(x)
    precision = mpq(precision)
    if x <= 0:
        raise ValueError("logarithm argument must be positive")
    if precision <= 0:
        raise ValueError("precision must be positive")
    num, den = x.numerator, x.denominator
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        if num < den << e:
            e -= 1
    else:
        if num << (-e) < den:
            e -= 1
    # mantissa m = x / 2^e in [1, 2); dyadic bracket t/2^k <= m <= (t+1)/2^k
    kbits = max(16, _bits_for(4 / precision))
    if kbits >= e:
        t = (num << (kbits - e)) // den
    else:
        t = num // (den << (e - kbits))
    scale = mpz(1) << kbits
    m_lo, m_hi = mpq(t, scale), mpq(t + 1, scale)
    lo = _ln_bounds(m_lo, precision / 4)[0]
    hi = _ln_bounds(m_hi, precision / 4)[1]
    if e == 0:
        return RatInterval(lo, hi)
    l2 = _ln2.at(precision / (4 * (abs(e) + 1)))
    if e > 0:
        return RatInterval(lo + e * l2.lo, hi + e * l2.hi)
    return RatInterval(lo + e * l2.hi, hi + e * l2.lo)


def _ipow_interval(base: RatInterval, n: int, sig: int) -> RatInterval:
    """base^n for positive base and n >= 1, outward-rounded each step."""
    result = None
    b = base
    while n:
        if n & 1:
            result = b if result is None else round_out_rel(result * b, sig)
        n >>= 1
        if n:
            b = round_out_rel(b * b, sig)
    return result


def _exp_point_bounds(t, rel):
    """(lo, hi) enclosing e^t with (hi - lo)/lo <= rel, t rational."""
    t = mpq(t)
    n = rat_floor(t + HALF)
    r = t - n
    s = ONE
    term = ONE
    k = 0
    while True:
        k += 1
        term *= r / k
        s += term
        rem = _TWO * abs(term * r) / (k + 1)
        if rem <= rel / 16:
            break
    r_lo, r_hi = s - rem, s + rem
    if n == 0:
        return r_lo, r_hi
    m = abs(int(n))
    sig = max(8, -dec_exponent(mpq(rel))) + 8
    e_enc = _e_const.at(rel / (16 * (m + 1)))
    p = _ipow_interval(e_enc, m, sig)
    if n > 0:
        return r_lo * p.lo, r_hi * p.hi
    return r_lo / p.hi, r_hi / p.lo


def exp_enclosure(z: RatInterval, rel) -> RatInterval:
    """Enclosure of {e^t : t in z} with relative width about ``rel``."""
    rel = mpq(rel)
    if rel <= 0:
        raise ValueError("relative width must be positive")
    lo = _exp_point_bounds(z.lo, rel)[0]
    hi = _exp_point_bounds(z.hi, rel)[1]
    return RatInterval(lo, hi)


def _int_abs_interval(a, b):
    """abs() of an integer-endpoint interval [a, b]."""
    if a >= 0:
        return a, b
    if b <= 0:
        return -b, -a
    return mpz(0), max(-a, b)


def _error_interval(xi: XiApprox, t: ApproxTriple, extra_digits: int = 40) -> RatInterval:
    """E_i = X_i * max(|x0 xi - x1|, |x0 xi^2 - x2|) as an enclosure.

    Works in fixed point at 2*digits(X_i) + extra decimal digits, which
    leaves the result roughly 10^-extra wide.
    """
    d = 2 * num_digits(t.x0) + extra_digits
    br = xi.bracket_digits(d)
    s = mpz(10) ** d
    lo_n = (br.lo.numerator * s) // br.lo.denominator
    hi_n = -((-br.hi.numerator * s) // br.hi.denominator)
    a1, b1 = _int_abs_interval(t.x0 * lo_n - t.x1 * s, t.x0 * hi_n - t.x1 * s)
    s2 = s * s
    a2, b2 = _int_abs_interval(
        t.x0 * lo_n * lo_n - t.x2 * s2, t.x0 * hi_n * hi_n - t.x2 * s2
    )
    m_lo = max(a1 * s, a2)
    m_hi = max(b1 * s, b2)
    return RatInterval(mpq(t.x0 * m_lo, s2), mpq(t.x0 * m_hi, s2))


@dataclass(frozen=True)
class GrowthRow:
    """Growth diagnostics for index i.

    ``growth_ratio`` is None when X_{i-1} = 1 (the ratio of logs is
    undefined) and ``limit_val`` is None for i = 2 (no X_0 exists).
    ``undecided`` names components that hit the resource limit.
    """

    i: int
    x_digits: int
    E: RatInterval | None
    growth_ratio: RatInterval | None
    limit_val: RatInterval | None
    q_ratio: RatInterval | None
    undecided: tuple = ()


_LOG_EPS = mpq(1, mpz(10) ** 15)
_Q_REL = mpq(1, mpz(10) ** 12)


def _growth_row(
    xi: XiApprox, triples: list[ApproxTriple], i: int, extra_digits: int = 40
) -> GrowthRow:
    cur, prev = triples[i - 1], triples[i - 2]
    undecided = []
    e_val = growth = limit = q_val = None
    try:
        e_val = _error_interval(xi, cur, extra_digits)
    except ResourceLimitError:
        undecided.append("E")
    if prev.x0 > 1:
        lx = log_enclosure(cur.x0, _LOG_EPS)
        ly = log_enclosure(prev.x0, _LOG_EPS)
        growth = lx / ly
        g = _gamma.at(_Q_REL / (8 * (rat_floor(ly.hi) + 1)))
        arg = lx - g * ly
        q_val = exp_enclosure(arg, _Q_REL)
    else:
        # X_{i-1} = 1: X_{i-1}^(-gamma) = 1 exactly, the log ratio is undefined
        q_val = RatInterval.point(cur.x0)
    if i >= 3:
        limit = RatInterval.point(mpq(cur.x0, prev.x0 * triples[i - 3].x0))
    return GrowthRow(
        i=i,
        x_digits=num_digits(cur.x0),
        E=e_val,
        growth_ratio=growth,
        limit_val=limit,
        q_ratio=q_val,
        undecided=tuple(undecided),
    )


def growth_table(
    p: Params,
    i_max: int,
    xi: XiApprox | None = None,
    threads: int = 1,
    extra_digits: int = 40,
) -> list[GrowthRow]:
    """Rows i = 2 .. i_max of the growth diagnostics (2 <= i_max <= 30).

    ``extra_digits`` is the guard precision beyond the scale of X_i; doubling
    it must produce rows nested inside the originals.
    """
    if not 2 <= i_max <= 30:
        raise ValueError("i_max must be in [2, 30]")
    xi = xi if xi is not None else get_xi(p)
    triples = triple_sequence(p, i_max)
    indices = range(2, i_max + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(
                pool.map(lambda i: _growth_row(xi, triples, i, extra_digits), indices)
            )
    else:
        rows = [_growth_row(xi, triples, i, extra_digits) for i in indices]
    return rows


def fit_constants(rows: list[GrowthRow]):
    """(c1, c2, c3) from the q-ratio and error columns.

    c1/c2 are the extreme endpoints of the q_i enclosures and c3 the
    largest E_i upper endpoint.  Refuses to fit when any row is
    incomplete, naming the offending indices.
    """
    if not rows or rows[0].i != 2 or rows[-1].i < 10:
        raise ValueError("rows must cover i = 2 .. i_max with i_max >= 10")
    bad = [r.i for r in rows if r.undecided or r.q_ratio is None or r.E is None]
    if bad:
        raise UndecidedError(f"rows {bad} are undecided; cannot fit constants", bad)
    c1 = min(r.q_ratio.lo for r in rows)
    c2 = max(r.q_ratio.hi for r in rows)
    c3 = max(r.E.hi for r in rows)
    return c1, c2, c3


@dataclass(frozen=True)
class CubeRow:
    """One row of the cube-distance experiment; ``passes`` is True when
    dist(X_i xi^3, Z) provably exceeds X_i^(-delta), False when it is
    provably below, and None when undecided at the resource limit."""

    i: int
    x_digits: int
    cube_dist: RatInterval
    threshold: RatInterval
    passes: bool | None


def _cube_row(xi: XiApprox, t: ApproxTriple, delta, extra_digits: int = 40) -> CubeRow:
    d_x = num_digits(t.x0)
    digits = d_x + extra_digits
    rel = mpq(1, mpz(10) ** 10)
    dist = thr = None
    verdict = None
    for _ in range(MAX_ESCALATIONS):
        ln_x = log_enclosure(t.x0, min(_LOG_EPS, rel))
        thr = exp_enclosure(ln_x.scale(-delta), rel)
        br = xi.bracket_digits(digits)
        s = mpz(10) ** digits
        lo_n = (br.lo.numerator * s) // br.lo.denominator
        hi_n = -((-br.hi.numerator * s) // br.hi.denominator)
        s3 = s * s * s
        dist = nearest_int_distance(
            RatInterval(mpq(t.x0 * lo_n**3, s3), mpq(t.x0 * hi_n**3, s3))
        )
        verdict = strictly_less(thr, dist)
        if verdict is not None:
            break
        digits *= 2
        rel = rel * rel
    return CubeRow(
        i=t.i,
        x_digits=d_x,
        cube_dist=dist,
        threshold=thr,
        passes=verdict,
    )


def cube_experiment(
    p: Params,
    i_max: int,
    delta,
    xi: XiApprox | None = None,
    threads: int = 1,
    extra_digits: int = 40,
) -> list[CubeRow]:
    """dist(X_i xi^3, Z) against X_i^(-delta) for i = 2 .. i_max (<= 25)."""
    if not 2 <= i_max <= 25:
        raise ValueError("i_max must be in [2, 25]")
    delta = mpq(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    xi = xi if xi is not None else get_xi(p)
    triples = triple_sequence(p, i_max)
    work = triples[1:]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda t: _cube_row(xi, t, delta, extra_digits), work))
    else:
        rows = [_cube_row(xi, t, delta, extra_digits) for t in work]
    return rows
