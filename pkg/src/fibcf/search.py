"""Brute-force Diophantine searches against xi_{a,b}.

Covers the best simultaneous rational approximation to (xi, xi^2) under a
denominator bound, and the best approximation of xi by rationals,
quadratic algebraic numbers, and algebraic integers of degree at most
three, all under a naive-height bound.

Every search runs in two passes: a fast screen (fixed-point integers or
doubles, via :mod:`fibcf._kernels`) shortlists candidates with margins wide
enough to provably retain the true minimizer, then exact rational interval
arithmetic confirms the winner, escalating precision until the order is
decided.  The final result is therefore deterministic and independent of
the screening implementation, screening precision, and thread partitioning.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import _kernels
from .backend import HALF, isqrt, mpq, mpz, rat_floor
from .cf import MAX_ESCALATIONS, XiApprox, partial_quotients
from .errors import ResourceLimitError, UndecidedError
from .exact import RatInterval, interval_max, nearest_int_distance, strictly_less
from .growth import exp_enclosure, gamma_enclosure, log_enclosure

SEARCH_KINDS = ("quadratic", "cubic_integer")

# Final reported distances are tightened to this relative width.
DIST_REL = mpq(1, mpz(10) ** 30)

_SCREEN_REL = 1e-6
_SCREEN_ABS = 1e-9
_LOG_EPS = mpq(1, mpz(10) ** 20)

# the simultaneous scan is linear in the bound; keep it desk-scale
SIMUL_BOUND_CAP = 10**8


@dataclass(frozen=True)
class RootBox:
    """Enclosure of one root; ``im`` is None for a real root, otherwise the
    enclosure of |Im| for the conjugate pair it represents."""

    re: RatInterval
    im: RatInterval | None = None

    @property
    def is_real(self) -> bool:
        return self.im is None


@dataclass(frozen=True)
class AlgebraicCandidate:
    """Best approximation found by a search.

    ``coeffs`` is the primitive defining polynomial, leading coefficient
    first and positive.  ``roots`` usually holds the single nearest root;
    an unresolved root tie (never observed) reports both with the merged
    distance enclosure.  ``exponent`` encloses -log(dist)/log(height) and
    is None when height < 2.
    """

    coeffs: tuple
    height: int
    roots: tuple
    dist: RatInterval
    exponent: RatInterval | None


@dataclass(frozen=True)
class SimulResult:
    """argmin over 0 < x0 <= X of max(dist(x0 xi, Z), dist(x0 xi^2, Z)).

    x1, x2 are the nearest integers to x0 xi and x0 xi^2; ``delta`` encloses
    the achieved minimum and ``normalized`` encloses delta * X^(1/gamma).
    """

    X: int
    x0: int
    x1: int
    x2: int
    delta: RatInterval
    normalized: RatInterval


def _sqrt_bounds(q, digits: int):
    """Directed rational bounds for sqrt(q), q >= 0."""
    q = mpq(q)
    if q == 0:
        return mpq(0), mpq(0)
    s = mpz(10) ** digits
    t = isqrt(q.numerator * q.denominator * s * s)
    den = q.denominator * s
    return mpq(t, den), mpq(t + 1, den)


def interval_sqrt(x: RatInterval, digits: int) -> RatInterval:
    """Enclosure of sqrt over a non-negative interval."""
    if x.lo < 0:
        raise ValueError("interval must be non-negative")
    return RatInterval(_sqrt_bounds(x.lo, digits)[0], _sqrt_bounds(x.hi, digits)[1])


def height_of_rational(num, den) -> int:
    """Naive height of num/den: max(|num|, den); the defining polynomial is
    den*t - num.  Requires lowest terms."""
    num, den = int(num), int(den)
    if den < 1:
        raise ValueError("denominator must be positive")
    if math.gcd(num, den) != 1:
        raise ValueError("fraction must be in lowest terms")
    return max(abs(num), den)


def _poly_eval(coeffs, t):
    acc = mpq(0)
    for c in coeffs:
        acc = acc * t + c
    return acc


def _rat_of_float(x: float):
    return mpq(*float(x).as_integer_ratio())


def _cubic_roots_float(b, c, d):
    """Float roots of t^3 + b t^2 + c t + d: (real_roots, pair_or_None)."""
    p = c - b * b / 3.0
    q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    disc = -4.0 * p * p * p - 27.0 * q * q
    if disc > 0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        theta = math.acos(max(-1.0, min(1.0, arg)))
        roots = sorted(
            m * math.cos((theta - 2.0 * math.pi * k) / 3.0) + shift for k in range(3)
        )
        return roots, None
    rt = math.sqrt(max(0.0, q * q / 4.0 + p * p * p / 27.0))
    u = math.copysign(abs(-q / 2.0 + rt) ** (1.0 / 3.0), -q / 2.0 + rt)
    v = math.copysign(abs(-q / 2.0 - rt) ** (1.0 / 3.0), -q / 2.0 - rt)
    y = u + v
    im = math.sqrt(max(0.0, 3.0 * y * y / 4.0 + p))
    return [y + shift], (-y / 2.0 + shift, im)


def closest_root(coeffs, xi: XiApprox, rel=DIST_REL):
    """Nearest root (over C) of an irreducible integer polynomial of degree
    1..3 to xi, with a true enclosure of the distance.

    Returns ``(roots, dist)`` where roots is a tuple of :class:`RootBox`;
    it has one entry except for a tie unresolved at the escalation cap, in
    which case both roots are returned with the merged enclosure.
    """
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) < 2 or len(coeffs) > 4 or coeffs[0] == 0:
        raise ValueError("polynomial must have degree 1..3")
    if coeffs[0] < 0:
        coeffs = tuple(-c for c in coeffs)
    rel = mpq(rel)
    deg = len(coeffs) - 1
    if deg == 1:
        return _closest_linear(coeffs, xi, rel)
    if deg == 2:
        return _closest_quadratic(coeffs, xi, rel)
    return _closest_cubic(coeffs, xi, rel)


def _tight(d: RatInterval, rel) -> bool:
    return d.lo > 0 and d.width() <= d.hi * rel


def _closest_linear(coeffs, xi, rel):
    a, b = coeffs
    root = mpq(-b, a)
    digits = 30
    for _ in range(MAX_ESCALATIONS):
        d = xi.bracket_digits(digits).shift(-root).abs()
        if _tight(d, rel):
            return (RootBox(RatInterval.point(root)),), d
        digits *= 2
    return (RootBox(RatInterval.point(root)),), d


def _closest_quadratic(coeffs, xi, rel):
    a, b, c = coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        re = mpq(-b, 2 * a)
        im2 = mpq(-disc, 4 * a * a)
        digits = 30
        for _ in range(MAX_ESCALATIONS):
            br = xi.bracket_digits(digits)
            d2 = br.shift(-re).power(2).shift(im2)
            d = interval_sqrt(d2, digits)
            if _tight(d, rel):
                box = RootBox(RatInterval.point(re), interval_sqrt(RatInterval.point(im2), digits))
                return (box,), d
            digits *= 2
        box = RootBox(RatInterval.point(re), interval_sqrt(RatInterval.point(im2), digits))
        return (box,), d
    inv = mpq(1, 2 * a)
    digits = 30
    for _ in range(MAX_ESCALATIONS):
        br = xi.bracket_digits(digits)
        sq = RatInterval(*_sqrt_bounds(disc, digits))
        r_plus = sq.shift(-b).scale(inv)
        r_minus = (-sq).shift(-b).scale(inv)
        d_plus = (br - r_plus).abs()
        d_minus = (br - r_minus).abs()
        closer = strictly_less(d_plus, d_minus)
        if closer is not None:
            d, r = (d_plus, r_plus) if closer else (d_minus, r_minus)
            if _tight(d, rel):
                return (RootBox(r),), d
        digits *= 2
    merged = RatInterval(min(d_plus.lo, d_minus.lo), min(d_plus.hi, d_minus.hi))
    return (RootBox(r_plus), RootBox(r_minus)), merged


def _cubic_real_brackets(coeffs):
    """Exact isolating brackets for the real roots of an irreducible cubic."""
    a, b, c, d = coeffs
    disc = (
        18 * b * c * d
        - 4 * b**3 * d
        + b * b * c * c
        - 4 * a * c**3
        - 27 * a * a * d * d
    )
    # for monic-normalized sign conventions a > 0 is ensured by the caller
    disc_sign = 1 if disc > 0 else -1
    assert disc != 0, "irreducible cubic cannot have a repeated root"
    bound = 1 + max(abs(b), abs(c), abs(d)) // a + 1
    if disc_sign < 0:
        return [(mpq(-bound), mpq(bound))], True
    hints, _ = _cubic_roots_float(b / a, c / a, d / a)
    cuts = [mpq(-bound)]
    cuts.append(_rat_of_float((hints[0] + hints[1]) / 2.0))
    cuts.append(_rat_of_float((hints[1] + hints[2]) / 2.0))
    cuts.append(mpq(bound))
    signs = [_poly_eval(coeffs, t) > 0 for t in cuts]
    if signs != [False, True, False, True]:
        raise ArithmeticError("float hints failed to isolate the cubic roots")
    return [(cuts[0], cuts[1]), (cuts[1], cuts[2]), (cuts[2], cuts[3])], False


def _bisect(coeffs, lo, hi, width):
    """Shrink a sign-change bracket below ``width``; rational midpoints are
    never roots (the polynomial is irreducible of degree >= 2)."""
    neg_at_lo = _poly_eval(coeffs, lo) < 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        if (_poly_eval(coeffs, mid) < 0) == neg_at_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _closest_cubic(coeffs, xi, rel):
    a = coeffs[0]
    brackets, has_pair = _cubic_real_brackets(coeffs)
    digits = 30
    d_last = None
    boxes_last = None
    for _ in range(MAX_ESCALATIONS):
        width = mpq(1, mpz(10) ** digits)
        br = xi.bracket_digits(digits)
        entries = []
        refined = []
        for lo, hi in brackets:
            lo, hi = _bisect(coeffs, lo, hi, width)
            refined.append((lo, hi))
            root = RatInterval(lo, hi)
            entries.append((RootBox(root), (br - root).abs()))
        brackets = refined
        if has_pair:
            # deflate by the real root: t^3+... = a (t - r)(t^2 + u t + v)
            r = RatInterval(*brackets[0])
            u = r.shift(mpq(coeffs[1], a))
            v = (r * u).shift(mpq(coeffs[2], a))
            im2 = v - u.power(2).scale(mpq(1, 4))
            im2 = RatInterval(max(mpq(0), im2.lo), max(mpq(0), im2.hi))
            re = u.scale(mpq(-1, 2))
            d2 = (br - re).power(2) + im2
            entries.append((RootBox(re, interval_sqrt(im2, digits)), interval_sqrt(d2, digits)))
        entries.sort(key=lambda e: e[1].hi)
        best_box, best_d = entries[0]
        decided = all(
            strictly_less(best_d, other_d) for _, other_d in entries[1:]
        )
        if decided and _tight(best_d, rel):
            return (best_box,), best_d
        d_last = RatInterval(
            min(e[1].lo for e in entries), min(e[1].hi for e in entries)
        )
        boxes_last = tuple(e[0] for e in entries)
        digits *= 2
    return boxes_last, d_last


def enumerate_candidates(kind: str, height_bound: int):
    """Yield defining polynomials (leading coefficient first).

    ``quadratic``: primitive irreducible p2 t^2 + p1 t + p0 with p2 > 0 and
    0 < max|pk| <= H (irreducible: discriminant not a perfect square).
    ``cubic_integer``: monic polynomials of degree 1..3 with |coeffs| <= H,
    irreducible (cubics: no integer root; quadratics: non-square
    discriminant); degree at most three includes the lower degrees.
    """
    if kind not in SEARCH_KINDS:
        raise ValueError(f"kind must be one of {SEARCH_KINDS}")
    h = int(height_bound)
    if h < 1:
        return  # every candidate has height >= 1
    if kind == "quadratic":
        for p2 in range(1, h + 1):
            for p1 in range(-h, h + 1):
                g01 = math.gcd(p2, abs(p1))
                for p0 in range(-h, h + 1):
                    disc = p1 * p1 - 4 * p2 * p0
                    if disc >= 0 and isqrt(disc) ** 2 == disc:
                        continue
                    if math.gcd(g01, abs(p0)) != 1:
                        continue
                    yield (p2, p1, p0)
        return
    for c0 in range(-h, h + 1):
        yield (1, c0)
    for c1 in range(-h, h + 1):
        for c0 in range(-h, h + 1):
            disc = c1 * c1 - 4 * c0
            if disc >= 0 and isqrt(disc) ** 2 == disc:
                continue
            yield (1, c1, c0)
    for c2 in range(-h, h + 1):
        for c1 in range(-h, h + 1):
            for c0 in range(-h, h + 1):
                if _has_integer_root(c2, c1, c0, h):
                    continue
                yield (1, c2, c1, c0)


def _has_integer_root(c2, c1, c0, h) -> bool:
    # any rational root of a monic integer cubic is an integer in the
    # Cauchy bound; c0 = 0 means the root 0
    if c0 == 0:
        return True
    for n in range(-(h + 1), h + 2):
        if ((n + c2) * n + c1) * n + c0 == 0:
            return True
    return False


def _screen_cubic(h, c2_lo, c2_hi, xi_f, prune, include_low_degrees,
                  margin_rel=_SCREEN_REL, margin_abs=_SCREEN_ABS):
    """Float screen over the cubic_integer candidates; mirrors the margin
    discipline of the quadratic kernel."""
    count = 0
    best = 1e300
    shortlist = []

    def consider(coeffs, d):
        nonlocal count, best
        count += 1
        if d < best:
            best = d
        if d <= best * (1.0 + margin_rel) + margin_abs:
            shortlist.append(coeffs)

    if include_low_degrees:
        for c0 in range(-h, h + 1):
            consider((1, c0), abs(xi_f + c0))
        for c1 in range(-h, h + 1):
            for c0 in range(-h, h + 1):
                disc = c1 * c1 - 4 * c0
                if disc >= 0 and isqrt(disc) ** 2 == disc:
                    continue
                if disc >= 0:
                    sq = math.sqrt(disc)
                    d = min(abs(xi_f - (-c1 + sq) * 0.5), abs(xi_f - (-c1 - sq) * 0.5))
                else:
                    dx = xi_f + c1 * 0.5
                    d = math.sqrt(dx * dx - disc * 0.25)
                consider((1, c1, c0), d)
    for c2 in range(c2_lo, c2_hi + 1):
        for c1 in range(-h, h + 1):
            for c0 in range(-h, h + 1):
                if _has_integer_root(c2, c1, c0, h):
                    continue
                count += 1
                if prune and c0 != 0:
                    rhi = 1.0 + max(abs(c2), abs(c1), abs(c0))
                    rlo = abs(c0) / (abs(c0) + max(1, abs(c2), abs(c1)))
                    gap = rlo - xi_f if xi_f < rlo else (xi_f - rhi if xi_f > rhi else 0.0)
                    if gap > best * (1.0 + 1e-9) + 1e-12:
                        continue
                reals, pair = _cubic_roots_float(float(c2), float(c1), float(c0))
                d = min(abs(xi_f - r) for r in reals)
                if pair is not None:
                    re, im = pair
                    d = min(d, math.sqrt((xi_f - re) ** 2 + im * im))
                if d < best:
                    best = d
                if d <= best * (1.0 + margin_rel) + margin_abs:
                    shortlist.append((1, c2, c1, c0))
    return count, best, shortlist


def _chunks(lo, hi, n):
    n = max(1, min(n, hi - lo + 1))
    size, extra = divmod(hi - lo + 1, n)
    out = []
    start = lo
    for k in range(n):
        stop = start + size - 1 + (1 if k < extra else 0)
        out.append((start, stop))
        start = stop + 1
    return out


def _run_parts(fn, parts, threads):
    if threads > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, parts))
    return [fn(part) for part in parts]


def candidate_screen(kind, height_bound, xi_f, prune=True, threads=1,
                     margin_rel=_SCREEN_REL, margin_abs=_SCREEN_ABS):
    """Partitioned screening pass; returns (count, best, shortlist)."""
    h = int(height_bound)
    parts = _chunks(1, h, threads) if kind == "quadratic" else _chunks(-h, h, threads)
    if kind == "quadratic":
        results = _run_parts(
            lambda pr: _kernels.quad_screen(h, pr[0], pr[1], xi_f, margin_rel, margin_abs, prune),
            parts,
            threads,
        )
    else:
        results = _run_parts(
            lambda pr: _screen_cubic(h, pr[0], pr[1], xi_f, prune, pr[0] == parts[0][0],
                                     margin_rel, margin_abs),
            parts,
            threads,
        )
    count = sum(r[0] for r in results)
    best = min(r[1] for r in results)
    shortlist = [c for r in results for c in r[2]]
    return count, best, shortlist


def _confirm_min(cands, xi):
    """Exact tournament over candidate polynomials; deterministic."""
    cands = sorted(set(cands))
    rel = mpq(1, mpz(10) ** 12)
    dists = {c: closest_root(c, xi, rel)[1] for c in cands}
    contenders = cands
    for _ in range(MAX_ESCALATIONS):
        best_hi = min(dists[c].hi for c in contenders)
        contenders = sorted(c for c in contenders if dists[c].lo <= best_hi)
        if len(contenders) == 1:
            return contenders[0]
        rel = rel * rel
        for c in contenders:
            dists[c] = closest_root(c, xi, rel)[1]
    raise UndecidedError(
        "tie between candidates unresolved at the escalation cap", contenders
    )


def _exponent_interval(dist: RatInterval, height: int) -> RatInterval:
    ln_h = log_enclosure(height, _LOG_EPS)
    ln_d = RatInterval(
        log_enclosure(dist.lo, _LOG_EPS).lo, log_enclosure(dist.hi, _LOG_EPS).hi
    )
    return (-ln_d) / ln_h


def best_algebraic(
    kind: str,
    xi: XiApprox,
    height_bound: int,
    rel=DIST_REL,
    threads: int = 1,
    prune: bool = True,
) -> AlgebraicCandidate:
    """Exact minimizer of |xi - alpha| over the candidate stream of ``kind``
    up to the given height (height 0 falls back to 1)."""
    if kind not in SEARCH_KINDS:
        raise ValueError(f"kind must be one of {SEARCH_KINDS}")
    h = max(1, int(height_bound))
    xi_f = float(xi.bracket_digits(40).mid())
    _, _, shortlist = candidate_screen(kind, h, xi_f, prune=prune, threads=threads)
    winner = _confirm_min(shortlist, xi)
    roots, dist = closest_root(winner, xi, rel)
    height = max(abs(c) for c in winner)
    exponent = _exponent_interval(dist, height) if height >= 2 else None
    return AlgebraicCandidate(
        coeffs=winner, height=height, roots=roots, dist=dist, exponent=exponent
    )


def best_rational(xi: XiApprox, height_bound: int, rel=DIST_REL) -> AlgebraicCandidate:
    """Minimizer of |xi - p/q| over reduced fractions of height <= H,
    found by the convergent/semiconvergent scan."""
    h = int(height_bound)
    if h < 1:
        raise ValueError("height bound must be >= 1")
    q, q1, p, p1 = 1, 0, 0, 1  # (q_j, q_{j-1}, p_j, p_{j-1}) at j = 0
    t = 0
    for a in partial_quotients(xi.params):
        if a * q + q1 > h:
            t = (h - q1) // q
            break
        q, q1, p, p1 = a * q + q1, q, a * p + p1, p
    cands = [(p, q)]
    if t >= 1:
        cands.append((t * p + p1, t * q + q1))
    digits = 30
    choice = None
    for _ in range(MAX_ESCALATIONS):
        br = xi.bracket_digits(digits)
        dists = [br.shift(-mpq(pn, qn)).abs() for pn, qn in cands]
        if len(cands) == 1:
            order = True
        else:
            order = strictly_less(dists[0], dists[1])
        if order is not None:
            idx = 0 if order else 1
            if _tight(dists[idx], mpq(rel)):
                choice = cands[idx]
                dist = dists[idx]
                break
        digits *= 2
    if choice is None:
        raise UndecidedError("rational comparison unresolved at the escalation cap", cands)
    num, den = choice
    height = max(abs(num), den)
    exponent = _exponent_interval(dist, height) if height >= 2 else None
    return AlgebraicCandidate(
        coeffs=(den, -num),
        height=height,
        roots=(RootBox(RatInterval.point(mpq(num, den))),),
        dist=dist,
        exponent=exponent,
    )


def best_simultaneous(
    xi: XiApprox,
    bound: int,
    rel=DIST_REL,
    threads: int = 1,
    screen_bits: int = 64,
) -> SimulResult:
    """Exact minimizer over integer denominators 0 < x0 <= bound."""
    x_max = int(bound)
    if x_max < 1:
        raise ValueError("bound must be >= 1")
    if x_max > SIMUL_BOUND_CAP:
        raise ResourceLimitError(f"bound {x_max} exceeds the {SIMUL_BOUND_CAP} scan cap")
    if not 16 <= screen_bits <= 64:
        raise ValueError("screen_bits must be in [16, 64]")
    br = xi.bracket(mpq(1, mpz(1) << (screen_bits + 16)))
    lo1 = br.lo
    xi_fp = int((lo1.numerator << screen_bits) // lo1.denominator)
    lo2 = br.power(2).lo
    xi2_fp = int((lo2.numerator << screen_bits) // lo2.denominator)
    margin = 8 * (x_max + 1)
    parts = _chunks(1, x_max, threads)
    results = _run_parts(
        lambda pr: _kernels.simul_screen(pr[0], pr[1], xi_fp, xi2_fp, margin, screen_bits),
        parts,
        threads,
    )
    cands = sorted({x0 for _, lst in results for x0 in lst})

    digits = 40
    winner = None
    for _ in range(MAX_ESCALATIONS):
        b1 = xi.bracket_digits(digits)
        b2 = b1.power(2)
        scored = [
            (x0, interval_max(
                nearest_int_distance(b1.scale(x0)),
                nearest_int_distance(b2.scale(x0)),
            ))
            for x0 in cands
        ]
        best_hi = min(d.hi for _, d in scored)
        contenders = [(x0, d) for x0, d in scored if d.lo <= best_hi]
        if len(contenders) == 1 and _tight(contenders[0][1], mpq(rel)):
            winner, delta = contenders[0]
            break
        cands = [x0 for x0, _ in contenders]
        digits *= 2
    if winner is None:
        raise UndecidedError(
            "simultaneous minimizer tie unresolved at the escalation cap",
            [x0 for x0, _ in contenders],
        )

    # nearest integers to x0 xi and x0 xi^2, certified strictly nearest
    for _ in range(MAX_ESCALATIONS):
        b1 = xi.bracket_digits(digits)
        b2 = b1.power(2)
        y1, y2 = b1.scale(winner), b2.scale(winner)
        n1 = rat_floor(y1.mid() + HALF)
        n2 = rat_floor(y2.mid() + HALF)
        if y1.shift(-n1).abs().hi < HALF and y2.shift(-n2).abs().hi < HALF:
            break
        digits *= 2

    inv_gamma = gamma_enclosure(mpq(1, mpz(10) ** 25)).reciprocal()
    arg = log_enclosure(x_max, _LOG_EPS) * inv_gamma
    normalized = delta * exp_enclosure(arg, mpq(1, mpz(10) ** 20))
    return SimulResult(
        X=x_max, x0=winner, x1=int(n1), x2=int(n2), delta=delta, normalized=normalized
    )
