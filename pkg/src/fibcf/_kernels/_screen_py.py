"""Pure-Python screening kernels.

Reference semantics for the compiled versions in ``_screen.pyx``; either
implementation may be active (see ``fibcf._kernels``).  Screening is
heuristic-but-safe: every shortlisted candidate is re-checked downstream in
exact arithmetic, and the margins are wide enough that the true minimizer
always survives the screen.
"""

from math import gcd, isqrt, sqrt


def simul_screen(start, stop, xi_fp, xi2_fp, margin, bits=64):
    """Fixed-point scan of the denominators x0 = start .. stop.

    ``xi_fp``/``xi2_fp`` are floor(xi * 2^bits) and floor(xi^2 * 2^bits).
    Returns ``(best, candidates)``: the minimal screened score
    max(dist(x0*xi, Z), dist(x0*xi^2, Z)) in fixed-point units, and every
    x0 scoring within ``margin`` of it.
    """
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    best = mask
    f1 = (start - 1) * xi_fp & mask
    f2 = (start - 1) * xi2_fp & mask
    g1, g2 = f1, f2
    for _ in range(start, stop + 1):
        f1 = (f1 + xi_fp) & mask
        f2 = (f2 + xi2_fp) & mask
        d1 = f1 if f1 < half else full - f1
        d2 = f2 if f2 < half else full - f2
        s = d1 if d1 > d2 else d2
        if s < best:
            best = s
    cutoff = best + margin
    out = []
    f1, f2 = g1, g2
    for x0 in range(start, stop + 1):
        f1 = (f1 + xi_fp) & mask
        f2 = (f2 + xi2_fp) & mask
        d1 = f1 if f1 < half else full - f1
        d2 = f2 if f2 < half else full - f2
        s = d1 if d1 > d2 else d2
        if s <= cutoff:
            out.append(x0)
    return best, out


def quad_screen(h, p2_lo, p2_hi, xi, margin_rel, margin_abs, prune):
    """Scan primitive irreducible quadratics p2 t^2 + p1 t + p0 with
    p2 in [p2_lo, p2_hi] and |p1|, |p0| <= h.

    Returns ``(count, best, shortlist)``: the number of valid candidates
    seen, the smallest screened root distance to ``xi`` (a double), and the
    coefficient triples whose screened distance stayed within the margins
    of the running best (a superset of those within margin of the final
    best).  ``prune`` enables the sound annulus gate from the Cauchy root
    bounds; it never drops a candidate that could beat the running best.
    """
    count = 0
    best = 1e300
    shortlist = []
    for p2 in range(p2_lo, p2_hi + 1):
        inv = 0.5 / p2
        for p1 in range(-h, h + 1):
            g01 = gcd(p2, -p1 if p1 < 0 else p1)
            p1sq = p1 * p1
            ap1 = -p1 if p1 < 0 else p1
            for p0 in range(-h, h + 1):
                disc = p1sq - 4 * p2 * p0
                if disc >= 0:
                    r = isqrt(disc)
                    if r * r == disc:
                        continue  # rational roots
                if gcd(g01, -p0 if p0 < 0 else p0) != 1:
                    continue
                count += 1
                if prune and p0 != 0:
                    ap0 = -p0 if p0 < 0 else p0
                    m = ap1 if ap1 > ap0 else ap0
                    rhi = 1.0 + m / p2
                    m2 = p2 if p2 > ap1 else ap1
                    rlo = ap0 / (ap0 + m2)
                    gap = 0.0
                    if xi < rlo:
                        gap = rlo - xi
                    elif xi > rhi:
                        gap = xi - rhi
                    if gap > best * (1.0 + 1e-9) + 1e-12:
                        continue
                if disc >= 0:
                    sq = sqrt(disc)
                    r1 = (-p1 + sq) * inv
                    r2 = (-p1 - sq) * inv
                    e1 = xi - r1 if xi > r1 else r1 - xi
                    e2 = xi - r2 if xi > r2 else r2 - xi
                    d = e1 if e1 < e2 else e2
                else:
                    re = -p1 * inv
                    dx = xi - re
                    d = sqrt(dx * dx + (-disc) * inv * inv)
                if d < best:
                    best = d
                if d <= best * (1.0 + margin_rel) + margin_abs:
                    shortlist.append((p2, p1, p0))
    return count, best, shortlist
