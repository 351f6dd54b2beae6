# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled screening kernels; semantics mirror ``_screen_py`` exactly."""

from libc.math cimport sqrt


cdef long long _gcd(long long a, long long b) noexcept nogil:
    while b:
        a, b = b, a % b
    return a


def simul_screen(unsigned long long start, unsigned long long stop,
                 unsigned long long xi_fp, unsigned long long xi2_fp,
                 unsigned long long margin, int bits=64):
    cdef unsigned long long mask = <unsigned long long>0 - 1
    if bits < 64:
        mask = (<unsigned long long>1 << bits) - 1
    cdef unsigned long long half = <unsigned long long>1 << (bits - 1)
    cdef unsigned long long best = mask
    cdef unsigned long long f1 = ((start - 1) * xi_fp) & mask
    cdef unsigned long long f2 = ((start - 1) * xi2_fp) & mask
    cdef unsigned long long g1 = f1, g2 = f2
    cdef unsigned long long d1, d2, s, x0, cutoff
    for x0 in range(start, stop + 1):
        f1 = (f1 + xi_fp) & mask
        f2 = (f2 + xi2_fp) & mask
        d1 = f1 if f1 < half else (mask - f1) + 1
        d2 = f2 if f2 < half else (mask - f2) + 1
        s = d1 if d1 > d2 else d2
        if s < best:
            best = s
    cutoff = best + margin
    out = []
    f1, f2 = g1, g2
    for x0 in range(start, stop + 1):
        f1 = (f1 + xi_fp) & mask
        f2 = (f2 + xi2_fp) & mask
        d1 = f1 if f1 < half else (mask - f1) + 1
        d2 = f2 if f2 < half else (mask - f2) + 1
        s = d1 if d1 > d2 else d2
        if s <= cutoff:
            out.append(x0)
    return int(best), out


def quad_screen(long long h, long long p2_lo, long long p2_hi, double xi,
                double margin_rel, double margin_abs, bint prune):
    cdef long long p2, p1, p0, disc, r, g01, p1sq, ap0, ap1, m, m2
    cdef long long count = 0
    cdef double best = 1e300
    cdef double inv, sq, r1, r2, e1, e2, d, re, dx, rhi, rlo, gap
    shortlist = []
    for p2 in range(p2_lo, p2_hi + 1):
        inv = 0.5 / p2
        for p1 in range(-h, h + 1):
            g01 = _gcd(p2, -p1 if p1 < 0 else p1)
            p1sq = p1 * p1
            ap1 = -p1 if p1 < 0 else p1
            for p0 in range(-h, h + 1):
                disc = p1sq - 4 * p2 * p0
                if disc >= 0:
                    r = <long long>sqrt(<double>disc)
                    while r * r > disc:
                        r -= 1
                    while (r + 1) * (r + 1) <= disc:
                        r += 1
                    if r * r == disc:
                        continue
                if _gcd(g01, -p0 if p0 < 0 else p0) != 1:
                    continue
                count += 1
                if prune and p0 != 0:
                    ap0 = -p0 if p0 < 0 else p0
                    m = ap1 if ap1 > ap0 else ap0
                    rhi = 1.0 + m / (<double>p2)
                    m2 = p2 if p2 > ap1 else ap1
                    rlo = ap0 / (<double>(ap0 + m2))
                    gap = 0.0
                    if xi < rlo:
                        gap = rlo - xi
                    elif xi > rhi:
                        gap = xi - rhi
                    if gap > best * (1.0 + 1e-9) + 1e-12:
                        continue
                if disc >= 0:
                    sq = sqrt(<double>disc)
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
