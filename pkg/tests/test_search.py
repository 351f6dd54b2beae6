import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
import sympy

from fibcf import (
    best_algebraic,
    best_rational,
    best_simultaneous,
    closest_root,
    enumerate_candidates,
    height_of_rational,
    interval_sqrt,
    growth_table,
)
from fibcf._kernels import _screen_py, COMPILED
from fibcf.backend import mpq, mpz
from fibcf.exact import RatInterval
from fibcf.search import candidate_screen
from oracles import (
    brute_best_rational,
    brute_simultaneous,
    cubic_recount,
    quad_recount,
    xi_value,
)


def test_height_of_rational():
    assert height_of_rational(3, 4) == 4
    assert height_of_rational(0, 1) == 1
    assert height_of_rational(22, 7) == 22
    assert height_of_rational(-22, 7) == 22
    with pytest.raises(ValueError):
        height_of_rational(2, 4)
    with pytest.raises(ValueError):
        height_of_rational(1, 0)


def test_interval_sqrt():
    got = interval_sqrt(RatInterval(mpq(4), mpq(9)), 30)
    assert got.contains(2) and got.contains(3)
    assert got.lo <= 2 and 3 <= got.hi
    assert got.hi - 3 <= mpq(1, 10**29)
    with pytest.raises(ValueError):
        interval_sqrt(RatInterval(-1, 1), 10)


@given(
    st.fractions(min_value=0, max_value=1000, max_denominator=999),
    st.integers(min_value=5, max_value=40),
)
def test_interval_sqrt_brackets(q, digits):
    iv = interval_sqrt(RatInterval.point(mpq(q)), digits)
    assert iv.lo * iv.lo <= q <= iv.hi * iv.hi
    assert iv.hi - iv.lo <= mpq(2, 10**digits) * max(1, q)


# --- best simultaneous approximation -----------------------------------------


def test_simul_single_candidate(xi12):
    res = best_simultaneous(xi12, 1)
    assert res.x0 == 1 and res.x1 == 1 and res.x2 == 1
    xi = xi_value(1, 2)
    exact = max(min(xi, 1 - xi), min(xi * xi, 1 - xi * xi))
    assert res.delta.lo <= exact <= res.delta.hi


@pytest.mark.parametrize("bound", [7, 40, 160, 300])
def test_simul_matches_brute_force(xi12, bound):
    res = best_simultaneous(xi12, bound)
    x0, delta = brute_simultaneous(1, 2, bound)
    assert res.x0 == x0
    assert res.delta.lo <= delta <= res.delta.hi


def test_simul_monotone(xi12):
    deltas = [best_simultaneous(xi12, x).delta for x in (10, 100, 1000, 10**4)]
    for prev, cur in zip(deltas, deltas[1:]):
        assert cur.lo <= prev.hi


def test_simul_triple_is_feasible(p12, xi12, triples30):
    # the constructed triples witness the minimum at X = X_i
    rows = growth_table(p12, 5, xi=xi12)
    for t, row in zip(triples30[1:5], rows[:4]):
        res = best_simultaneous(xi12, int(t.x0))
        assert res.delta.lo <= row.E.hi / t.x0


def test_simul_screen_precisions_agree(xi12):
    a = best_simultaneous(xi12, 2000, screen_bits=64)
    b = best_simultaneous(xi12, 2000, screen_bits=48)
    assert (a.x0, a.x1, a.x2) == (b.x0, b.x1, b.x2)
    assert a.delta == b.delta


def test_simul_threads_agree(xi12):
    a = best_simultaneous(xi12, 5000, threads=1)
    b = best_simultaneous(xi12, 5000, threads=7)
    assert a == b


def test_simul_validation(xi12):
    from fibcf import ResourceLimitError

    with pytest.raises(ValueError):
        best_simultaneous(xi12, 0)
    with pytest.raises(ValueError):
        best_simultaneous(xi12, 10, screen_bits=8)
    with pytest.raises(ResourceLimitError):
        best_simultaneous(xi12, 10**9)


# --- candidate enumeration ----------------------------------------------------


def test_quadratic_candidates_h1():
    got = sorted(enumerate_candidates("quadratic", 1))
    assert got == [(1, -1, -1), (1, -1, 1), (1, 0, 1), (1, 1, -1), (1, 1, 1)]
    assert (1, 1, -1) in got and (1, -1, -1) in got
    assert (1, 0, -1) not in got  # t^2 - 1 is reducible


def test_cubic_h0_semantics():
    assert list(enumerate_candidates("cubic_integer", 0)) == []


def test_enumeration_counts_match_recount_oracle():
    for h in range(1, 6):
        assert sum(1 for _ in enumerate_candidates("quadratic", h)) == quad_recount(h)
        assert (
            sum(1 for _ in enumerate_candidates("cubic_integer", h))
            == cubic_recount(h)
        )


def test_enumeration_matches_sympy_irreducibility():
    t = sympy.symbols("t")
    for h in (1, 2):
        mine = set(enumerate_candidates("quadratic", h))
        ref = set()
        for p2 in range(1, h + 1):
            for p1 in range(-h, h + 1):
                for p0 in range(-h, h + 1):
                    if math.gcd(math.gcd(p2, abs(p1)), abs(p0)) != 1:
                        continue
                    if sympy.Poly(p2 * t**2 + p1 * t + p0, t).is_irreducible:
                        ref.add((p2, p1, p0))
        assert mine == ref


def test_quadratic_candidates_have_nonsquare_discriminant():
    for p2, p1, p0 in enumerate_candidates("quadratic", 4):
        disc = p1 * p1 - 4 * p2 * p0
        assert disc < 0 or math.isqrt(disc) ** 2 != disc
        assert math.gcd(math.gcd(p2, abs(p1)), abs(p0)) == 1


def test_kind_validation(xi12):
    with pytest.raises(ValueError):
        list(enumerate_candidates("quartic", 3))
    with pytest.raises(ValueError):
        best_algebraic("rational", xi12, 3)


# --- closest root --------------------------------------------------------------


def test_closest_root_linear(xi12):
    roots, dist = closest_root((1, -1), xi12)
    assert roots[0].is_real and roots[0].re.contains(1)
    xi = xi_value(1, 2)
    assert dist.lo <= 1 - xi <= dist.hi


def test_closest_root_golden_polynomials(xi12):
    # the root (-1 + sqrt 5)/2 of t^2 + t - 1 is the nearest to xi_{1,2}
    roots, dist = closest_root((1, 1, -1), xi12)
    assert len(roots) == 1 and roots[0].is_real
    assert abs(float(roots[0].re.mid()) - 0.6180339887498949) < 1e-12
    xi = xi_value(1, 2)
    exact = abs(xi - (Fraction(math.isqrt(5 * 10**80), 10**40) - 1) / 2)
    assert abs(Fraction(dist.mid()) - exact) < Fraction(1, 10**20)
    # while t^2 - t - 1 is closest through the golden ratio itself
    roots2, dist2 = closest_root((1, -1, -1), xi12)
    assert abs(float(roots2[0].re.mid()) - 1.618033988749895) < 1e-12
    assert dist2.lo > dist.hi


def test_closest_root_complex_quadratic(xi12):
    roots, dist = closest_root((1, 0, 1), xi12)  # t^2 + 1
    box = roots[0]
    assert not box.is_real
    assert box.im.contains(1)
    # dist^2 = xi^2 + 1 exactly; also dist >= |Im|
    xi = xi_value(1, 2)
    exact2 = xi * xi + 1
    d2 = dist.power(2)
    assert d2.lo <= exact2 <= d2.hi
    assert dist.lo >= box.im.lo - mpq(1, 10**20)


def test_closest_root_cubic_one_real(xi12):
    roots, dist = closest_root((1, 0, 0, -2), xi12)  # t^3 - 2
    assert roots[0].is_real
    cbrt2 = Fraction(2 ** Fraction(1, 3)).limit_denominator(10**12)
    assert abs(Fraction(roots[0].re.mid()) - cbrt2) < Fraction(1, 10**10)
    xi = xi_value(1, 2)
    assert abs(Fraction(dist.mid()) - (cbrt2 - xi)) < Fraction(1, 10**9)


def test_closest_root_cubic_three_real(xi12):
    # t^3 - 4t + 1 has three real roots; sympy locates them independently
    coeffs = (1, 0, -4, 1)
    roots, dist = closest_root(coeffs, xi12)
    t = sympy.symbols("t")
    xi = float(xi_value(1, 2))
    ref = min(abs(xi - complex(r)) for r in sympy.Poly(t**3 - 4 * t + 1, t).nroots(30))
    assert abs(float(dist.mid()) - ref) < 1e-12


def test_closest_root_validation(xi12):
    with pytest.raises(ValueError):
        closest_root((0, 1), xi12)
    with pytest.raises(ValueError):
        closest_root((1, 0, 0, 0, 1), xi12)


# --- best rational -------------------------------------------------------------


def test_best_rational_examples(xi12, xi21):
    c = best_rational(xi12, 4)
    assert c.coeffs == (4, -3)  # 3/4
    assert c.height == 4
    assert c.dist.lo > 0
    c1 = best_rational(xi12, 1)
    assert c1.coeffs == (1, -1)  # 1/1 is closer than 0/1 to xi_{1,2}
    c0 = best_rational(xi21, 1)
    assert c0.coeffs == (1, 0)  # while xi_{2,1} < 1/2 prefers 0/1


def test_best_rational_monotone(xi12):
    d10 = best_rational(xi12, 10).dist
    d100 = best_rational(xi12, 100).dist
    assert d100.hi <= d10.hi


def test_best_rational_matches_exhaustive(xi12):
    for h in (1, 2, 3, 5, 8, 13, 30, 61, 120):
        (p, q), dist = brute_best_rational(1, 2, h)
        c = best_rational(xi12, h)
        assert c.coeffs == (q, -p)
        assert c.dist.lo <= dist <= c.dist.hi
        assert c.height <= h


def test_best_rational_beats_random_fractions(xi12):
    rng = random.Random(7)
    h = 200
    c = best_rational(xi12, h)
    xi = xi_value(1, 2)
    for _ in range(200):
        q = rng.randrange(1, h + 1)
        p = rng.randrange(0, q + 1)
        g = math.gcd(p, q)
        p, q = p // g, q // g
        assert c.dist.lo <= abs(xi - Fraction(p, q)) + Fraction(1, 10**50)


def test_best_rational_exponent_defined(xi12):
    c = best_rational(xi12, 100)
    assert c.exponent is not None and c.exponent.lo > 2


# --- best algebraic ------------------------------------------------------------


def test_best_algebraic_matches_sympy_brute(xi12):
    t = sympy.symbols("t")
    xi = float(xi_value(1, 2))
    for kind, h in (("quadratic", 3), ("cubic_integer", 2)):
        best = None
        best_c = None
        for coeffs in enumerate_candidates(kind, h):
            poly = sum(c * t ** (len(coeffs) - 1 - k) for k, c in enumerate(coeffs))
            d = min(abs(xi - complex(r)) for r in sympy.Poly(poly, t).nroots(30))
            if best is None or d < best - 1e-18:
                best, best_c = d, coeffs
        got = best_algebraic(kind, xi12, h)
        assert got.coeffs == best_c
        assert abs(float(got.dist.mid()) - best) < 1e-12


def test_best_algebraic_nested_heights(xi12):
    for kind in ("quadratic", "cubic_integer"):
        d10 = best_algebraic(kind, xi12, 10).dist
        d20 = best_algebraic(kind, xi12, 20).dist
        assert d20.hi <= d10.hi


def test_best_algebraic_prune_is_sound(xi12):
    for kind in ("quadratic", "cubic_integer"):
        for h in (2, 5):
            a = best_algebraic(kind, xi12, h, prune=True)
            b = best_algebraic(kind, xi12, h, prune=False)
            assert a == b


def test_best_algebraic_h0_falls_back(xi12):
    assert best_algebraic("cubic_integer", xi12, 0) == best_algebraic(
        "cubic_integer", xi12, 1
    )


def test_best_algebraic_threads_agree(xi12):
    a = best_algebraic("quadratic", xi12, 25, threads=1)
    b = best_algebraic("quadratic", xi12, 25, threads=6)
    assert a == b
    c = best_algebraic("cubic_integer", xi12, 6, threads=1)
    d = best_algebraic("cubic_integer", xi12, 6, threads=5)
    assert c == d


def test_best_algebraic_screen_margins_agree(xi12):
    xi_f = float(xi12.bracket_digits(40).mid())
    from fibcf.search import _confirm_min

    _, _, short_a = candidate_screen("quadratic", 12, xi_f, margin_rel=1e-6, margin_abs=1e-9)
    _, _, short_b = candidate_screen("quadratic", 12, xi_f, margin_rel=1e-4, margin_abs=1e-7)
    assert _confirm_min(short_a, xi12) == _confirm_min(short_b, xi12)


def test_best_quadratic_h30_frozen(xi12):
    c = best_algebraic("quadratic", xi12, 30)
    assert c.coeffs == (7, 13, -13)
    assert c.height == 13
    assert c.exponent.lo > 2


def test_quadratic_screen_counts_match_enumeration(xi12):
    xi_f = float(xi12.bracket_digits(40).mid())
    for h in (1, 3, 5):
        count, _, _ = candidate_screen("quadratic", h, xi_f)
        assert count == sum(1 for _ in enumerate_candidates("quadratic", h))
        count_c, _, _ = candidate_screen("cubic_integer", h, xi_f)
        assert count_c == sum(1 for _ in enumerate_candidates("cubic_integer", h))


@pytest.mark.skipif(COMPILED is None, reason="compiled kernels not built")
def test_kernel_implementations_agree(xi12):
    xi_f = float(xi12.bracket_digits(40).mid())
    for prune in (True, False):
        a = COMPILED.quad_screen(8, 1, 8, xi_f, 1e-6, 1e-9, prune)
        b = _screen_py.quad_screen(8, 1, 8, xi_f, 1e-6, 1e-9, prune)
        assert a == b
    lo = xi12.bracket(mpq(1, mpz(1) << 80)).lo
    fp1 = int((lo.numerator << 64) // lo.denominator)
    lo2 = xi12.bracket(mpq(1, mpz(1) << 80)).power(2).lo
    fp2 = int((lo2.numerator << 64) // lo2.denominator)
    assert COMPILED.simul_screen(1, 4000, fp1, fp2, 8 * 4001) == _screen_py.simul_screen(
        1, 4000, fp1, fp2, 8 * 4001
    )
