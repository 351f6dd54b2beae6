from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fibcf import (
    RatInterval,
    GrowthRow,
    UndecidedError,
    cube_experiment,
    exp_enclosure,
    fit_constants,
    log_enclosure,
    growth_table,
)
from fibcf.backend import mpq, mpz
from oracles import e_bracket, xi_bracket


def test_log_enclosure_examples():
    eps = mpq(1, 10**12)
    l1 = log_enclosure(1, eps)
    assert l1.contains(0) and l1.width() <= eps
    l2 = log_enclosure(2, eps)
    l4 = log_enclosure(4, eps)
    twice = l2 + l2
    assert l4.lo <= twice.hi and twice.lo <= l4.hi  # ln 4 = 2 ln 2
    with pytest.raises(ValueError):
        log_enclosure(0, eps)
    with pytest.raises(ValueError):
        log_enclosure(-3, eps)


def test_log_of_e_approximant_is_near_one():
    e_lo, e_hi = e_bracket(20)
    enc = log_enclosure(mpq(e_lo.numerator, e_lo.denominator), mpq(1, 10**12))
    assert abs(enc.lo - 1) < mpq(1, 10**8) and abs(enc.hi - 1) < mpq(1, 10**8)


def test_log_enclosure_huge_argument():
    x = mpz(7) ** 4000  # about 3381 digits
    enc = log_enclosure(x, mpq(1, 10**10))
    assert enc.width() <= mpq(1, 10**10)
    # ln(7^4000) = 4000 ln 7
    l7 = log_enclosure(7, mpq(1, 10**14))
    assert enc.lo <= 4000 * l7.hi and 4000 * l7.lo <= enc.hi


def test_exp_enclosure_round_trip():
    for x in (2, 10, mpq(1, 3)):
        enc = exp_enclosure(log_enclosure(x, mpq(1, 10**15)), mpq(1, 10**12))
        assert enc.contains(mpq(x))


@settings(deadline=None, max_examples=30)
@given(
    st.fractions(min_value="1/1000", max_value=1000, max_denominator=10**6),
    st.integers(min_value=8, max_value=20),
)
def test_exp_log_round_trip_random(x, digits):
    eps = mpq(1, mpz(10) ** digits)
    enc = exp_enclosure(log_enclosure(mpq(x), eps * eps), eps)
    assert enc.contains(mpq(x))
    assert enc.hi / enc.lo <= 1 + 4 * eps


def test_exp_enclosure_huge_negative():
    enc = exp_enclosure(RatInterval.point(-1000), mpq(1, 10**10))
    assert 0 < enc.lo <= enc.hi
    assert enc.hi / enc.lo <= 1 + mpq(1, 10**8)
    back = log_enclosure(enc.lo, mpq(1, 10**6))
    assert back.contains(-1000) or abs(back.hi + 1000) < mpq(1, 10**6)


def test_table_shape(p12, xi12):
    rows = growth_table(p12, 8, xi=xi12)
    assert [r.i for r in rows] == list(range(2, 9))
    first = rows[0]
    assert first.growth_ratio is None  # X_1 = 1 for a = 1
    assert first.limit_val is None
    assert first.q_ratio == RatInterval.point(4)  # X_2 * 1^(-gamma) exactly
    for r in rows[1:]:
        assert r.growth_ratio is not None and r.limit_val is not None
        assert r.E.lo > 0 and not r.undecided


def test_table_growth_defined_at_i2_for_a2(p21, xi21):
    rows = growth_table(p21, 6, xi=xi21)
    assert rows[0].growth_ratio is not None  # X_1 = 2 here
    # q_2 = 8 * 2^(-gamma), checked against a float reference
    q2 = rows[0].q_ratio
    assert abs(float(q2.mid()) - 8 * 2 ** -((1 + 5**0.5) / 2)) < 1e-9


def test_q_ratio_against_float_reference(p12, xi12):
    rows = growth_table(p12, 5, xi=xi12)
    golden = (1 + 5**0.5) / 2
    for r, x_cur, x_prev in zip(rows[1:], (25, 576, 81788), (4, 25, 576)):
        assert abs(float(r.q_ratio.mid()) - x_cur * x_prev**-golden) < 1e-8


def test_e2_against_oracle(p12, xi12):
    row = growth_table(p12, 3, xi=xi12)[0]
    lo, hi = xi_bracket(1, 2, 260)
    cands = []
    for t in (lo, hi):
        cands.append(max(abs(4 * t - 3), abs(4 * t * t - 2)) * 4)
    o_lo, o_hi = min(cands), max(cands)
    # both enclose the same exact value, so they must intersect tightly
    assert row.E.lo <= o_hi and o_lo <= row.E.hi
    assert row.E.width() < mpq(1, 10**30)


def test_rows_nested_at_double_precision(p12, xi12):
    coarse = growth_table(p12, 10, xi=xi12, extra_digits=40)
    fine = growth_table(p12, 10, xi=xi12, extra_digits=80)
    for c, f in zip(coarse, fine):
        assert c.E.encloses(f.E)
        if c.q_ratio is not None:
            assert c.q_ratio.lo <= f.q_ratio.hi and f.q_ratio.lo <= c.q_ratio.hi


def test_limit_deviation_decreases(p12, xi12, triples30):
    # deviations shrink doubly exponentially, so each row needs its own
    # target precision to resolve them strictly
    rows = growth_table(p12, 14, xi=xi12)
    from fibcf.backend import num_digits

    devs = []
    for r in rows:
        if r.i < 5 or r.limit_val is None:
            continue
        digits = 2 * num_digits(triples30[r.i - 3].x0) + 30
        br = xi12.bracket_digits(digits)
        target = br.power(2) + br.scale(3) + RatInterval.point(3)
        devs.append((r.limit_val - target).abs())
    for prev, cur in zip(devs, devs[1:]):
        assert cur.hi <= prev.lo


def test_fit_constants(table30):
    c1, c2, c3 = fit_constants(table30)
    assert 0 < c1 <= c2
    assert c3 > 0
    assert c1 == min(r.q_ratio.lo for r in table30)
    assert c2 == max(r.q_ratio.hi for r in table30)


def test_fit_constants_refuses_undecided(table30):
    broken = list(table30[:9]) + [
        GrowthRow(i=11, x_digits=1, E=None, growth_ratio=None, limit_val=None,
                   q_ratio=None, undecided=("E",))
    ]
    with pytest.raises(UndecidedError) as err:
        fit_constants(broken)
    assert 11 in err.value.items
    with pytest.raises(ValueError):
        fit_constants(table30[:5])  # does not reach i = 10


def test_table_bounds_checked(p12):
    with pytest.raises(ValueError):
        growth_table(p12, 1)
    with pytest.raises(ValueError):
        growth_table(p12, 31)


def test_cube_experiment_findings(p12, xi12):
    rows = cube_experiment(p12, 12, mpq(1, 10), xi=xi12)
    failing = [r.i for r in rows if r.passes is False]
    undecided = [r.i for r in rows if r.passes is None]
    assert failing == [2, 3, 4, 5]
    assert undecided == []
    for r in rows:
        assert 0 <= r.cube_dist.lo and r.cube_dist.hi <= mpq(1, 2) + mpq(1, 10**20)
        assert r.threshold.lo > 0
        if r.passes is True:
            assert r.threshold.hi < r.cube_dist.lo
        if r.passes is False:
            assert r.cube_dist.hi < r.threshold.lo


def test_cube_tiny_delta_rows_fail(p12, xi12):
    rows = cube_experiment(p12, 8, mpq(1, 10**6), xi=xi12)
    assert all(r.passes is False for r in rows)  # thresholds sit just below 1


def test_cube_rows_nested(p12, xi12):
    coarse = cube_experiment(p12, 8, mpq(1, 10), xi=xi12, extra_digits=40)
    fine = cube_experiment(p12, 8, mpq(1, 10), xi=xi12, extra_digits=80)
    for c, f in zip(coarse, fine):
        assert c.cube_dist.encloses(f.cube_dist)


def test_cube_bounds_checked(p12):
    with pytest.raises(ValueError):
        cube_experiment(p12, 26, mpq(1, 10))
    with pytest.raises(ValueError):
        cube_experiment(p12, 10, 0)
    with pytest.raises(ValueError):
        cube_experiment(p12, 10, 1)


def test_threads_do_not_change_tables(p12, xi12):
    seq = growth_table(p12, 10, xi=xi12)
    par = growth_table(p12, 10, xi=xi12, threads=4)
    assert seq == par
    seq_c = cube_experiment(p12, 10, mpq(1, 10), xi=xi12)
    par_c = cube_experiment(p12, 10, mpq(1, 10), xi=xi12, threads=4)
    assert seq_c == par_c


def test_log_accepts_fraction():
    enc = log_enclosure(Fraction(1, 4), mpq(1, 10**10))
    l4 = log_enclosure(4, mpq(1, 10**10))
    assert (enc + l4).contains(0)
