from fractions import Fraction as F

import pytest
from hypothesis import given

from strategies import mirror_like, series

from real_quintic.exact_series import (
    PuiseuxLogSeries as S,
    SeriesError,
    TruncationError,
    add,
    div,
    mul,
    reversion,
    substitute,
    theta,
)

ORDER = 8


def z(e, order=ORDER, c=1):
    return S.monomial("z", e, order, c)


# -- examples -------------------------------------------------------------


def test_add_cancellation_keeps_order():
    s = add(S.from_terms("z", {1: 1, 2: 1}, ORDER), z(1, c=-1))
    assert s == z(2) and s.order == ORDER


def test_add_identity_and_heads():
    w0 = S.from_terms("z", {0: 1, 1: 120, 2: 113400}, 3)
    assert w0 + S.zero("z", 3) == w0
    got = S.from_terms("z", {0: 1, 1: 120}, 3) + S.from_terms("z", {1: 770}, 3)
    assert [got.coeff(k) for k in range(3)] == [1, 890, 0]


def test_add_truncation_is_min():
    assert (z(0, 4) + z(0, 6)).order == 4


def test_add_variable_mismatch():
    with pytest.raises(SeriesError):
        z(1) + S.monomial("q", 1, ORDER)


def test_mul_examples():
    assert (z(F(1, 2)) * z(F(1, 2))).truncate(ORDER) == z(1)
    w0 = S.from_terms("z", {0: 1, 1: 120, 2: 113400}, 3)
    sq = mul(w0, w0)
    assert [sq.coeff(k) for k in range(3)] == [1, 240, 241200]
    log = S.log_var("z", ORDER)
    prod = log * (z(1) * log)
    assert prod.coeff(1, log=2) == 1 and prod.log_grade == 2


def test_mul_log_overflow_rejected():
    log = S.log_var("z", ORDER)
    with pytest.raises(SeriesError):
        (log * log * log) * log


def test_quarter_exponents_rejected():
    with pytest.raises(SeriesError):
        z(F(1, 4))


def test_div_examples(periods):
    assert div(z(1), z(F(1, 2))) == z(F(1, 2), ORDER - F(1, 2))
    x = S.from_terms("z", {0: 3, 1: 5}, ORDER)
    assert x / x == S.constant("z", 1, ORDER)
    t = periods.omega[1] / periods.omega[0]
    assert t.coeff(0, log=1) == 1
    assert t.coeff(1) == 770


def test_div_by_zero_series():
    with pytest.raises(SeriesError):
        z(0) / S.zero("z", ORDER)


def test_theta_examples(periods):
    assert theta(z(F(1, 2))) == z(F(1, 2), c=F(1, 2))
    assert theta(S.log_var("z", ORDER)) == S.constant("z", 1, ORDER)
    tw = theta(periods.omega0)
    assert [tw.coeff(k) for k in range(3)] == [0, 120, 226800]


def test_coefficient_beyond_truncation_raises():
    with pytest.raises(TruncationError):
        z(1, 3).coeff(3)


def test_reversion_examples(periods):
    zq = periods.z_of_q
    assert [zq.coeff(k) for k in (1, 2, 3)] == [1, -770, 171525]
    assert reversion(S.monomial("z", 1, 6)) == S.monomial("q", 1, 6)
    q = periods.q_of_z.truncate(11)
    back = substitute(q, periods.z_of_q)
    assert back.truncate(11) == S.monomial("q", 1, 11)


def test_reversion_needs_unit_lead():
    with pytest.raises(SeriesError):
        reversion(S.from_terms("z", {1: 2, 2: 1}, 5))


def test_substitute_examples(periods):
    zq = periods.z_of_q
    assert [substitute(z(1, 10), zq).coeff(k) for k in (1, 2, 3)] == [1, -770, 171525]
    half = substitute(z(F(1, 2), 10), zq)
    assert half.coeff(F(1, 2)) == 1 and half.coeff(F(3, 2)) == -385
    # cross-check by squaring
    assert (half * half).truncate(6) == zq.truncate(6)
    assert substitute(S.constant("z", 7, 5), zq).coeff(0) == 7


def test_substitute_constant_inner_rejected():
    with pytest.raises(SeriesError):
        substitute(z(1), S.from_terms("q", {0: 1, 1: 1}, 5))


# -- properties ------------------------------------------------------------

@given(series(), series())
def test_mul_commutes(a, b):
    assert a * b == b * a


@given(series(), series(unit=True))
def test_div_then_mul(a, b):
    q = a / b
    back = q * b
    top = min(back.order, a.order)
    assert back.truncate(top) == a.truncate(top)


@given(series(), series())
def test_theta_leibniz_series(a, b):
    assert theta(a * b) == theta(a) * b + a * theta(b)


@given(mirror_like())
def test_reversion_round_trip(q):
    zq = reversion(q)
    assert substitute(q, zq).truncate(10) == S.monomial("q", 1, 10)


@given(series())
def test_recomputation_is_bit_identical(a):
    assert repr((a * a).theta()) == repr((a * a).theta())
