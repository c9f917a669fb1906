from fractions import Fraction as F

from real_quintic import geometry as geo
from real_quintic.exact_series import PuiseuxLogSeries as S


def test_constants():
    c = geo.CONSTANTS
    assert (c.chi, c.c2_dot_h, c.n_branes) == (-200, 50, 1)
    assert c.discriminant_root == F(1, 3125)
    assert c.tau_prefactor == 60 and c.inhomogeneity == F(60, 16)


def test_yukawa():
    x = geo.yukawa_x()
    assert x.to_series(3).coeff(0) == 5
    assert geo.yukawa() * geo.z_elem() ** 3 == x
    # z^3 C has its only pole at the discriminant root
    assert geo.yukawa_x().rational_parts()[0] == ([5], [1, -3125])
    disc = geo.yukawa().inverse() * geo.z_elem() ** -3
    assert disc.to_series(3).coeff(0) == F(1, 5) and disc.to_series(3).coeff(1) == -625
    assert (geo.yukawa_x().theta() / geo.yukawa_x()).to_series(3).coeff(0) == 0


def test_pf_operator_leading_coefficient():
    pf = geo.build_pf_operator()
    assert list(pf.H(4)) == [1, -3125]
    h4 = pf.H(4)
    assert sum(F(c) * F(1, 3125) ** k for k, c in enumerate(h4)) == 0


def test_pf_operator_on_heads():
    pf = geo.build_pf_operator()
    head = S.from_terms("z", {0: 1, 1: 120, 2: 113400}, 3)
    out = pf.apply(head)
    assert [out.coeff(k) for k in range(3)] == [0, 0, 0]
    one = pf.apply(S.constant("z", 1, 3))
    assert not one.is_zero()


def test_period_heads(periods):
    w0, w1 = periods.omega[0], periods.omega[1]
    assert [w0.coeff(k) for k in range(3)] == [1, 120, 113400]
    assert [w1.coeff(k) for k in (1, 2)] == [770, 810225]
    assert periods.mirror_t.coeff(3) == F(3225308000, 3)
    assert [periods.mirror_t.coeff(k) for k in (1, 2)] == [770, 717825]
    assert [periods.z_of_q.coeff(k) for k in (1, 2, 3)] == [1, -770, 171525]


def test_periods_solve_pf(periods):
    pf = geo.build_pf_operator()
    for i, w in enumerate(periods.omega):
        assert w.log_grade == i
        assert pf.apply(w).is_zero()


def test_tau_inhomogeneous_equation(periods):
    pf = geo.build_pf_operator()
    lhs = pf.apply(periods.big_t)
    rhs = S.monomial("z", F(1, 2), lhs.order, F(60, 16))
    assert lhs == rhs
    assert periods.tau.offset == F(1, 2) and periods.tau.is_log_free()


def test_generator_series_examples(generator_series):
    gs = generator_series
    assert gs.B1.coeff(0) == 0
    # B_1 = theta(omega_0) / omega_0 from the head 1 + 120 z + 113400 z^2
    assert [gs.B1.coeff(1), gs.B1.coeff(2)] == [120, 2 * 113400 - 120 * 120]
    assert gs.Q0.valuation() == 1 and gs.Q0.coeff(1) == 60
    assert gs.R1.is_zero()
    assert all(s.is_log_free() for s in gs.as_list())


def test_q_relation(generator_series):
    gs = generator_series
    Q = [gs.Q0, gs.Q1, gs.Q2, gs.Q3]
    for p in range(3):
        lhs = Q[p].theta()
        rhs = Q[p].scale(F(1, 2)) + Q[p + 1]
        top = min(lhs.order, rhs.order)
        assert lhs.truncate(top) == rhs.truncate(top)


def test_b_relation(generator_series, periods):
    """``B_p = theta^p(omega_0)/omega_0`` satisfies the Picard-Fuchs relation."""
    gs = generator_series
    pf = geo.build_pf_operator()
    B = [S.constant("z", 1, gs.order), gs.B1, gs.B2, gs.B3]
    B4 = gs.B3.theta() + gs.B3 * gs.B1
    total = None
    for p, b in enumerate(B + [B4]):
        hp = S.from_terms("z", dict(enumerate(pf.H(p))), gs.order)
        term = hp * b
        total = term if total is None else total + term
    top = min(total.order, gs.order - 1)
    assert total.truncate(top).is_zero()


def test_h_and_s_functions():
    assert geo.h_func() == (1 - 1875 * geo.z_elem()) / (1 - 3125 * geo.z_elem())
    assert geo.s_func() == F(12, 25) - geo.h_func() / 5 + (geo.yukawa_x().theta() / geo.yukawa_x()) * F(3, 25)
