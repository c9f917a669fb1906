from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import ring_elements

from real_quintic import geometry as geo
from real_quintic.field import FieldElement, inv_disc, sqrt_z, z_elem
from real_quintic.ring import (
    I_NAMES,
    J_NAMES,
    ChecksumError,
    RingElement,
    RingError,
    WeightError,
    change_basis,
    cov_derive,
    evaluate,
    gens,
    parse,
    partial_derive,
    propagators_and_terminators,
    serialize,
    theta_derive,
)

I = gens("I")
J = gens("J")
z = z_elem()
C = geo.yukawa()


# -- field elements -----------------------------------------------------------------


def test_field_arithmetic_closes():
    a = 1 + sqrt_z() * 3
    b = F(1, 2) - sqrt_z()
    assert a * b == F(1, 2) - 3 * z + sqrt_z() * F(1, 2)
    d = z**2 * (1 - 3125 * z) ** 3 * F(4, 9)
    assert (a / d) * d == a
    assert inv_disc(2) * (1 - 3125 * z) ** 2 == 1


def test_field_division_restricted_to_known_poles():
    from real_quintic.field import FieldError

    with pytest.raises(FieldError):
        (1 + sqrt_z()) / (F(1, 2) - sqrt_z())
    with pytest.raises(ZeroDivisionError):
        FieldElement(0).inverse()


def test_field_text_round_trip():
    e = (F(3, 7) * z**2 - 5) * inv_disc(3) + sqrt_z() * z**-2 * F(2, 9)
    assert FieldElement.from_str(e.to_str()) == e
    assert e.to_str() == FieldElement.from_str(e.to_str()).to_str()


def test_field_theta():
    assert (z**3).theta() == 3 * z**3
    assert sqrt_z().theta() == sqrt_z() * F(1, 2)
    assert inv_disc().theta() == 3125 * z * inv_disc(2)


# -- theta ------------------------------------------------------------------------------


def test_theta_examples():
    assert theta_derive(I["Q0"]) == I["Q0"] * F(1, 2) + I["Q1"]
    c = RingElement.from_field("I", inv_disc() * z)
    assert theta_derive(c) == RingElement.from_field("I", (inv_disc() * z).theta())
    assert theta_derive(I["B1"]) == I["B2"] - I["B1"] ** 2


def test_theta_closure_in_both_bases():
    for basis, names in (("I", I_NAMES), ("J", J_NAMES)):
        for name in names:
            out = theta_derive(RingElement.gen(basis, name))
            assert out.basis == basis
            assert all(len(k) == len(names) for k in out.monomials())


# -- covariant derivative --------------------------------------------------------------


def test_cov_derive_examples():
    one = RingElement.one("I", weights=(0, 1))
    assert cov_derive(one) == I["B1"].scale(z**-1)
    e = I["Q2"] * I["B1"] + 7
    assert cov_derive(e, 0, 0) == theta_derive(e).scale(z**-1)
    assert cov_derive(e.with_weights((0, 0))).weights == (1, 0)


def test_cov_derive_weight_mismatch():
    with pytest.raises(WeightError):
        cov_derive(I["B1"].with_weights((1, 2)), 0, 1)
    with pytest.raises(WeightError):
        cov_derive(I["B1"])


def test_disk_second_derivative():
    from real_quintic.solver import base_amplitudes

    st_ = base_amplitudes()
    V1 = I["A1"] + 2 * I["B1"] + 1
    V2 = I["B2"] - I["B1"] * V1
    want = (I["Q2"] - V1 * I["Q1"] - V2 * I["Q0"] - I["R1"]).scale(FieldElement.z_power(F(-5, 2)))
    got = change_basis(st_.amplitude(0, 1, 2), "I")
    assert got == want


# -- change of generators ----------------------------------------------------------------


def test_change_basis_examples():
    assert change_basis(I["A1"], "J") == J["v1"] - 2 * J["u"] - F(8, 5)
    assert change_basis(J["u"], "I") == I["B1"]
    assert change_basis(change_basis(I["R2"], "J"), "I") == I["R2"]


def test_partial_examples(solver):
    u, v1, m1, m2 = J["u"], J["v1"], J["m1"], J["m2"]
    assert partial_derive(u * u * v1, "u") == 2 * u * v1
    assert partial_derive(m1**3 * m2 * F(1, 6), "m2") == m1**3 * F(1, 6)
    assert partial_derive(solver.store.P(0, 4, 0), "u").is_zero()
    with pytest.raises(RingError):
        partial_derive(I["A1"], "u")
    with pytest.raises(RingError):
        partial_derive(u, "w")


# -- propagators and terminators -------------------------------------------------------------


def test_propagators_in_I():
    pt = propagators_and_terminators("I")
    zC = (z * C).inverse()
    assert pt["Szz"] == (-I["A1"] - 2 * I["B1"] - F(8, 5)).scale(zC)
    # the J form (u v1 + v2)/(z^2 C) fixes the B1 coefficient to 3/5
    assert pt["Sz"] == (I["B2"] + F(3, 5) * I["B1"] + F(2, 25)).scale((z**2 * C).inverse())


def test_terminator_is_derivative():
    pt = propagators_and_terminators("J")
    assert cov_derive(pt["Dz"]) == pt["D"]
    assert pt["D"].weights == (0, 1)


def test_propagator_derivatives_close():
    """``D S^zz`` and ``D S^z`` stay in the ring with the expected weights."""
    pt = propagators_and_terminators("J")
    for k in ("Szz", "Sz", "S"):
        d = cov_derive(pt[k])
        assert d.weights == (pt[k].weights[0] + 1, 2)


# -- evaluation ----------------------------------------------------------------------------


def test_evaluate_examples(generator_series):
    b1 = evaluate(I["B1"], generator_series, 4)
    assert [b1.coeff(k) for k in range(3)] == [0, 120, 212400]
    assert evaluate(I["R1"], generator_series, 4).is_zero()
    one = evaluate(RingElement.one("J"), generator_series, 4)
    assert [one.coeff(k) for k in range(4)] == [1, 0, 0, 0]


def test_evaluate_J_matches_I(generator_series):
    e = J["v2"] * J["m1"] + J["u"] ** 2 * J["Q3"]
    a = evaluate(e, generator_series, 5)
    b = evaluate(change_basis(e, "I"), generator_series, 5)
    assert a == b


# -- serialization -------------------------------------------------------------------------


def test_serialization_detects_tampering():
    text = serialize((J["u"] * J["m2"] + F(1, 3)).with_weights((0, 2)))
    bad = text.replace("1/3", "2/3")
    with pytest.raises(ChecksumError):
        parse(bad)
    with pytest.raises(ChecksumError):
        parse("basis J\n")


# -- randomized properties -------------------------------------------------------------------

@given(ring_elements("I"), ring_elements("I"))
def test_theta_leibniz_I(a, b):
    assert theta_derive(a * b) == theta_derive(a) * b + a * theta_derive(b)


@given(ring_elements("J"), ring_elements("J"))
def test_theta_leibniz_J(a, b):
    assert theta_derive(a * b) == theta_derive(a) * b + a * theta_derive(b)


@given(ring_elements("I", max_terms=3))
def test_evaluate_commutes_with_theta(generator_series, e):
    order = 6
    lhs = evaluate(theta_derive(e), generator_series, order)
    rhs = evaluate(e, generator_series, order).theta()
    top = min(lhs.order, rhs.order)
    assert lhs.truncate(top) == rhs.truncate(top)


@given(ring_elements("J", max_terms=3))
def test_evaluate_commutes_with_theta_J(generator_series, e):
    order = 6
    lhs = evaluate(theta_derive(e), generator_series, order)
    rhs = evaluate(e, generator_series, order).theta()
    top = min(lhs.order, rhs.order)
    assert lhs.truncate(top) == rhs.truncate(top)


@given(ring_elements("I"))
def test_I_J_round_trip(e):
    there = change_basis(e, "J")
    back = change_basis(there, "I")
    assert there.basis == "J" and back.basis == "I"
    assert back.monomials() == e.monomials()


@given(ring_elements("J"))
def test_J_I_round_trip(e):
    back = change_basis(change_basis(e, "I"), "J")
    assert back.monomials() == e.monomials()


@given(
    ring_elements("J"),
    st.sampled_from(["u", "v1", "v2", "v3"]),
    st.sampled_from(["m1", "m2", "Q0", "Q3", "v1"]),
)
def test_mixed_partials_commute(e, a, b):
    assert partial_derive(partial_derive(e, a), b) == partial_derive(partial_derive(e, b), a)


@given(ring_elements("J"), st.one_of(st.none(), st.tuples(st.integers(-3, 3), st.integers(-3, 6))))
def test_serialization_round_trip(e, weights):
    e = e.with_weights(weights)
    text = serialize(e)
    back = parse(text)
    assert back == e and back.weights == e.weights
    assert serialize(back) == text


@given(ring_elements("I", max_terms=3))
def test_serialization_round_trip_I(e):
    assert parse(serialize(e)) == e
