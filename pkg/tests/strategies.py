"""Shared hypothesis strategies for series and ring elements."""

from fractions import Fraction as F

from hypothesis import strategies as st

from real_quintic.exact_series import PuiseuxLogSeries as S
from real_quintic.field import FieldElement, inv_disc, sqrt_z, z_elem
from real_quintic.ring import I_NAMES, J_NAMES, RingElement, gens

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=7)

_z = z_elem()
FIELD_POOL = [
    FieldElement(1),
    _z,
    sqrt_z(),
    inv_disc(),
    _z**-1,
    sqrt_z() * inv_disc(2),
    (1 - 625 * _z) * F(3, 7),
]


@st.composite
def series(draw, unit=False):
    """Log-free z-series on the half-integer grid with 12 tracked slots."""
    offset = F(draw(st.integers(min_value=-2, max_value=4)), 2)
    n = draw(st.integers(min_value=1, max_value=10))
    cs = draw(st.lists(coeffs, min_size=n, max_size=n))
    if unit and cs[0] == 0:
        cs[0] = F(1)
    terms = {offset + F(i, 2): c for i, c in enumerate(cs)}
    return S.from_terms("z", terms, offset + 6)


@st.composite
def mirror_like(draw):
    """``q(z) = z + a_2 z^2 + ...`` known below ``z^10``."""
    tail = draw(st.lists(coeffs, min_size=1, max_size=8))
    terms = {1: 1}
    terms.update({k + 2: c for k, c in enumerate(tail)})
    return S.from_terms("z", terms, 10)


@st.composite
def ring_elements(draw, basis="I", max_terms=4):
    names = I_NAMES if basis == "I" else J_NAMES
    gmap = gens(basis)
    n = draw(st.integers(min_value=1, max_value=max_terms))
    total = RingElement.zero(basis)
    for _ in range(n):
        coeff = draw(st.sampled_from(FIELD_POOL)) * draw(st.fractions(min_value=-9, max_value=9, max_denominator=5))
        mono = RingElement.from_field(basis, coeff)
        for name in draw(st.lists(st.sampled_from(names), max_size=3)):
            mono = mono * gmap[name]
        total = total + mono
    return total


@st.composite
def bps_instances(draw, d_max=12):
    """``(h, g, tables)`` with random integer BPS tables for genera ``0..g``."""
    from real_quintic.solver import bps_degrees

    h = draw(st.integers(0, 4))
    g = draw(st.integers(0, 2))
    degs = bps_degrees(h, d_max)
    tables = {
        gp: draw(st.dictionaries(st.sampled_from(degs), st.integers(-(10**12), 10**12), max_size=len(degs)))
        for gp in range(g + 1)
    }
    return h, g, tables
