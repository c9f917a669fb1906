"""Model data of the real quintic: Yukawa coupling, Picard-Fuchs operator,
Frobenius periods, the inhomogeneous solution tau, the mirror map and the
holomorphic-limit series of the ring generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exact_series import PuiseuxLogSeries, SeriesError, reversion
from .field import DISC, FieldElement, inv_disc, z_elem


@dataclass(frozen=True)
class ModelConstants:
    chi: int = -200
    c2_dot_h: int = 50
    n_branes: int = 1
    discriminant_root: Fraction = Fraction(1, DISC)
    tau_prefactor: Fraction = Fraction(60)
    inhomogeneity: Fraction = Fraction(60, 2**4)


CONSTANTS = ModelConstants()


def yukawa() -> FieldElement:
    """``C_zzz = 5 / ((1 - 5^5 z) z^3)``."""
    return FieldElement(5) * inv_disc() / z_elem() ** 3


def yukawa_x() -> FieldElement:
    """``x = z^3 C_zzz = 5 / (1 - 5^5 z)``."""
    return FieldElement(5) * inv_disc()


def theta_log_x() -> FieldElement:
    """``theta(z^3 C) / (z^3 C) = 5^5 z / (1 - 5^5 z)``."""
    return FieldElement(DISC) * z_elem() * inv_disc()


def theta_log_zc() -> FieldElement:
    """``theta(z C) / (z C)``."""
    return theta_log_x() - 2


def theta_log_c() -> FieldElement:
    """``theta(C) / C``."""
    return theta_log_x() - 3


def h_func() -> FieldElement:
    """``h(z) = (1 - 3 * 5^4 z) / (1 - 5^5 z)``."""
    return FieldElement.from_z_poly([1, -3 * 625], den_power=1)


def s_func() -> FieldElement:
    """``s(z) = 12/25 - h/5 + (3/25) theta(z^3C)/(z^3C)``."""
    return Fraction(12, 25) - h_func() * Fraction(1, 5) + theta_log_x() * Fraction(3, 25)


@dataclass(frozen=True)
class PicardFuchsOperator:
    """``sum_p H_p(z) theta^p`` with integer polynomial ``H_p`` (low degree first)."""

    coeffs: tuple

    def H(self, p: int) -> tuple:
        return self.coeffs[p]

    def H_field(self, p: int) -> FieldElement:
        return FieldElement.from_z_poly(list(self.coeffs[p]))

    def apply(self, f: PuiseuxLogSeries) -> PuiseuxLogSeries:
        out = None
        cur = f
        for p, poly in enumerate(self.coeffs):
            hp = PuiseuxLogSeries.from_terms(f.var, dict(enumerate(poly)), cur.order + 1)
            term = hp * cur
            out = term if out is None else out + term
            cur = cur.theta()
        return out


def build_pf_operator() -> PicardFuchsOperator:
    """``theta^4 - 5 z (5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4)``."""
    # (5t+1)(5t+2)(5t+3)(5t+4) expanded in t, low degree first
    poly = [1]
    for j in (1, 2, 3, 4):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += j * c
            nxt[i + 1] += 5 * c
        poly = nxt
    coeffs = []
    for p in range(5):
        h = [0, -5 * poly[p]]
        if p == 4:
            h[0] = 1
        coeffs.append(tuple(h))
    return PicardFuchsOperator(tuple(coeffs))


# -- Frobenius periods ----------------------------------------------------


def _rho_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def _rho_inv_linear(c, d, n):
    """Taylor coefficients of ``1/(c + d rho)`` to ``rho^(n-1)``."""
    return [Fraction(1, 1) / c * (Fraction(-d, c)) ** k for k in range(n)]


def frobenius_coefficients(n_max: int, depth: int = 4):
    """Taylor data of ``(5 rho + 1)_{5n} / (rho + 1)_n^5`` around ``rho = 0``.

    Returns a list indexed by ``n`` of lists ``[c, c', c''/2, ...]`` (Taylor
    coefficients, not derivatives).
    """
    out = []
    cur = [Fraction(1)] + [Fraction(0)] * (depth - 1)
    out.append(cur)
    for n in range(1, n_max):
        for j in range(5 * n - 4, 5 * n + 1):
            cur = _rho_mul(cur, [Fraction(j), Fraction(5)] + [Fraction(0)] * (depth - 2), depth)
        inv = _rho_inv_linear(n, 1, depth)
        for _ in range(5):
            cur = _rho_mul(cur, inv, depth)
        out.append(cur)
    return out


def compute_omegas(order: int):
    """``omega_0..omega_3`` as log-graded series known below ``z^order``."""
    data = frobenius_coefficients(order)
    omegas = []
    for i in range(4):
        comps = []
        for k in range(i + 1):  # log power k comes with d^(i-k)/drho^(i-k)
            j = i - k
            fact = 1
            for m in range(2, j + 1):
                fact *= m
            comps.append(
                {n: comb(i, j) * fact * data[n][j] for n in range(order)}
            )
        omegas.append(
            sum(
                (PuiseuxLogSeries.from_terms("z", c, order, log=k) for k, c in enumerate(comps)),
                PuiseuxLogSeries.zero("z", order),
            )
        )
    return omegas


def pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


def compute_tau(order) -> PuiseuxLogSeries:
    """``tau(z) = sum (7/2)_{5n} / ((3/2)_n)^5 z^(n+1/2)``, known below ``order``."""
    order = Fraction(order)
    terms = {}
    n = 0
    while n + Fraction(1, 2) < order:
        terms[n + Fraction(1, 2)] = pochhammer(Fraction(7, 2), 5 * n) / pochhammer(Fraction(3, 2), n) ** 5
        n += 1
    return PuiseuxLogSeries.from_terms("z", terms, order)


@dataclass(frozen=True)
class PeriodSet:
    omega: tuple
    tau: PuiseuxLogSeries
    big_t: PuiseuxLogSeries  # 60 tau
    mirror_t: PuiseuxLogSeries  # omega_1 / omega_0, log grade 1
    q_of_z: PuiseuxLogSeries
    z_of_q: PuiseuxLogSeries
    order: int

    @property
    def omega0(self):
        return self.omega[0]

    def t_regular(self) -> PuiseuxLogSeries:
        """``t - log z``."""
        return self.mirror_t.log_component(0)


@lru_cache(maxsize=8)
def compute_periods(order: int = 16) -> PeriodSet:
    if order < 3:
        raise SeriesError("period computation needs order >= 3")
    omegas = compute_omegas(order)
    tau = compute_tau(order)
    big_t = tau.scale(CONSTANTS.tau_prefactor)
    t = omegas[1] / omegas[0]
    if t.log_component(1) != PuiseuxLogSeries.constant("z", 1, t.order):
        raise SeriesError("mirror map log coefficient is not 1")
    q = t.log_component(0).exp().shift(1)
    zq = reversion(q, "q")
    return PeriodSet(tuple(omegas), tau, big_t, t, q, zq, order)


@dataclass(frozen=True)
class GeneratorSeries:
    """Holomorphic limits of the I-basis generators as ``z``-series."""

    A1: PuiseuxLogSeries
    B1: PuiseuxLogSeries
    B2: PuiseuxLogSeries
    B3: PuiseuxLogSeries
    Q0: PuiseuxLogSeries
    Q1: PuiseuxLogSeries
    Q2: PuiseuxLogSeries
    Q3: PuiseuxLogSeries
    R1: PuiseuxLogSeries
    R2: PuiseuxLogSeries
    extra: dict = field(default_factory=dict, compare=False)

    NAMES = ("A1", "B1", "B2", "B3", "Q0", "Q1", "Q2", "Q3", "R1", "R2")

    def as_list(self):
        return [getattr(self, n) for n in self.NAMES]

    @property
    def order(self):
        return min(s.order for s in self.as_list())


def compute_generator_series(periods: PeriodSet, order=None) -> GeneratorSeries:
    """Holomorphic-limit series of the I-generators.

    ``G -> dt/dz`` and ``exp(-K) -> omega_0``; anything built from the
    conjugate disk function (``R_1`` and ``R_2``) vanishes in the limit.
    """
    order = periods.order if order is None else order
    if order > periods.order:
        raise SeriesError(f"periods known below z^{periods.order}, asked for {order}")
    w0 = periods.omega0.truncate(order)
    theta_t = periods.mirror_t.theta()
    if not theta_t.is_log_free():
        raise SeriesError("theta t should be log free")
    theta_t = theta_t.truncate(order)
    A1 = theta_t.theta() / theta_t - 1
    B = []
    cur = w0
    for _ in range(3):
        cur = cur.theta()
        B.append(cur / w0)
    Q = []
    cur = periods.big_t.truncate(order)
    for _ in range(4):
        Q.append(cur.shift(Fraction(1, 2)).truncate(order))
        cur = cur.theta()
    zero = PuiseuxLogSeries.zero("z", order)
    return GeneratorSeries(A1, B[0], B[1], B[2], Q[0], Q[1], Q[2], Q[3], zero, zero)
