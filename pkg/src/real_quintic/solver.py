"""Recursive solution of the extended anomaly equation.

Amplitudes ``F^{(g,h)}_n`` are kept as ring elements in the J generators.
Each ``F^{(g,h)}`` is assembled as the diagram sum plus a holomorphic
ambiguity with unknown coefficients; the unknowns are fixed by exact linear
algebra from the boundary conditions on the A-model expansion, and open BPS
numbers are extracted by inverting the multiple-cover formula.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb

import flint

from . import geometry as geo
from .exact_series import PuiseuxLogSeries, substitute
from .feynman import BASE_SET, enumerate_graphs, sum_feynman
from .field import FieldElement, inv_disc, z_elem
from .ring import RingElement, change_basis, cov_derive, evaluate, gens, ring_sum

log = logging.getLogger(__name__)

BASIS = "J"
#: the open amplitudes with published BPS tables, in dependency order
IN_SCOPE = ((0, 3), (1, 1), (0, 4), (1, 2), (0, 5), (1, 3), (0, 6), (1, 4))
#: computable only on request; the boundary conditions are known not to give integers
FLAGGED = ((2, 1),)
#: derivative order at which each base family is given in closed form
BASE_ORDER = {(0, 0): 3, (1, 0): 1, (0, 1): 2, (0, 2): 1}


class SolverError(RuntimeError):
    pass


class DependencyError(SolverError):
    pass


class LinearSystemError(SolverError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    """``order``: A-model series are kept below ``q**order``."""

    order: Fraction = Fraction(21, 2)
    d_max: int = 20
    allow_flagged: bool = False

    def __post_init__(self):
        object.__setattr__(self, "order", Fraction(self.order))
        if self.order <= Fraction(self.d_max, 2):
            raise SolverError(f"order {self.order} too small for d_max={self.d_max} (need > d_max/2)")


def chi_of(g, h):
    return 2 * g - 2 + h


def dependency_order_key(gh):
    g, h = gh
    return (chi_of(g, h), h, g)


# -- the amplitude store ---------------------------------------------------


@dataclass
class AmplitudeStore:
    """``F^{(g,h)}_n`` with section weights ``(n, 2g-2+h)`` in the J generators."""

    basis: str = BASIS
    amplitudes: dict = field(default_factory=dict)
    ambiguity: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    a_model: dict = field(default_factory=dict)
    bps: dict = field(default_factory=dict)

    def resolved(self, g, h) -> bool:
        return (g, h, 0) in self.amplitudes or (g, h) in BASE_ORDER and (g, h, BASE_ORDER[(g, h)]) in self.amplitudes

    def put(self, g, h, n, value: RingElement):
        if value.weights is None:
            value = value.with_weights((n, chi_of(g, h)))
        elif value.weights != (n, chi_of(g, h)):
            raise SolverError(f"F^({g},{h})_{n} carries weights {value.weights}")
        self.amplitudes[(g, h, n)] = value

    def amplitude(self, g, h, n) -> RingElement:
        key = (g, h, n)
        if key in self.amplitudes:
            return self.amplitudes[key]
        start = BASE_ORDER.get((g, h), 0)
        if n < start:
            raise DependencyError(f"F^({g},{h})_{n} is not defined")
        if n == start:
            raise DependencyError(f"F^({g},{h}) has not been computed")
        val = cov_derive(self.amplitude(g, h, n - 1))
        self.amplitudes[key] = val
        return val

    def P(self, g, h, n) -> RingElement:
        """``P^{(g,h)}_n = (z^3 C)^(g+h-1) z^(h/2) z^n F^{(g,h)}_n`` (zero when undefined).

        The ``z^n`` turns the n-fold covariant derivative into its
        theta-normalized form; without it the J-form anomaly equations fail.
        """
        if g < 0 or h < 0 or chi_of(g, h) + n <= 0:
            return RingElement.zero(self.basis)
        F = self.amplitude(g, h, n).with_weights(None)
        return F.scale(geo.yukawa_x() ** (g + h - 1) * FieldElement.z_power(Fraction(h, 2) + n))


def base_amplitudes(store: AmplitudeStore = None) -> AmplitudeStore:
    """Seed the closed-form families ``(0,0), (1,0), (0,1), (0,2)``."""
    store = store or AmplitudeStore()
    I = gens("I")
    A1, B1, Q0, Q1, Q2, R1 = (I[k] for k in ("A1", "B1", "Q0", "Q1", "Q2", "R1"))
    C = geo.yukawa()
    z = z_elem()
    thx = geo.theta_log_x()
    F00 = RingElement.from_field("I", C)
    F10 = (-A1 - B1 * Fraction(62, 3) + Fraction(-31, 6) + RingElement.from_field("I", thx * Fraction(1, 6))).scale(
        z.inverse() * Fraction(1, 2)
    )
    V1 = A1 + 2 * B1 + 1
    V2 = I["B2"] - B1 * V1
    dzz = (Q2 - V1 * Q1 - V2 * Q0 - R1).scale(FieldElement.z_power(Fraction(-5, 2)))
    F02 = (
        (dzz * dzz).scale(C.inverse() * Fraction(1, 2))
        - B1.scale(z.inverse() * Fraction(1, 2))
        + RingElement.from_field("I", f02())
    )
    for (g, h), val in (((0, 0), F00), ((1, 0), F10), ((0, 1), dzz), ((0, 2), F02)):
        n = BASE_ORDER[(g, h)]
        store.put(g, h, n, change_basis(val, store.basis).with_weights((n, chi_of(g, h))))
        store.provenance[(g, h)] = {"source": "closed form"}
    return store


def f02() -> FieldElement:
    """``75 / (2 (1 - 3125 z))``."""
    return inv_disc() * Fraction(75, 2)


# -- holomorphic ambiguity ------------------------------------------------------


def ambiguity_degree(g, h) -> int:
    """Top power of ``z`` in the ambiguity numerator."""
    if h == 0:
        return 2 * g - 1
    if h % 2 == 0:
        return 3 * g - 3 + 3 * h // 2
    return 3 * g - 3 + (3 * h - 1) // 2


def ambiguity_basis(g, h) -> list:
    """Field elements ``f_i`` with ``f = sum a_i f_i``."""
    den = inv_disc(chi_of(g, h))
    pref = FieldElement.z_power(Fraction(h % 2, 2)) if h else FieldElement(1)
    # for h = 0 the extra polynomial part z^j, j <= (2g-2)/5, already lies in this span
    return [pref * FieldElement.z_power(i) * den for i in range(ambiguity_degree(g, h) + 1)]


@dataclass
class AmbiguityAnsatz:
    """``F = F_FD + sum a_i f_i``; ``series[0]`` is the A-model expansion of
    ``F_FD`` and ``series[i+1]`` that of ``f_i``."""

    g: int
    h: int
    fd: RingElement
    basis: list
    series: list

    @property
    def unknown_count(self) -> int:
        return len(self.basis)

    def resolve(self, coeffs) -> RingElement:
        f = FieldElement()
        for a, fi in zip(coeffs, self.basis):
            f = f + fi * a
        return self.fd + RingElement.from_field(self.fd.basis, f, self.fd.weights)

    def ambiguity(self, coeffs) -> FieldElement:
        f = FieldElement()
        for a, fi in zip(coeffs, self.basis):
            f = f + fi * a
        return f


# -- A-model expansion ------------------------------------------------------------


@lru_cache(maxsize=8)
def _generators(order: int):
    periods = geo.compute_periods(order)
    return periods, geo.compute_generator_series(periods)


class AModel:
    """Holomorphic limit, normalization by ``omega_0`` and the mirror map."""

    def __init__(self, order):
        self.order = Fraction(order)
        self._gs = {}

    def generators(self, need_w: int):
        """Generator series good to ``w**need_w``."""
        n = max(ceil(Fraction(need_w, 2)) + 1, ceil(self.order) + 2)
        return _generators(n)

    def z_series(self, e: RingElement) -> PuiseuxLogSeries:
        need = int(2 * self.order) + max(e.a, 0) + 2
        periods, gs = self.generators(need)
        return evaluate(e, gs, self.order + 1)

    def to_q(self, zs: PuiseuxLogSeries, g, h, n=0) -> PuiseuxLogSeries:
        """``(dz/dt)^n * omega_0^(2g+h-2) * zs`` with ``z = z(q)``."""
        need = int(2 * self.order) + 8
        periods, gs = self.generators(need)
        order = min(zs.order, periods.order)
        w0 = periods.omega0.truncate(order)
        k = 2 * g + h - 2
        if k > 0:
            zs = zs * w0**k
        elif k < 0:
            zs = zs * w0.inverse() ** (-k)
        if n:
            theta_t = periods.mirror_t.theta().truncate(order)
            dzdt = PuiseuxLogSeries.monomial("z", 1, order) / theta_t
            zs = zs * dzdt**n
        out = substitute(zs, periods.z_of_q)
        return out.truncate(self.order) if out.order > self.order else out

    def field_to_q(self, fe: FieldElement, g, h) -> PuiseuxLogSeries:
        return self.to_q(fe.to_series(self.order + 1), g, h)


def integrate_positive(series: PuiseuxLogSeries, times: int) -> PuiseuxLogSeries:
    """Undo ``(q d/dq)**times`` on the positive powers of ``q``."""
    terms = {e: c / e**times for e, c in series.terms().items() if e > 0}
    return PuiseuxLogSeries.from_terms(series.var, terms, series.order) if terms else PuiseuxLogSeries.zero(
        series.var, series.order
    )


def a_model_expand(g, h, store: AmplitudeStore, model: AModel) -> PuiseuxLogSeries:
    """``F_A^{(g,h)}`` for a resolved amplitude (positive powers only for the base families)."""
    key = (g, h, model.order)
    if key in store.a_model:
        return store.a_model[key]
    n = BASE_ORDER.get((g, h), 0)
    F = store.amplitude(g, h, n)
    qs = model.to_q(model.z_series(F), g, h, n)
    if n:
        qs = integrate_positive(qs, n)
    store.a_model[key] = qs
    return qs


# -- BPS extraction ---------------------------------------------------------------


@lru_cache(maxsize=None)
def sine_coefficients(m: int, jmax: int) -> tuple:
    """Coefficients ``c_j`` of ``x^(2j)`` in ``(sin(x/2) / (x/2))**m`` (any integer ``m``)."""
    # s = 1 + eps(y) with y = x^2
    eps = [Fraction(0)] + [Fraction((-1) ** j, 4**j * _fact(2 * j + 1)) for j in range(1, jmax + 1)]
    out = [Fraction(0)] * (jmax + 1)
    power = [Fraction(1)] + [Fraction(0)] * jmax
    for i in range(jmax + 1):
        binom = Fraction(1)
        for r in range(i):
            binom = binom * (m - r) / (r + 1)
        for j in range(jmax + 1):
            out[j] += binom * power[j]
        nxt = [Fraction(0)] * (jmax + 1)
        for a, x in enumerate(power):
            if x:
                for b in range(1, jmax + 1 - a):
                    nxt[a + b] += x * eps[b]
        power = nxt
    return tuple(out)


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _vec(x, size):
    if isinstance(x, (list, tuple)):
        return list(x) + [Fraction(0)] * (size - len(x))
    return [Fraction(x)] + [Fraction(0)] * (size - 1)


def multicover_terms(h, d):
    """``(k, d')`` with ``k d' = d`` (open: ``k`` odd, ``d'`` of the parity of ``h``; closed: all ``k``)."""
    out = []
    for k in range(1, d + 1):
        if d % k:
            continue
        if h > 0 and k % 2 == 0:
            continue
        out.append((k, d // k))
    return out


def bps_degrees(h, d_max):
    if h == 0:
        return list(range(1, d_max + 1))
    return [d for d in range(1, d_max + 1) if d % 2 == h % 2]


def q_exponent(h, d):
    return Fraction(d, 2) if h > 0 else Fraction(d)


def extract_bps_vectors(h, g, coeff_of, lower: dict, d_max: int, size: int) -> dict:
    """Invert the multiple-cover formula at genus ``g``.

    ``coeff_of(e)`` gives the (affine) ``q**e`` coefficient of ``F_A^{(g,h)}``
    as a vector of length ``size``; ``lower[g'][d]`` are known BPS numbers.
    """
    out = {}
    for d in bps_degrees(h, d_max):
        acc = _vec(coeff_of(q_exponent(h, d)), size)
        for k, dd in multicover_terms(h, d):
            for gp in range(0, g + 1):
                if (gp, k) == (g, 1):
                    continue
                m = 2 * gp + h - 2
                c = sine_coefficients(m, g - gp)[g - gp] * Fraction(k) ** (2 * g + h - 3)
                if c == 0:
                    continue
                if gp == g:
                    n = out[dd]
                else:
                    n = _vec(lower.get(gp, {}).get(dd, 0), size)
                acc = [a - c * b for a, b in zip(acc, n)]
        out[d] = acc
    return out


def multicover_resum(h, tables: dict, g, d_max) -> dict:
    """``q**(d/2)`` coefficients of ``F_A^{(g,h)}`` predicted by BPS numbers (round-trip check)."""
    out = {}
    for d in bps_degrees(h, d_max):
        acc = Fraction(0)
        for k, dd in multicover_terms(h, d):
            for gp in range(0, g + 1):
                m = 2 * gp + h - 2
                c = sine_coefficients(m, g - gp)[g - gp] * Fraction(k) ** (2 * g + h - 3)
                acc += c * Fraction(tables.get(gp, {}).get(dd, 0))
        out[q_exponent(h, d)] = acc
    return out


# -- the solver -------------------------------------------------------------------------


class Solver:
    def __init__(self, config: SolverConfig = None, store: AmplitudeStore = None):
        self.config = config or SolverConfig()
        self.store = store or base_amplitudes()
        self.model = AModel(self.config.order)
        self.timings = {}

    # dependency handling
    def dependencies(self, g, h) -> set:
        if (g, h) in BASE_SET:
            return set()
        deps = {G_label for G in enumerate_graphs(g, h) for G_label in G.vertices}
        deps.discard((g, h))
        deps.update((gp, h) for gp in range(g))
        if h == 0:
            deps.update({(0, 0), (1, 0)})
        return deps

    def closure(self, g, h) -> list:
        seen = set()

        def visit(gh):
            for d in self.dependencies(*gh):
                if d not in seen:
                    seen.add(d)
                    visit(d)

        visit((g, h))
        return sorted(seen, key=dependency_order_key)

    def check_allowed(self, g, h):
        if (g, h) in BASE_SET:
            return
        if (g, h) in FLAGGED or (h == 0 and g >= 2):
            if not self.config.allow_flagged:
                raise SolverError(f"(g,h)=({g},{h}) is outside the verified scope; enable the flagged mode")
            return
        if (g, h) not in IN_SCOPE:
            raise SolverError(f"(g,h)=({g},{h}) is outside the supported scope {IN_SCOPE + FLAGGED}")

    def solve(self, g, h) -> RingElement:
        self.check_allowed(g, h)
        for dep in self.closure(g, h):
            if not self.store.resolved(*dep):
                self._solve_one(*dep)
        if not self.store.resolved(g, h):
            self._solve_one(g, h)
        n = BASE_ORDER.get((g, h), 0)
        return self.store.amplitude(g, h, n)

    def _solve_one(self, g, h):
        if (g, h) in BASE_SET:
            return
        t0 = time.perf_counter()
        ansatz = self.assemble(g, h)
        coeffs, info = self.fix_ambiguity(ansatz)
        F = ansatz.resolve(coeffs)
        self.store.put(g, h, 0, F)
        self.store.ambiguity[(g, h)] = coeffs
        self.store.provenance[(g, h)] = info
        self.timings[(g, h)] = time.perf_counter() - t0
        log.info("solved (%d,%d) in %.1fs", g, h, self.timings[(g, h)])

    def assemble(self, g, h) -> AmbiguityAnsatz:
        for dep in self.dependencies(g, h):
            if not self.store.resolved(*dep):
                raise DependencyError(f"({g},{h}) needs ({dep[0]},{dep[1]}) first")
        fd = sum_feynman(g, h, self.store)
        basis = ambiguity_basis(g, h)
        series = [self.model.to_q(self.model.z_series(fd), g, h)]
        series += [self.model.field_to_q(fi, g, h) for fi in basis]
        return AmbiguityAnsatz(g, h, fd, basis, series)

    def lower_bps(self, g, h) -> dict:
        """Resolved BPS tables for genera below ``g`` with the same ``h``."""
        out = {}
        for gp in range(g):
            out[gp] = self.bps_table(gp, h)
        return out

    def bps_table(self, g, h) -> dict:
        """``{d: n_d^{(g,h)}}`` for ``d <= d_max`` of a resolved amplitude."""
        key = (g, h, self.config.d_max)
        if key in self.store.bps:
            return self.store.bps[key]
        self.solve(g, h)
        fa = a_model_expand(g, h, self.store, self.model)
        d_max = self.config.d_max
        while q_exponent(h, d_max) >= self.model.order:
            d_max -= 1
        vecs = extract_bps_vectors(h, g, lambda e: fa.coeff(e), self.lower_bps(g, h), d_max, 1)
        table = {d: v[0] for d, v in vecs.items()}
        self.store.bps[key] = table
        return table

    def conditions(self, ansatz: AmbiguityAnsatz):
        """Rows ``(label, vector)``: each vector ``v`` means ``v[0] + sum v[i+1] a_i = 0``."""
        g, h = ansatz.g, ansatz.h
        size = 1 + ansatz.unknown_count
        lower = self.lower_bps(g, h)

        def coeff_of(e):
            return [s.coeff(e) for s in ansatz.series]

        rows = []
        if h == 0:
            rows.append(("constant term", _genus_constant(g, ansatz)))
            need = size - 1 - len(rows)
            vecs = extract_bps_vectors(0, g, coeff_of, lower, need + 1, size)
            for d in range(1, need + 1):
                rows.append((f"n_{d}=0", vecs[d]))
            return rows
        if h % 2 == 0 and (g, h) != (0, 2):
            rows.append(("q^0 term", coeff_of(Fraction(0))))
        need = size - 1 - len(rows)
        degrees = bps_degrees(h, 2 * need + 2)[:need]
        vecs = extract_bps_vectors(h, g, coeff_of, lower, degrees[-1], size)
        for d in degrees:
            rows.append((f"n_{d}=0", vecs[d]))
        return rows

    def fix_ambiguity(self, ansatz: AmbiguityAnsatz):
        rows = self.conditions(ansatz)
        n = ansatz.unknown_count
        if len(rows) != n:
            raise LinearSystemError(f"{len(rows)} conditions for {n} unknowns")
        A = flint.fmpq_mat(n, n, [flint.fmpq(c.numerator, c.denominator) for _, v in rows for c in v[1:]])
        b = flint.fmpq_mat(n, 1, [flint.fmpq(-v[0].numerator, v[0].denominator) for _, v in rows])
        if A.det() == 0:
            raise LinearSystemError(f"singular ambiguity system for ({ansatz.g},{ansatz.h})")
        x = A.solve(b)
        coeffs = [Fraction(int(x[i, 0].p), int(x[i, 0].q)) for i in range(n)]
        info = {
            "conditions": [label for label, _ in rows],
            "d0": max([int(lbl[2:].split("=")[0]) for lbl, _ in rows if lbl.startswith("n_")] or [0]),
            "unknowns": n,
        }
        return coeffs, info

    # -- checks --------------------------------------------------------------

    def pde_residual(self, g, h) -> list:
        """The six residuals of the J-form of the anomaly equation (all zero when it holds)."""
        st = self.store
        P = st.P(g, h, 0)
        J = gens(st.basis)
        u = J["u"]
        Y = st.P(g, h - 1, 1)
        if Y.degree_in("u") > 1:
            raise SolverError("P_1 of degree > 1 in u")
        Y0, Y1 = Y.coefficient_in("u", 0), Y.coefficient_in("u", 1)
        conv = []
        for g1 in range(g + 1):
            for h1 in range(h + 1):
                g2, h2 = g - g1, h - h1
                if (g1, h1) in ((0, 0), (0, 1)) or (g2, h2) in ((0, 0), (0, 1)):
                    continue
                conv.append(st.P(g1, h1, 1) * st.P(g2, h2, 1))
        conv.append(st.P(g - 1, h, 2))
        W = ring_sum(conv, basis=st.basis) * Fraction(-1, 2) + (u * J["Q0"] - J["Q1"]) * Y
        if W.degree_in("u") > 2:
            raise SolverError("right-hand side of degree > 2 in u")
        W0, W1, W2 = (W.coefficient_in("u", k) for k in range(3))
        thx = RingElement.from_field(st.basis, geo.theta_log_x())
        return [
            P.partial("u"),
            P.partial("m1") - Y0,
            P.partial("m2") - Y1,
            P.partial("v1") - W0,
            P.partial("v2") + W1 - thx * W2,
            P.partial("v3") + W2,
        ]

    def fd_residual(self, g, h) -> list:
        """PDE residuals for the diagram sum alone (no ambiguity needed)."""
        return self.pde_residual(g, h)


def _genus_constant(g, ansatz):
    """Constant-map term of closed genus ``g`` (flagged closed sector only)."""
    from math import factorial

    def bern(n):
        # Bernoulli numbers via the standard recursion
        B = [Fraction(1)]
        for m in range(1, n + 1):
            B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
        return B[n]

    chi = geo.CONSTANTS.chi
    const = (
        Fraction((-1) ** (g - 1)) * chi * bern(2 * g) * bern(2 * g - 2)
        / (4 * g * (2 * g - 2) * factorial(2 * g - 2))
    )
    v = [s.coeff(Fraction(0)) for s in ansatz.series]
    v[0] -= const
    return v


def verify_appendix_b(store: AmplitudeStore) -> dict:
    """Compare ``P^{(0,4)}`` and ``f^{(0,4)}`` with the published polynomial."""
    from . import reference_data
    from .ring import parse

    ref = parse(reference_data.P04_J_TEXT)
    P = change_basis(store.P(0, 4, 0), "J")
    mine, theirs = P.monomials(), ref.monomials()
    mismatches = []
    for key in sorted(set(mine) | set(theirs)):
        a, b = mine.get(key), theirs.get(key)
        if a != b:
            mismatches.append((key, a, b))
    f = ambiguity_basis(0, 4)
    coeffs = store.ambiguity.get((0, 4))
    f_ok = None
    if coeffs is not None:
        val = FieldElement()
        for a, fi in zip(coeffs, f):
            val = val + fi * a
        f_ok = val == reference_data.f04()
    return {
        "monomials": len(theirs),
        "computed_monomials": len(mine),
        "mismatches": mismatches,
        "polynomial_ok": not mismatches,
        "ambiguity_ok": f_ok,
        "ok": not mismatches and bool(f_ok),
    }
