"""The polynomial rings I and J over Q(z)[sqrt z].

A ring element is stored as a single polynomial ``N`` in ``w = sqrt(z)`` and
the ten generators, over a common denominator ``w**a (1 - 3125 w^2)**b``.
The polynomial arithmetic runs on FLINT multivariate polynomials; everything
model specific (the theta action, the change of generators, propagators and
terminators) is written out here.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import flint

from . import geometry as geo
from .exact_series import PuiseuxLogSeries, TruncationError
from .field import DISC, FieldElement

I_NAMES = ("A1", "B1", "B2", "B3", "Q0", "Q1", "Q2", "Q3", "R1", "R2")
J_NAMES = ("u", "v1", "v2", "v3", "Q0", "Q1", "Q2", "Q3", "m1", "m2")
NAMES = {"I": I_NAMES, "J": J_NAMES}
DEGREES = {
    "I": (1, 1, 2, 3, 0, 1, 2, 3, 2, 3),
    "J": (1, 1, 2, 3, 0, 1, 2, 3, 2, 3),
}
NGEN = 10

_CTX = {b: flint.fmpq_mpoly_ctx.get(("w",) + NAMES[b], "lex") for b in ("I", "J")}


class RingError(ValueError):
    pass


class WeightError(RingError):
    pass


def ctx(basis: str):
    return _CTX[basis]


def _dpoly(basis):
    w = _CTX[basis].gen(0)
    return 1 - DISC * w * w


def _combine_weights(wa, wb, how):
    if wa is None:
        return wb
    if wb is None:
        return wa
    if how == "add":
        if wa != wb:
            raise WeightError(f"adding sections of different weights {wa} and {wb}")
        return wa
    return (wa[0] + wb[0], wa[1] + wb[1])


class RingElement:
    """``N(w, gens) / (w**a (1 - 3125 z)**b)`` in basis ``I`` or ``J``.

    ``weights = (k, n)`` records a section of ``(T*)^k (x) L^n``; it is
    optional bookkeeping used by :meth:`cov_derive` and checked in sums.
    """

    __slots__ = ("basis", "num", "a", "b", "weights")

    def __init__(self, basis: str, num, a: int = 0, b: int = 0, weights=None, _check=True):
        if basis not in _CTX:
            raise RingError(f"unknown basis {basis!r}")
        if not isinstance(num, flint.fmpq_mpoly):
            num = _CTX[basis].constant(num)
        self.basis = basis
        self.weights = weights
        if _check:
            num, a, b = _canonical(basis, num, a, b)
        self.num, self.a, self.b = num, a, b

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, basis, weights=None):
        return cls(basis, _CTX[basis].constant(0), 0, 0, weights, _check=False)

    @classmethod
    def one(cls, basis, weights=None):
        return cls(basis, _CTX[basis].constant(1), 0, 0, weights, _check=False)

    @classmethod
    def gen(cls, basis: str, name: str) -> "RingElement":
        names = NAMES[basis]
        if name not in names:
            raise RingError(f"unknown generator {name!r} for basis {basis}")
        return cls(basis, _CTX[basis].gen(1 + names.index(name)), 0, 0, _check=False)

    @classmethod
    def from_field(cls, basis: str, fe, weights=None) -> "RingElement":
        if not isinstance(fe, FieldElement):
            fe = FieldElement._coerce(fe)
        c = _CTX[basis]
        coeffs = fe.num.coeffs()
        d = {(k,) + (0,) * NGEN: v for k, v in enumerate(coeffs) if v != 0}
        num = c.from_dict(d) if d else c.constant(0)
        return cls(basis, num, fe.a, fe.b, weights, _check=False)

    def with_weights(self, weights) -> "RingElement":
        return RingElement(self.basis, self.num, self.a, self.b, weights, _check=False)

    # -- basic predicates -----------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RingElement):
            if other.basis != self.basis:
                other = change_basis(other, self.basis)
            return self.a == other.a and self.b == other.b and self.num == other.num
        try:
            return self == RingElement.from_field(self.basis, other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.basis, self.a, self.b, str(self.num)))

    def __len__(self):
        return len(self.monomials())

    @property
    def nterms(self) -> int:
        """Number of (w, generator) terms of the numerator."""
        return len(self.num)

    def names(self):
        return NAMES[self.basis]

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.basis != self.basis:
                raise RingError("mixing bases; convert with change_basis first")
            return other
        if isinstance(other, (int, Fraction, FieldElement, flint.fmpq)):
            return RingElement.from_field(self.basis, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        weights = _combine_weights(self.weights, other.weights, "add")
        if other.num.is_zero():
            return self.with_weights(weights)
        if self.num.is_zero():
            return other.with_weights(weights)
        return _sum_raw(self.basis, [self, other], weights)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.basis, -self.num, self.a, self.b, self.weights, _check=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        weights = _combine_weights(self.weights, other.weights, "mul")
        if self.num.is_zero() or other.num.is_zero():
            return RingElement.zero(self.basis, weights)
        num, b = self.num * other.num, self.b + other.b
        if b and (self.b == 0 or other.b == 0):
            # a factor without denominator may still carry powers of D
            num, b = _strip_d(self.basis, num, b)
        return RingElement(self.basis, num, self.a + other.a, b, weights, _check=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise RingError("only non-negative integer powers")
        w = None if self.weights is None else (self.weights[0] * n, self.weights[1] * n)
        if n == 0:
            return RingElement.one(self.basis, w)
        return RingElement(self.basis, self.num**n, self.a * n, self.b * n, w, _check=False)

    def scale(self, fe) -> "RingElement":
        return self * RingElement.from_field(self.basis, fe)

    def __truediv__(self, other):
        if isinstance(other, RingElement):
            if other.num.total_degree() > 0 and any(other.num.degrees()[1:]):
                raise RingError("division by a non-constant ring element")
            fe = other.coefficient_field_value()
            res = self.scale(fe.inverse())
            if other.weights is not None and self.weights is not None:
                res = res.with_weights((self.weights[0] - other.weights[0], self.weights[1] - other.weights[1]))
            return res
        return self.scale(FieldElement._coerce(other).inverse())

    def coefficient_field_value(self) -> FieldElement:
        """Value of a generator-free element as a field element."""
        if any(self.num.degrees()[1:]):
            raise RingError("element depends on generators")
        d = self.num.to_dict()
        coeffs = {}
        for mono, c in d.items():
            coeffs[mono[0]] = c
        n = max(coeffs) + 1 if coeffs else 1
        poly = flint.fmpq_poly([coeffs.get(i, 0) for i in range(n)])
        return FieldElement(poly, self.a, self.b)

    # -- structure ------------------------------------------------------

    def monomials(self) -> dict:
        """``{generator exponent tuple: FieldElement}`` (sparse, no zeros)."""
        groups = {}
        for mono, c in self.num.to_dict().items():
            key = tuple(mono[1:])
            groups.setdefault(key, {})[mono[0]] = c
        out = {}
        for key, wc in groups.items():
            n = max(wc) + 1
            poly = flint.fmpq_poly([wc.get(i, 0) for i in range(n)])
            fe = FieldElement(poly, self.a, self.b)
            if fe:
                out[key] = fe
        return out

    def coefficient(self, exps) -> FieldElement:
        if isinstance(exps, dict):
            names = self.names()
            exps = tuple(exps.get(n, 0) for n in names)
        return self.monomials().get(tuple(exps), FieldElement())

    def degree_in(self, name: str) -> int:
        if self.num.is_zero():
            return -1
        return int(self.num.degrees()[1 + self.names().index(name)])

    def coefficient_in(self, name: str, k: int) -> "RingElement":
        """Coefficient of ``name**k`` viewed as a polynomial in ``name``."""
        var = self.names().index(name) + 1
        num = self.num
        fact = 1
        for i in range(k):
            num = num.derivative(var)
            fact *= i + 1
        c = _CTX[self.basis]
        args = [c.gen(i) for i in range(NGEN + 1)]
        args[var] = c.constant(0)
        num = num.compose(*args) / fact
        return RingElement(self.basis, num, self.a, self.b, self.weights)

    def partial(self, name: str) -> "RingElement":
        var = self.names().index(name) + 1
        return RingElement(self.basis, self.num.derivative(var), self.a, self.b, self.weights)

    def parity(self):
        """0 / 1 if all coefficients are rational / sqrt(z)-odd, else None."""
        if self.num.is_zero():
            return None
        pars = set()
        for mono in self.num.monoms():
            pars.add((mono[0] - self.a) % 2)
            if len(pars) > 1:
                return None
        return pars.pop()

    def graded_degree(self):
        """Max of ``sum deg(gen) e + deg_x(coefficient)`` with ``x = 5/(1-3125z)``.

        Returns None if some coefficient is not a polynomial in ``x``.
        """
        degs = DEGREES[self.basis]
        best = -1
        for key, fe in self.monomials().items():
            dx = x_degree(fe)
            if dx is None:
                return None
            best = max(best, dx + sum(d * e for d, e in zip(degs, key)))
        return best

    def __repr__(self):
        if self.num.is_zero():
            return f"RingElement[{self.basis}](0)"
        return f"RingElement[{self.basis}](({self.num}) / (w^{self.a} D^{self.b}))"

    # -- calculus -------------------------------------------------------

    def theta(self) -> "RingElement":
        return theta_derive(self)


def _canonical(basis, num, a, b):
    if num.is_zero():
        return num, 0, 0
    c = _CTX[basis]
    w = c.gen(0)
    zero_args = None
    while True:
        if zero_args is None:
            zero_args = [c.constant(0)] + [c.gen(i) for i in range(1, NGEN + 1)]
        if not num.compose(*zero_args).is_zero():
            break
        num = num / w
        a -= 1
    num, b = _strip_d(basis, num, b)
    return num, a, b


def _strip_d(basis, num, b):
    d = _dpoly(basis)
    while b > 0:
        q, r = divmod(num, d)
        if not r.is_zero():
            break
        num, b = q, b - 1
    return num, b


def _sum_raw(basis, elems, weights=None) -> RingElement:
    """Sum over a common denominator with a single canonicalization."""
    elems = [e for e in elems if not e.num.is_zero()]
    if not elems:
        return RingElement.zero(basis, weights)
    c = _CTX[basis]
    w = c.gen(0)
    d = _dpoly(basis)
    a = max(e.a for e in elems)
    b = max(e.b for e in elems)
    acc = c.constant(0)
    for e in elems:
        term = e.num
        if a != e.a:
            term = term * w ** (a - e.a)
        if b != e.b:
            term = term * d ** (b - e.b)
        acc = acc + term
    return RingElement(basis, acc, a, b, weights)


def ring_sum(elems: Iterable[RingElement], basis: str = None, weights=None) -> RingElement:
    elems = list(elems)
    if not elems:
        if basis is None:
            raise RingError("empty sum needs a basis")
        return RingElement.zero(basis, weights)
    basis = basis or elems[0].basis
    w = weights
    for e in elems:
        if e.basis != basis:
            raise RingError("mixed bases in sum")
        w = _combine_weights(w, e.weights, "add")
    return _sum_raw(basis, elems, w)


def gens(basis: str) -> dict:
    return {n: RingElement.gen(basis, n) for n in NAMES[basis]}


def const(basis: str, value) -> RingElement:
    return RingElement.from_field(basis, value)


def x_degree(fe: FieldElement):
    """Degree of ``fe`` as a polynomial in ``x = 5/(1-3125z)``; None if it is not one."""
    if not fe:
        return -1
    if fe.parity != 0:
        return None
    ev, _ = fe._parts_w()
    if min(ev) < 0:
        return None
    K = max(ev)
    xpoly = flint.fmpq_poly([0, 1])
    xm5 = flint.fmpq_poly([-5, 1])
    s = flint.fmpq_poly([0])
    for k, c in ev.items():
        s += c * xm5**k * xpoly ** (K - k) / flint.fmpq(DISC) ** k
    # value = s(x) * x^(b-K) / 5^b
    shift = fe.b - K
    if shift < 0:
        coeffs = s.coeffs()
        if any(coeffs[: -shift]):
            return None
        return s.degree() + shift
    return s.degree() + shift


# -- theta action -----------------------------------------------------------


def _H(p: int) -> FieldElement:
    return geo.build_pf_operator().H_field(p)


@lru_cache(maxsize=None)
def _theta_table_I() -> tuple:
    g = gens("I")
    A1, B1, B2, B3 = g["A1"], g["B1"], g["B2"], g["B3"]
    Q = [g[f"Q{p}"] for p in range(4)]
    R1, R2 = g["R1"], g["R2"]
    H4inv = _H(4).inverse()
    thzc = geo.theta_log_zc()
    thc = geo.theta_log_c()
    A2 = (
        -2 * A1 * B1 + 2 * B1 * B1 + 2 * B1 - 4 * B2
        + (1 + A1 + 2 * B1).scale(thzc)
        + const("I", geo.h_func())
    )
    B4 = -ring_sum([B.scale(_H(p) * H4inv) for p, B in ((1, B1), (2, B2), (3, B3))]) - const("I", _H(0) * H4inv)
    Q4 = -ring_sum([Q[p].scale(_H(p) * H4inv) for p in range(4)]) + const(
        "I", geo.CONSTANTS.inhomogeneity * geo.z_elem() * H4inv
    )
    half = Fraction(1, 2)
    table = [
        A2 - A1 * A1,
        B2 - B1 * B1,
        B3 - B2 * B1,
        B4 - B3 * B1,
        Q[0] * half + Q[1],
        Q[1] * half + Q[2],
        Q[2] * half + Q[3],
        Q[3] * half + Q4,
        (Fraction(5, 2) - A1 - B1 + const("I", thc)) * R1 + R2,
        (Fraction(7, 2) - B1 + const("I", thc)) * R2,
    ]
    return tuple(table)


@lru_cache(maxsize=None)
def _theta_table_J() -> tuple:
    out = []
    images = _images("J", "I")  # J generators written in I
    for img in images:
        out.append(change_basis(_theta_plain(img), "J"))
    return tuple(out)


def theta_table(basis: str) -> tuple:
    return _theta_table_I() if basis == "I" else _theta_table_J()


def _theta_plain(e: RingElement) -> RingElement:
    """theta without weight bookkeeping."""
    if e.num.is_zero():
        return RingElement.zero(e.basis)
    c = _CTX[e.basis]
    w = c.gen(0)
    d = _dpoly(e.basis)
    n = e.num
    theta_n = w * n.derivative(0) / 2
    core = d * (theta_n - flint.fmpq(e.a, 2) * n) + DISC * e.b * w * w * n
    parts = [RingElement(e.basis, core, e.a, e.b + 1, _check=False)]
    table = theta_table(e.basis)
    for i in range(NGEN):
        dn = n.derivative(i + 1)
        if dn.is_zero():
            continue
        t = table[i]
        if t.num.is_zero():
            continue
        parts.append(RingElement(e.basis, dn * t.num, e.a + t.a, e.b + t.b, _check=False))
    return _sum_raw(e.basis, parts)


def theta_derive(e: RingElement) -> RingElement:
    """``theta_z = z d/dz`` acting on the ring, closed via the A_2, B_4, Q_4 relations."""
    return _theta_plain(e).with_weights(e.weights)


def cov_derive(e: RingElement, k: int = None, n: int = None) -> RingElement:
    """Covariant derivative on a section of ``(T*)^k (x) L^n``.

    ``D_z = (1/z)(theta - k A_1 + n B_1)``; the result has weights ``(k+1, n)``.
    """
    if k is None or n is None:
        if e.weights is None:
            raise WeightError("cov_derive needs section weights")
        k, n = e.weights
    elif e.weights is not None and e.weights != (k, n):
        raise WeightError(f"element carries weights {e.weights}, asked for {(k, n)}")
    basis = e.basis
    A1, B1 = _A1_B1(basis)
    parts = [_theta_plain(e)]
    if k:
        parts.append((A1 * e).with_weights(None) * (-k))
    if n:
        parts.append((B1 * e).with_weights(None) * n)
    total = _sum_raw(basis, [p.with_weights(None) for p in parts])
    out = total.scale(FieldElement.z_power(-1))
    return out.with_weights((k + 1, n))


@lru_cache(maxsize=None)
def _A1_B1(basis):
    if basis == "I":
        return RingElement.gen("I", "A1"), RingElement.gen("I", "B1")
    imgs = _images("I", "J")
    return imgs[0], imgs[1]


# -- change of generators ---------------------------------------------------


@lru_cache(maxsize=None)
def _images(src: str, dst: str) -> tuple:
    """Generators of ``src`` written as elements of ``dst``."""
    if src == dst:
        return tuple(RingElement.gen(src, n) for n in NAMES[src])
    thx = geo.theta_log_x()
    h = geo.h_func()
    s = geo.s_func()
    if src == "J" and dst == "I":
        g = gens("I")
        A1, B1, B2, B3 = g["A1"], g["B1"], g["B2"], g["B3"]
        Q0, Q1, Q2, Q3, R1, R2 = (g[k] for k in ("Q0", "Q1", "Q2", "Q3", "R1", "R2"))
        V1 = A1 + 2 * B1 + 1
        V2 = B2 - B1 * V1
        u = B1
        v1 = V1 + Fraction(3, 5)
        v2 = V2 + Fraction(2, 25)
        v3 = B3 - B1 * (-V2 + V1.scale(thx) + const("I", h) - 1) + const("I", s)
        m1 = Q0 * Fraction(2, 25) + Q1 * Fraction(3, 5) + Q2 - R1
        m2 = (
            Q0.scale(s - thx * Fraction(2, 25))
            + Q1.scale(Fraction(23, 25) - h)
            - Q2.scale(thx)
            + Q3
            - R2
            - B1 * R1
        )
        return (u, v1, v2, v3, Q0, Q1, Q2, Q3, m1, m2)
    if src == "I" and dst == "J":
        g = gens("J")
        u, v1, v2, v3 = g["u"], g["v1"], g["v2"], g["v3"]
        Q0, Q1, Q2, Q3, m1, m2 = (g[k] for k in ("Q0", "Q1", "Q2", "Q3", "m1", "m2"))
        V1 = v1 - Fraction(3, 5)
        V2 = v2 - Fraction(2, 25)
        B1 = u
        A1 = V1 - 2 * u - 1
        B2 = V2 + u * V1
        B3 = v3 - const("J", s) + u * (-V2 + V1.scale(thx) + const("J", h) - 1)
        R1 = Q0 * Fraction(2, 25) + Q1 * Fraction(3, 5) + Q2 - m1
        R2 = (
            Q0.scale(s - thx * Fraction(2, 25))
            + Q1.scale(Fraction(23, 25) - h)
            - Q2.scale(thx)
            + Q3
            - m2
            - B1 * R1
        )
        return (A1, B1, B2, B3, Q0, Q1, Q2, Q3, R1, R2)
    raise RingError(f"no change of basis {src}->{dst}")


def change_basis(e: RingElement, target: str) -> RingElement:
    """Rewrite ``e`` over the generators of ``target`` (exact, invertible)."""
    if e.basis == target:
        return e
    images = _images(e.basis, target)
    if e.num.is_zero():
        return RingElement.zero(target, e.weights)
    c_dst = _CTX[target]
    w = c_dst.gen(0)
    d = _dpoly(target)
    # image_i = M_i / D^{b_i} with M_i polynomial in w (no negative z powers)
    M, bs = [], []
    for img in images:
        if img.a > 0:
            raise RingError("generator image with negative power of z")
        M.append(img.num * w ** (-img.a))
        bs.append(img.b)
    # group terms by their denominator degree sum(b_i e_i)
    groups = {}
    for mono, coef in e.num.to_dict().items():
        delta = sum(bi * ei for bi, ei in zip(bs, mono[1:]))
        groups.setdefault(delta, {})[mono] = coef
    c_src = _CTX[e.basis]
    top = max(groups)
    acc = c_dst.constant(0)
    for delta, terms in groups.items():
        part = c_src.from_dict(terms).compose(w, *M, ctx=c_dst)
        if top != delta:
            part = part * d ** (top - delta)
        acc = acc + part
    return RingElement(target, acc, e.a, e.b + top, e.weights)


# -- partial derivatives in J ------------------------------------------------


PARTIAL_NAMES = ("u", "v1", "v2", "v3", "m1", "m2")


def partial_derive(e: RingElement, name: str) -> RingElement:
    if e.basis != "J":
        raise RingError("formal partials are taken in the J basis")
    if name not in J_NAMES:
        raise RingError(f"unknown generator {name!r}")
    return e.partial(name)


# -- propagators and terminators -----------------------------------------------


@lru_cache(maxsize=None)
def propagators_and_terminators(basis: str = "J") -> dict:
    """``S^zz, S^z, S, Delta^z, Delta`` with their section weights."""
    g = gens("J")
    u, v1, v2, v3, Q0, Q1, m1, m2 = (g[k] for k in ("u", "v1", "v2", "v3", "Q0", "Q1", "m1", "m2"))
    C = geo.yukawa()
    z = geo.z_elem()
    thx = geo.theta_log_x()  # 5^5 z / (1 - 5^5 z)
    inv = lambda fe: fe.inverse()  # noqa: E731
    Szz = (-v1).scale(inv(z * C))
    Sz = (u * v1 + v2).scale(inv(z**2 * C))
    S = (
        u * u * v1 * Fraction(-1, 2) - (u + const("J", thx * Fraction(1, 2))) * v2 + v3 * Fraction(1, 2)
    ).scale(inv(z**3 * C))
    Dz = (-m1 + Q1 * v1 + Q0 * v2).scale(inv(FieldElement.z_power(Fraction(5, 2)) * C))
    D = (u * m1 - m2 - u * Q1 * v1 - v2 * (u * Q0 + Q0.scale(thx) + Q1) + Q0 * v3).scale(
        inv(FieldElement.z_power(Fraction(7, 2)) * C)
    )
    out = {
        "Szz": Szz.with_weights((-2, 2)),
        "Sz": Sz.with_weights((-1, 2)),
        "S": S.with_weights((0, 2)),
        "Dz": Dz.with_weights((-1, 1)),
        "D": D.with_weights((0, 1)),
    }
    if basis != "J":
        out = {k: change_basis(v, basis) for k, v in out.items()}
    return out


# -- evaluation in the holomorphic limit ------------------------------------------


def _series_to_wpoly(s: PuiseuxLogSeries, worder: int) -> flint.fmpq_poly:
    if not s.is_log_free():
        raise RingError("generator series must be log free")
    if s.order * 2 < worder:
        raise TruncationError(f"generator series known below z^{s.order}, need z^{Fraction(worder, 2)}")
    coeffs = [0] * worder
    for e, c in s.terms().items():
        k = int(2 * e)
        if k < 0:
            raise RingError("generator series with negative powers")
        if k < worder:
            coeffs[k] = flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq_poly(coeffs)


@lru_cache(maxsize=8)
def _j_series(gs_key):
    gs = _GS_CACHE[gs_key]
    imgs = _images("J", "I")
    return tuple(evaluate(img, gs, gs.order) for img in imgs)


_GS_CACHE = {}


def generator_series(basis: str, gs) -> list:
    if basis == "I":
        return gs.as_list()
    key = id(gs)
    _GS_CACHE[key] = gs
    return list(_j_series(key))


def evaluate(e: RingElement, gs, order) -> PuiseuxLogSeries:
    """Holomorphic-limit expansion of ``e`` about ``z = 0``, known below ``z^order``."""
    order = Fraction(order)
    if e.num.is_zero():
        return PuiseuxLogSeries.zero("z", order)
    series = generator_series(e.basis, gs)
    worder = int(2 * order) + e.a  # numerator precision in w
    if worder <= 0:
        return PuiseuxLogSeries.zero("z", order, offset=order)
    gpolys = [_series_to_wpoly(s, worder) for s in series]
    groups = {}
    for mono, c in e.num.to_dict().items():
        groups.setdefault(tuple(mono[1:]), {})[mono[0]] = c
    cache = {(): flint.fmpq_poly([1])}

    def prod(key):
        if key in cache:
            return cache[key]
        # strip the last nonzero exponent by one
        i = max(j for j, x in enumerate(key) if x)
        prev = key[:i] + (key[i] - 1,) + key[i + 1 :]
        while prev and prev[-1] == 0:
            prev = prev[:-1]
        val = prod(prev).mul_low(gpolys[i], worder)
        cache[key] = val
        return val

    total = flint.fmpq_poly([0])
    for key, wc in groups.items():
        k = key
        while k and k[-1] == 0:
            k = k[:-1]
        n = max(wc) + 1
        cpoly = flint.fmpq_poly([wc.get(i, 0) for i in range(min(n, worder))])
        total += cpoly.mul_low(prod(k), worder) if k else cpoly
    if e.b:
        # (1 - 3125 w^2)^(-b) truncated
        inv = [0] * worder
        c = flint.fmpq(1)
        for j in range(0, (worder + 1) // 2):
            inv[2 * j] = c
            c = c * (e.b + j) / (j + 1) * DISC
        total = total.mul_low(flint.fmpq_poly(inv), worder)
    coeffs = total.coeffs()
    terms = {}
    for k, c in enumerate(coeffs[:worder]):
        if c != 0:
            terms[Fraction(k - e.a, 2)] = Fraction(int(c.p), int(c.q))
    return PuiseuxLogSeries.from_terms("z", terms, order) if terms else PuiseuxLogSeries.zero("z", order)


# -- canonical text serialization ---------------------------------------------------


def serialize(e: RingElement) -> str:
    lines = [f"basis {e.basis}"]
    if e.weights is not None:
        lines.append(f"weights {e.weights[0]} {e.weights[1]}")
    monos = e.monomials()
    for key in sorted(monos):
        lines.append(",".join(str(x) for x in key) + " : " + monos[key].to_str())
    body = "\n".join(lines)
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + f"\nchecksum {digest}\n"


class ChecksumError(RingError):
    pass


def parse(text: str) -> RingElement:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[-1].startswith("checksum "):
        raise ChecksumError("missing checksum line")
    body = "\n".join(lines[:-1])
    if hashlib.sha256(body.encode()).hexdigest() != lines[-1].split()[1]:
        raise ChecksumError("checksum mismatch")
    basis = lines[0].split()[1]
    weights = None
    idx = 1
    if len(lines) > 2 and lines[1].startswith("weights "):
        _, k, n = lines[1].split()
        weights = (int(k), int(n))
        idx = 2
    parts = []
    gen_list = [RingElement.gen(basis, n) for n in NAMES[basis]]
    for ln in lines[idx:-1]:
        key, coeff = ln.split(" : ")
        exps = [int(x) for x in key.split(",")]
        fe = FieldElement.from_str(coeff)
        mono = RingElement.from_field(basis, fe)
        for g, e_ in zip(gen_list, exps):
            if e_:
                mono = mono * g**e_
        parts.append(mono)
    return ring_sum(parts, basis=basis).with_weights(weights) if parts else RingElement.zero(basis, weights)
