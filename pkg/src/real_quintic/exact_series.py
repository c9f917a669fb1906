"""Truncated Puiseux series on the half-integer grid, with powers of log.

A series is stored as a dense block of exact rational coefficients starting
at ``offset`` and stopping just below ``order``.  Exponents advance in steps
of 1/2, so integer-exponent series simply carry zeros on the odd half-steps.
Log component ``k`` multiplies ``(log var)**k``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

MAX_LOG = 3
HALF = Fraction(1, 2)

__all__ = [
    "MAX_LOG",
    "PuiseuxLogSeries",
    "SeriesError",
    "TruncationError",
    "reversion",
    "substitute",
]


class SeriesError(ValueError):
    pass


class TruncationError(SeriesError):
    """Raised when a consumer asks for coefficients that were never tracked."""


def _half(x) -> Fraction:
    x = Fraction(x)
    if (2 * x).denominator != 1:
        raise SeriesError(f"exponent {x} is not on the half-integer grid")
    return x


def _idx(x: Fraction) -> int:
    return int(2 * x)


class PuiseuxLogSeries:
    """Immutable truncated series ``sum_k sum_e c[k][e] var**e (log var)**k``."""

    __slots__ = ("var", "offset", "order", "comps")

    def __init__(self, var: str, offset, order, comps: Sequence[Sequence]):
        offset = _half(offset)
        order = _half(order)
        if order < offset:
            raise SeriesError("truncation order below offset")
        n = _idx(order - offset)
        if not comps:
            comps = [()]
        if len(comps) > MAX_LOG + 1:
            raise SeriesError(f"log grade {len(comps) - 1} exceeds {MAX_LOG}")
        fixed = []
        for c in comps:
            c = [Fraction(v) for v in c[:n]]
            c.extend([Fraction(0)] * (n - len(c)))
            fixed.append(tuple(c))
        while len(fixed) > 1 and not any(fixed[-1]):
            fixed.pop()
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "comps", tuple(fixed))

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxLogSeries is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, var: str, terms: Mapping, order, log: int = 0):
        """Build from ``{exponent: coeff}`` (single log grade ``log``)."""
        order = _half(order)
        exps = [_half(e) for e in terms]
        offset = min(exps + [order]) if exps else order
        offset = min(offset, order)
        n = _idx(order - offset)
        comp = [Fraction(0)] * n
        for e, c in terms.items():
            e = _half(e)
            if e < order:
                comp[_idx(e - offset)] += Fraction(c)
        comps = [[Fraction(0)] * n for _ in range(log)] + [comp]
        return cls(var, offset, order, comps)

    @classmethod
    def constant(cls, var: str, value, order):
        return cls.from_terms(var, {0: value}, order)

    @classmethod
    def monomial(cls, var: str, exponent, order, coeff=1):
        return cls.from_terms(var, {exponent: coeff}, order)

    @classmethod
    def log_var(cls, var: str, order):
        """The series ``log(var)`` itself."""
        return cls.from_terms(var, {0: 1}, order, log=1)

    @classmethod
    def zero(cls, var: str, order, offset=0):
        return cls(var, min(_half(offset), _half(order)), order, [()])

    # -- inspection ---------------------------------------------------------

    @property
    def log_grade(self) -> int:
        return len(self.comps) - 1

    def __len__(self):
        return len(self.comps[0])

    def exponents(self):
        return [self.offset + Fraction(i, 2) for i in range(len(self))]

    def coeff(self, exponent, log: int = 0) -> Fraction:
        e = _half(exponent)
        if e >= self.order:
            raise TruncationError(
                f"coefficient of {self.var}^{e} requested but series is only known below {self.order}"
            )
        if e < self.offset or log >= len(self.comps):
            return Fraction(0)
        return self.comps[log][_idx(e - self.offset)]

    def __getitem__(self, exponent):
        return self.coeff(exponent)

    def terms(self, log: int = 0) -> dict:
        """Nonzero coefficients of one log component as ``{exponent: coeff}``."""
        if log >= len(self.comps):
            return {}
        return {
            self.offset + Fraction(i, 2): c
            for i, c in enumerate(self.comps[log])
            if c
        }

    def is_zero(self) -> bool:
        return not any(any(c) for c in self.comps)

    def is_log_free(self) -> bool:
        return self.log_grade == 0

    def valuation(self):
        """Smallest exponent with a nonzero coefficient (any log grade)."""
        best = None
        for c in self.comps:
            for i, v in enumerate(c):
                if v:
                    if best is None or i < best:
                        best = i
                    break
        return None if best is None else self.offset + Fraction(best, 2)

    def has_odd_half(self) -> bool:
        return any(
            v for c in self.comps for e, v in zip(self.exponents(), c) if e.denominator == 2
        )

    def log_component(self, k: int) -> "PuiseuxLogSeries":
        comp = self.comps[k] if k < len(self.comps) else ()
        return PuiseuxLogSeries(self.var, self.offset, self.order, [comp])

    def __eq__(self, other):
        if not isinstance(other, PuiseuxLogSeries):
            return NotImplemented
        if self.var != other.var or self.order != other.order:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.var, self.order, tuple(sorted(self.terms().items()))))

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.comps):
            for e, v in zip(self.exponents(), c):
                if v:
                    mono = f"{self.var}^{e}" if e else ""
                    lg = f"log({self.var})^{k}" if k else ""
                    parts.append("*".join(x for x in (str(v), mono, lg) if x))
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.order})"

    # -- truncation / reshaping -------------------------------------------

    def truncate(self, order) -> "PuiseuxLogSeries":
        order = _half(order)
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        order = max(order, self.offset)
        return PuiseuxLogSeries(self.var, self.offset, order, self.comps)

    def _reoffset(self, offset: Fraction) -> list:
        """Components re-based to a smaller offset (padding with zeros)."""
        pad = _idx(self.offset - offset)
        if pad < 0:
            raise SeriesError("can only move offset down")
        return [[Fraction(0)] * pad + list(c) for c in self.comps]

    def normalized(self) -> "PuiseuxLogSeries":
        """Drop leading zero coefficients so that ``offset`` is the valuation."""
        v = self.valuation()
        if v is None or v == self.offset:
            return self
        cut = _idx(v - self.offset)
        return PuiseuxLogSeries(self.var, v, self.order, [c[cut:] for c in self.comps])

    def _check_var(self, other):
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PuiseuxLogSeries):
            self._check_var(other)
            return other
        if isinstance(other, (int, Fraction)):
            return PuiseuxLogSeries.constant(self.var, other, max(self.order, HALF))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        offset = min(self.offset, other.offset)
        order = min(self.order, other.order)
        offset = min(offset, order)
        a, b = self._reoffset(offset), other._reoffset(offset)
        n = _idx(order - offset)
        comps = []
        for k in range(max(len(a), len(b))):
            ca = a[k] if k < len(a) else []
            cb = b[k] if k < len(b) else []
            comps.append(
                [
                    (ca[i] if i < len(ca) else 0) + (cb[i] if i < len(cb) else 0)
                    for i in range(n)
                ]
            )
        return PuiseuxLogSeries(self.var, offset, order, comps)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxLogSeries(
            self.var, self.offset, self.order, [[-v for v in c] for c in self.comps]
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PuiseuxLogSeries":
        c = Fraction(c)
        return PuiseuxLogSeries(
            self.var, self.offset, self.order, [[c * v for v in cc] for cc in self.comps]
        )

    def shift(self, exponent) -> "PuiseuxLogSeries":
        """Multiply by ``var**exponent`` (exact, no truncation loss)."""
        e = _half(exponent)
        return PuiseuxLogSeries(self.var, self.offset + e, self.order + e, self.comps)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PuiseuxLogSeries):
            return NotImplemented
        self._check_var(other)
        grade = self.log_grade + other.log_grade
        if grade > MAX_LOG:
            raise SeriesError(f"log grade {grade} exceeds supported bound {MAX_LOG}")
        offset = self.offset + other.offset
        order = min(self.offset + other.order, other.offset + self.order)
        n = max(_idx(order - offset), 0)
        comps = [[Fraction(0)] * n for _ in range(grade + 1)]
        for ka, ca in enumerate(self.comps):
            for kb, cb in enumerate(other.comps):
                out = comps[ka + kb]
                nzb = [(j, v) for j, v in enumerate(cb[:n]) if v]
                for i, x in enumerate(ca[:n]):
                    if not x:
                        continue
                    lim = n - i
                    for j, y in nzb:
                        if j >= lim:
                            break
                        out[i + j] += x * y
        return PuiseuxLogSeries(self.var, offset, max(order, offset), comps)

    __rmul__ = __mul__

    def inverse(self) -> "PuiseuxLogSeries":
        if not self.is_log_free():
            raise SeriesError("cannot invert a log-bearing series")
        b = self.normalized()
        if b.is_zero():
            raise SeriesError("division by a series with no nonzero coefficient")
        c = b.comps[0]
        n = len(c)
        lead = c[0]
        inv = [Fraction(0)] * n
        inv[0] = 1 / lead
        for k in range(1, n):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if c[j]:
                    acc += c[j] * inv[k - j]
            inv[k] = -acc / lead
        # relative precision n half-steps, leading exponent -offset
        return PuiseuxLogSeries(b.var, -b.offset, b.order - 2 * b.offset, [inv])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        if not isinstance(other, PuiseuxLogSeries):
            return NotImplemented
        self._check_var(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse().scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PuiseuxLogSeries.constant(self.var, 1, max(self.order - self.offset, HALF))
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus ----------------------------------------------------------

    def theta(self) -> "PuiseuxLogSeries":
        """``var * d/dvar``; ``log var`` differentiates to 1."""
        exps = self.exponents()
        comps = []
        for k, c in enumerate(self.comps):
            nxt = self.comps[k + 1] if k + 1 < len(self.comps) else None
            comps.append(
                [
                    e * v + ((k + 1) * nxt[i] if nxt is not None else 0)
                    for i, (e, v) in enumerate(zip(exps, c))
                ]
            )
        return PuiseuxLogSeries(self.var, self.offset, self.order, comps)

    def derivative(self) -> "PuiseuxLogSeries":
        return self.theta().shift(-1)

    def exp(self) -> "PuiseuxLogSeries":
        """``exp`` of a log-free, integer-exponent series with no polar part."""
        if not self.is_log_free():
            raise SeriesError("exp of log-bearing series")
        f = self
        if f.offset < 0:
            f = f.normalized()
            if f.offset < 0:
                raise SeriesError("exp of a series with negative powers")
        if f.has_odd_half():
            raise SeriesError("exp only implemented on integer exponents")
        n = int(f.order) if f.order.denominator == 1 else int(f.order - HALF) + 1
        a = [f.coeff(i) if i >= f.offset else Fraction(0) for i in range(n)]
        c0 = a[0] if n else Fraction(0)
        if c0:
            raise SeriesError("exp with nonzero constant term would leave the rationals")
        e = [Fraction(0)] * n
        if n:
            e[0] = Fraction(1)
        for m in range(1, n):
            acc = Fraction(0)
            for k in range(1, m + 1):
                if a[k]:
                    acc += k * a[k] * e[m - k]
            e[m] = acc / m
        return PuiseuxLogSeries.from_terms(self.var, dict(enumerate(e)), min(n, f.order))

    def sqrt(self) -> "PuiseuxLogSeries":
        """Principal square root of a log-free series with leading coefficient 1."""
        if not self.is_log_free():
            raise SeriesError("sqrt of log-bearing series")
        b = self.normalized()
        c = b.comps[0]
        if not c or c[0] != 1:
            raise SeriesError("sqrt requires leading coefficient 1")
        half_off = b.offset / 2
        if (2 * half_off).denominator != 1:
            raise SeriesError("square root leaves the half-integer grid")
        n = len(c)
        r = [Fraction(0)] * n
        r[0] = Fraction(1)
        for k in range(1, n):
            acc = c[k]
            for j in range(1, k):
                acc -= r[j] * r[k - j]
            r[k] = acc / 2
        return PuiseuxLogSeries(b.var, half_off, half_off + Fraction(n, 2), [r])

    def rename(self, var: str) -> "PuiseuxLogSeries":
        return PuiseuxLogSeries(var, self.offset, self.order, self.comps)

    def require_order(self, order) -> "PuiseuxLogSeries":
        """Hard check that the series is tracked through ``order`` (exclusive)."""
        if self.order < _half(order):
            raise TruncationError(f"series known below {self.order}, need {order}")
        return self


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def div(a, b):
    return a / b


def theta(a):
    return a.theta()


def reversion(q_of_z: PuiseuxLogSeries, var: str = "q") -> PuiseuxLogSeries:
    """Compositional inverse of ``q = z + a_2 z^2 + ...`` by Lagrange inversion.

    ``[q^n] z(q) = (1/n) [w^(n-1)] (w / q(w))^n``.
    """
    if not q_of_z.is_log_free():
        raise SeriesError("reversion needs a log-free series")
    f = q_of_z.normalized()
    if f.has_odd_half():
        raise SeriesError("reversion needs integer exponents")
    if f.offset != 1 or f.coeff(1) != 1:
        raise SeriesError("reversion needs leading term exactly 1 * z")
    phi = f.shift(-1).inverse()  # w / q(w), constant term 1
    n_max = int(f.order) - 1  # coefficients of z(q) known for q^1..q^n_max
    coeffs = {}
    power = PuiseuxLogSeries.constant(f.var, 1, phi.order)
    for n in range(1, n_max + 1):
        power = power * phi
        coeffs[n] = power.coeff(n - 1) / n
    return PuiseuxLogSeries.from_terms(var, coeffs, n_max + 1)


def substitute(outer: PuiseuxLogSeries, inner: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Evaluate ``outer(z)`` at ``z = inner(q)``.

    ``inner`` must start ``c*q + ...`` with ``c = 1`` whenever ``outer`` uses
    half-integer or negative exponents (the principal branch of
    ``inner**(1/2)`` is taken).
    """
    if not outer.is_log_free():
        raise SeriesError("substitution of log-bearing series is not supported")
    inn = inner.normalized()
    if inn.is_zero() or inn.offset <= 0:
        raise SeriesError("composition undefined: inner series has a constant term")
    if inn.offset != 1 or inn.has_odd_half():
        raise SeriesError("inner series must be q * (unit power series in q)")
    lead = inn.coeff(1)
    unit = inn.shift(-1)  # r(q), constant term = lead
    rel = unit.order  # r known to this relative order
    needs_root = any(e.denominator == 2 or e < 0 for e in outer.terms())
    if needs_root and lead != 1:
        raise SeriesError("half-integer substitution needs a unit leading coefficient")
    order = min(outer.order, outer.offset + rel)
    var = inner.var
    acc = PuiseuxLogSeries.zero(var, order, offset=min(outer.offset, order))
    terms = outer.terms()
    if not terms:
        return acc
    if needs_root:
        rho = unit.scale(1 / lead).sqrt() if lead != 1 else unit.sqrt()
        step = rho
    else:
        step = None
    e0 = min(terms)
    # base = r(q)^(e0) as a q-series (shifted by q^e0 at the end)
    if step is not None:
        k0 = int(2 * e0)
        base = step ** k0 if k0 >= 0 else step.inverse() ** (-k0)
    else:
        base = unit ** int(e0)
    rel_order = order - e0
    cur = base.truncate(min(base.order, rel_order)) if base.order > rel_order else base
    e = e0
    last = max(terms)
    while e <= last and e < order:
        c = terms.get(e)
        if c:
            acc = acc + cur.shift(e).scale(c).truncate(order)
        e += HALF
        if e > last or e >= order:
            break
        if step is not None:
            cur = cur * step
        elif e.denominator == 1:
            cur = cur * unit
        cur = cur.truncate(min(cur.order, order - e)) if cur.order > order - e else cur
    return acc.truncate(order) if acc.order > order else acc
