"""Coefficient field elements ``r(z) + sqrt(z) s(z)``.

Every coefficient that occurs for the quintic has a denominator of the form
``z**a (1 - 5**5 z)**b``.  Elements are therefore stored as

    N(w) * w**(-a) * D(w)**(-b),   w = sqrt(z),  D = 1 - 3125 w**2,

with ``N`` an exact rational polynomial in ``w``.  The even/odd split of ``N``
in ``w`` is the split into the rational and the ``sqrt(z)`` part.
"""

from __future__ import annotations

import re
from fractions import Fraction

import flint

from .exact_series import PuiseuxLogSeries

DISC = 3125  # 5**5
W = flint.fmpq_poly([0, 1])
DPOLY = flint.fmpq_poly([1, 0, -DISC])


class FieldError(ArithmeticError):
    pass


def _to_fraction(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _strip_w(num: flint.fmpq_poly) -> tuple[flint.fmpq_poly, int]:
    coeffs = num.coeffs()
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    if k == 0:
        return num, 0
    return flint.fmpq_poly(coeffs[k:]), k


def _strip_d(num: flint.fmpq_poly, b: int) -> tuple[flint.fmpq_poly, int]:
    while b > 0:
        q, r = divmod(num, DPOLY)
        if r != 0:
            break
        num, b = q, b - 1
    return num, b


class FieldElement:
    """Immutable element of Q(z)[sqrt z] localized at z and 1 - 3125 z."""

    __slots__ = ("num", "a", "b")

    def __init__(self, num=0, a: int = 0, b: int = 0, _canonical: bool = False):
        if not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly([num]) if not isinstance(num, (list, tuple)) else flint.fmpq_poly(num)
        if b < 0:
            num = num * DPOLY ** (-b)
            b = 0
        if not _canonical:
            if num == 0:
                a, b = 0, 0
            else:
                num, k = _strip_w(num)
                a -= k
                num, b = _strip_d(num, b)
        self.num, self.a, self.b = num, a, b

    # -- constructors ---------------------------------------------------

    @classmethod
    def z_power(cls, e, coeff=1) -> "FieldElement":
        """``coeff * z**e`` with ``e`` a half-integer."""
        k = Fraction(e) * 2
        if k.denominator != 1:
            raise FieldError("exponent off the half-integer grid")
        return cls(flint.fmpq_poly([coeff]), -int(k), 0)

    @classmethod
    def from_z_poly(cls, coeffs, den_power: int = 0, z_den: int = 0) -> "FieldElement":
        """``(sum c_i z^i) / (z**z_den (1-3125z)**den_power)``."""
        wc = []
        for c in coeffs:
            if isinstance(c, Fraction):
                c = flint.fmpq(c.numerator, c.denominator)
            wc.extend([c, 0])
        return cls(flint.fmpq_poly(wc or [0]), 2 * z_den, den_power)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num == 0

    def __bool__(self):
        return self.num != 0

    def is_rational_constant(self) -> bool:
        return self.a == 0 and self.b == 0 and self.num.degree() <= 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            if not isinstance(other, (int, Fraction, flint.fmpq)):
                return NotImplemented
            other = self._coerce(other)
        return self.a == other.a and self.b == other.b and self.num == other.num

    def __hash__(self):
        return hash((self.a, self.b, tuple(self.num.coeffs())))

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, Fraction):
            x = flint.fmpq(x.numerator, x.denominator)
        return FieldElement(flint.fmpq_poly([x]), 0, 0, _canonical=True) if x != 0 else FieldElement()

    def __add__(self, other):
        other = self._coerce(other)
        if other.num == 0:
            return self
        if self.num == 0:
            return other
        a, b = max(self.a, other.a), max(self.b, other.b)
        n1 = self.num * W ** (a - self.a) * DPOLY ** (b - self.b)
        n2 = other.num * W ** (a - other.a) * DPOLY ** (b - other.b)
        return FieldElement(n1 + n2, a, b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.num, self.a, self.b, _canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.num == 0 or other.num == 0:
            return FieldElement()
        # w never divides a canonical numerator, and D cannot divide one with b > 0;
        # only when exactly one factor has b = 0 can its numerator cancel D's
        num, a, b = self.num * other.num, self.a + other.a, self.b + other.b
        if (self.b == 0) != (other.b == 0):
            num, b = _strip_d(num, b)
        return FieldElement(num, a, b, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.num == 0:
            raise ZeroDivisionError("inverse of zero field element")
        num = self.num
        k = 0
        while True:
            if num.degree() == 0:
                c = num.coeffs()[0]
                # 1/(c w^-a D^-b D^k) = w^a D^(b-k) / c
                return FieldElement(flint.fmpq_poly([1 / c]), -self.a, k - self.b)
            q, r = divmod(num, DPOLY)
            if r != 0:
                raise FieldError("denominator outside z^a (1-3125z)^b is not supported")
            num, k = q, k + 1

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return FieldElement(1)
        return FieldElement(self.num ** n, self.a * n, self.b * n, _canonical=True)

    def theta(self) -> "FieldElement":
        """``z d/dz`` (equivalently ``(w/2) d/dw``)."""
        if self.num == 0:
            return self
        n = self.num
        theta_n = W * n.derivative() / 2
        core = DPOLY * (theta_n - flint.fmpq(self.a, 2) * n) + DISC * self.b * W * W * n
        return FieldElement(core, self.a, self.b + 1)

    # -- views ----------------------------------------------------------

    def _parts_w(self):
        """Return ((even_coeffs_in_z, zshift), (odd..., zshift)) exact parts."""
        coeffs = self.num.coeffs()
        ev, od = {}, {}
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            e = k - self.a
            if e % 2 == 0:
                ev[e // 2] = c
            else:
                od[(e - 1) // 2] = c
        return ev, od

    def part(self, parity: int) -> "FieldElement":
        """The even (``parity=0``) or odd (``parity=1``) part, as a field element.

        The odd part is returned *with* its ``sqrt(z)`` factor.
        """
        ev, od = self._parts_w()
        src = ev if parity == 0 else od
        out = FieldElement()
        for e, c in src.items():
            out = out + FieldElement.z_power(e + Fraction(parity, 2), c)
        return out * FieldElement(1, 0, self.b) if out else out

    @property
    def parity(self):
        """0 if purely rational, 1 if purely sqrt(z)*rational, None if mixed/zero."""
        ev, od = self._parts_w()
        if ev and not od:
            return 0
        if od and not ev:
            return 1
        return None

    def to_series(self, order, var: str = "z") -> PuiseuxLogSeries:
        """Laurent-Puiseux expansion about ``z = 0`` known below ``order``."""
        order = Fraction(order)
        coeffs = self.num.coeffs()
        lead = Fraction(-self.a, 2)
        if self.num == 0:
            return PuiseuxLogSeries.zero(var, order)
        terms = {lead + Fraction(k, 2): _to_fraction(c) for k, c in enumerate(coeffs) if c != 0}
        base = PuiseuxLogSeries.from_terms(var, terms, max(order, lead))
        if self.b == 0:
            return base.truncate(order) if base.order > order else base
        rel = max(order - lead, Fraction(1, 2))
        n = int(rel) + 1
        # (1 - 3125 z)^(-b) = sum C(b+k-1, k) 3125^k z^k
        inv = {}
        c = Fraction(1)
        for k in range(n):
            inv[k] = c
            c = c * (self.b + k) / (k + 1) * DISC
        dser = PuiseuxLogSeries.from_terms(var, inv, n)
        out = base * dser
        return out.truncate(order) if out.order > order else out

    def __repr__(self):
        return f"FieldElement({self.to_str()})"

    # -- canonical text form --------------------------------------------

    def rational_parts(self):
        """Canonical ``(p_even, q_even), (p_odd, q_odd)`` integer-polynomial pairs.

        Value is ``p_even/q_even + sqrt(z) * p_odd/q_odd``; each denominator is
        ``v * z**c * (1 - 3125 z)**k`` with ``v > 0`` and the fraction reduced.
        Polynomials are returned as lists of Python ints, lowest degree first.
        """
        ev, od = self._parts_w()
        return _canon_part(ev, self.b), _canon_part(od, self.b)

    def to_str(self) -> str:
        (pe, qe), (po, qo) = self.rational_parts()
        return f"{_poly_str(pe)}/{_poly_str(qe)}|{_poly_str(po)}/{_poly_str(qo)}"

    @classmethod
    def from_str(cls, text: str) -> "FieldElement":
        try:
            even, odd = text.strip().split("|")
            out = FieldElement()
            for part, shift in ((even, 0), (odd, 1)):
                p, q = part.split("/")
                out = out + _from_ratio(_parse_poly(p), _parse_poly(q), shift)
        except (ValueError, FieldError) as exc:
            raise FieldError(f"cannot parse field element {text!r}") from exc
        return out


def _canon_part(part: dict, b: int):
    if not part:
        return [0], [1]
    lo = min(part)
    zden = max(-lo, 0)
    # value = sum c_e z^e / D^b = (sum c_e z^(e+zden)) / (z^zden D^b)
    poly = flint.fmpq_poly([0] * 0 + [part.get(e - zden, 0) for e in range(0, max(part) + zden + 1)])
    # cancel common z factors (only possible when zden > 0 and poly has low zeros)
    coeffs = poly.coeffs()
    k = 0
    while zden > 0 and coeffs[k] == 0:
        k += 1
        zden -= 1
    poly = flint.fmpq_poly(coeffs[k:])
    dz = flint.fmpq_poly([1, -DISC])
    bb = b
    while bb > 0:
        qq, r = divmod(poly, dz)
        if r != 0:
            break
        poly, bb = qq, bb - 1
    den = flint.fmpq_poly([0] * zden + [1]) * dz ** bb
    # clear rational content
    pc = [_to_fraction(c) for c in poly.coeffs()]
    lcm = 1
    for c in pc:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in pc]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    g = _gcd(g, lcm) or 1
    p = [x // g for x in ints]
    v = lcm // g
    q = [int(_to_fraction(c)) * v for c in den.coeffs()]
    return p, q


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _poly_str(coeffs) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("*z" if i == 1 else f"*z^{i}")
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign}{abs(c)}{mono}")
    return "".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?)(\d+)(?:\*z(?:\^(\d+))?)?")


def _parse_poly(text: str) -> list:
    text = text.strip()
    pos, out = 0, {}
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial {text!r}")
        sign, c, e = m.groups()
        has_z = "*z" in m.group(0)
        deg = int(e) if e else (1 if has_z else 0)
        out[deg] = out.get(deg, 0) + (-int(c) if sign == "-" else int(c))
        pos = m.end()
    n = max(out) + 1 if out else 1
    return [out.get(i, 0) for i in range(n)]


def _from_ratio(p: list, q: list, parity: int) -> FieldElement:
    qp = flint.fmpq_poly(q)
    zden = 0
    coeffs = qp.coeffs()
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
        zden += 1
    qp = flint.fmpq_poly(coeffs)
    dz = flint.fmpq_poly([1, -DISC])
    b = 0
    while qp.degree() > 0:
        qq, r = divmod(qp, dz)
        if r != 0:
            raise FieldError("denominator is not of the form v z^c (1-3125z)^k")
        qp, b = qq, b + 1
    v = qp.coeffs()[0]
    num = FieldElement.from_z_poly([flint.fmpq(c) / v for c in p], den_power=b, z_den=zden)
    return num * FieldElement.z_power(Fraction(parity, 2)) if parity else num


ZERO = FieldElement()
ONE = FieldElement(1)


def z_elem() -> FieldElement:
    return FieldElement.z_power(1)


def sqrt_z() -> FieldElement:
    return FieldElement.z_power(Fraction(1, 2))


def inv_disc(k: int = 1) -> FieldElement:
    """``(1 - 3125 z)**(-k)``."""
    return FieldElement(1, 0, k)


def disc(k: int = 1) -> FieldElement:
    """``(1 - 3125 z)**k``."""
    return FieldElement(DPOLY ** k, 0, 0)
