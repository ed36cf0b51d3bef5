"""Exact arithmetic in the cyclotomic field Q(zeta_L).

Elements are stored densely as residues modulo the L-th cyclotomic
polynomial, with integer numerators over one shared positive denominator.
That gives a unique canonical form, so equality and hashing are structural.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational

from sympy import Poly, cyclotomic_poly, symbols

__all__ = ["CyclotomicField", "Scalar", "parse_scalar"]


class CyclotomicField:
    """The field Q(zeta_L) for a fixed even order L.

    Instances are cached per order, so ``CyclotomicField(4) is CyclotomicField(4)``.
    """

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, order: int):
        if order in cls._instances:
            return cls._instances[order]
        if order < 1:
            raise ValueError(f"root-of-unity order must be positive, got {order}")
        self = super().__new__(cls)
        x = symbols("x")
        coeffs = Poly(cyclotomic_poly(order, x), x).all_coeffs()[::-1]
        self.order = order
        self.modulus = tuple(int(c) for c in coeffs)  # low to high, monic
        self.degree = len(self.modulus) - 1
        self._roots: dict[int, Scalar] = {}
        self._logs: dict[tuple, int] | None = None
        self.zero = Scalar._raw(self, (0,) * self.degree, 1)
        self.one = self.rational(1)
        cls._instances[order] = self
        return self

    def __reduce__(self):
        return (CyclotomicField, (self.order,))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    # -- constructors -----------------------------------------------------
    def rational(self, value) -> "Scalar":
        q = Fraction(value)
        num = [0] * self.degree
        num[0] = q.numerator
        return Scalar._raw(self, tuple(num), q.denominator)

    def from_poly(self, coeffs, den: int = 1) -> "Scalar":
        """Reduce ``sum coeffs[j] z^j / den`` modulo the cyclotomic polynomial."""
        return Scalar._make(self, _reduce(list(coeffs), self.modulus), den)

    def root_of_unity(self, j: int) -> "Scalar":
        j %= self.order
        cached = self._roots.get(j)
        if cached is None:
            coeffs = [0] * (j + 1)
            coeffs[j] = 1
            cached = self.from_poly(coeffs)
            self._roots[j] = cached
        return cached

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ValueError(f"scalar over {value.field!r} used in {self!r}")
            return value
        if isinstance(value, (int, Rational)):
            return self.rational(value)
        if isinstance(value, str):
            return parse_scalar(self, value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def root_exponent(self, x: "Scalar") -> int | None:
        """Return j with x == zeta^j, or None if x is not an L-th root of unity."""
        if self._logs is None:
            self._logs = {}
            for j in range(self.order):
                r = self.root_of_unity(j)
                self._logs.setdefault((r.num, r.den), j)
        return self._logs.get((x.num, x.den))

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(self, text)


def _reduce(coeffs: list[int], modulus: tuple[int, ...]) -> tuple[int, ...]:
    d = len(modulus) - 1
    for top in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[top]
        if c:
            base = top - d
            for j in range(d):
                m = modulus[j]
                if m:
                    coeffs[base + j] -= c * m
            coeffs[top] = 0
    if len(coeffs) < d:
        coeffs = coeffs + [0] * (d - len(coeffs))
    return tuple(coeffs[:d])


class Scalar:
    """An element of Q(zeta_L); immutable and hashable."""

    __slots__ = ("field", "num", "den", "_hash")

    @classmethod
    def _raw(cls, field, num, den):
        self = object.__new__(cls)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, field, num, den):
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            return cls._raw(field, num, 1)
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        return cls._raw(field, num, den)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- arithmetic -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError("scalars from different cyclotomic fields")
            return other
        if isinstance(other, (int, Rational)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return Scalar._make(self.field, tuple(a + b for a, b in zip(self.num, other.num)), self.den)
        d1, d2 = self.den, other.den
        return Scalar._make(
            self.field, tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        return _inverse(self)

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(Fraction(self.num[0], self.den))
            else:
                h = hash((self.num, self.den))
            self._hash = h
        return h

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.field.order)
        return sum(c * z**j for j, c in enumerate(self.num)) / self.den

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            mag = abs(q)
            if j == 0:
                body = str(mag)
            else:
                zpart = "z" if j == 1 else f"z^{j}"
                body = zpart if mag == 1 else f"{mag}*{zpart}"
            sign = "-" if q < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r}, L={self.field.order})"

    def __reduce__(self):
        return (parse_scalar, (self.field, str(self)))


def _mul(x: Scalar, y: Scalar) -> Scalar:
    field = x.field
    d = field.degree
    xn, yn = x.num, y.num
    if not any(xn[1:]):
        c = xn[0]
        return Scalar._make(field, tuple(c * b for b in yn), x.den * y.den)
    if not any(yn[1:]):
        c = yn[0]
        return Scalar._make(field, tuple(c * a for a in xn), x.den * y.den)
    prod = [0] * (2 * d - 1)
    for i, a in enumerate(xn):
        if a:
            for j, b in enumerate(yn):
                if b:
                    prod[i + j] += a * b
    return Scalar._make(field, _reduce(prod, field.modulus), x.den * y.den)


# Polynomials over Q as lists of Fractions, low degree first.
def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _polydivmod(a, b):
    a = _trim(list(a))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        _trim(a)
    return _trim(q), a


def _polymul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(c) for c in out])


def _inverse(x: Scalar) -> Scalar:
    # Extended Euclid on (x, Phi_L): s*x + t*Phi = g, g a nonzero constant.
    field = x.field
    r0 = _trim([Fraction(c) for c in field.modulus])
    r1 = _trim([Fraction(c, x.den) for c in x.num])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _polydivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _polysub(s0, _polymul(q, s1))
    g = r1[0]
    coeffs = [c / g for c in s1]
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return field.from_poly([int(c * den) for c in coeffs], den)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<z>z(?:\s*\^\s*(?P<exp>-?\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_scalar(field: CyclotomicField, text: str) -> Scalar:
    """Parse the polynomial-in-``z`` rendering produced by ``str(Scalar)``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty scalar literal")
    total = field.zero
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group("coef") and not m.group("z")):
            raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
        if not first and not m.group("sign"):
            raise ValueError(f"missing operator in scalar {text!r} at position {pos}")
        first = False
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        term = field.rational(coef)
        if m.group("z"):
            term = term * field.root_of_unity(int(m.group("exp") or 1))
        total = total + term
        pos = m.end()
    return total
