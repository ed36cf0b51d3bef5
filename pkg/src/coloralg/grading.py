"""Finite abelian grading groups and skew-symmetric bicharacters.

A bicharacter is stored as an integer exponent matrix on the generators of
``Z_{d1} x ... x Z_{dr}``: ``eps(g_i, g_j) = zeta_L^{B[i][j]}`` with
``L = 2 * exponent(Gamma)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .report import ConfigurationError, Report
from .scalars import CyclotomicField, Scalar

Element = tuple[int, ...]


class SignClass(enum.Enum):
    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class GradingGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError(f"invariant factors must be >= 2, got {self.invariant_factors}")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.invariant_factors) if self.invariant_factors else 1

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def element(self, coords) -> Element:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"group element {coords} has wrong length for Z^{self.invariant_factors}")
        return tuple(c % d for c, d in zip(coords, self.invariant_factors))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x: Element) -> Element:
        return tuple(-a % d for a, d in zip(x, self.invariant_factors))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def scale(self, n: int, x: Element) -> Element:
        return tuple(n * a % d for a, d in zip(x, self.invariant_factors))

    def combine(self, coeffs, elements) -> Element:
        """Return sum(coeffs[j] * elements[j])."""
        out = [0] * self.rank
        for c, e in zip(coeffs, elements):
            if c:
                for r in range(self.rank):
                    out[r] += c * e[r]
        return tuple(v % d for v, d in zip(out, self.invariant_factors))

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))


def validate_bicharacter(group: GradingGroup, matrix, denominator: int | None = None) -> Report:
    """Check the generator congruences of an exponent matrix.

    ``matrix`` entries are multiples of ``L / denominator`` (``denominator``
    defaults to ``L = 2 * exponent``).  Reports every violated congruence.
    """
    rep = Report("bicharacter")
    L = 2 * group.exponent
    r = group.rank
    rows = [list(row) for row in matrix]
    if len(rows) != r or any(len(row) != r for row in rows):
        rep.fail("bicharacter.shape", f"exponent matrix must be {r}x{r}")
        return rep
    B = _scale_matrix(rows, L, denominator, rep)
    if B is None:
        return rep
    d = group.invariant_factors
    for i in range(r):
        for j in range(r):
            rep.checked += 1
            if (B[i][j] + B[j][i]) % L:
                rep.fail(
                    "bicharacter.skew",
                    f"eps(g{i},g{j}) * eps(g{j},g{i}) != 1 (exponents {B[i][j]} + {B[j][i]} not 0 mod {L})",
                    (i, j),
                )
            if (d[i] * B[i][j]) % L or (d[j] * B[i][j]) % L:
                rep.fail(
                    "bicharacter.order",
                    f"eps(g{i},g{j}) = zeta_{L}^{B[i][j]} is not killed by the orders {d[i]}, {d[j]}",
                    (i, j),
                )
    if rep.ok:
        bc = Bicharacter(group, tuple(tuple(row) for row in B))
        for lam in group.elements():
            rep.checked += 1
            e = bc.eps_exponent(lam, lam)
            if e not in (0, L // 2):
                rep.fail("bicharacter.diagonal", f"eps(l,l) is not +-1 at l={lam}", lam)
    return rep


def _scale_matrix(rows, L, denominator, rep):
    out = []
    for i, row in enumerate(rows):
        new = []
        for j, v in enumerate(row):
            q = Fraction(v) if denominator is None else Fraction(v) * L / denominator
            if q.denominator != 1:
                rep.fail(
                    "bicharacter.order",
                    f"entry ({i},{j}) = {v}/{denominator} is not a power of zeta_{L}",
                    (i, j),
                )
                return None
            new.append(int(q) % L)
        out.append(new)
    return out


@dataclass(frozen=True)
class Bicharacter:
    """A validated skew-symmetric bicharacter; values live in ``Q(zeta_L)``."""

    group: GradingGroup
    matrix: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return 2 * self.group.exponent

    @property
    def field(self) -> CyclotomicField:
        return CyclotomicField(self.order)

    @classmethod
    def from_exponents(cls, group: GradingGroup, matrix, denominator: int | None = None) -> "Bicharacter":
        rep = validate_bicharacter(group, matrix, denominator)
        if not rep.ok:
            raise ConfigurationError([rep])
        L = 2 * group.exponent
        B = _scale_matrix([list(r) for r in matrix], L, denominator, Report("scratch"))
        return cls(group, tuple(tuple(r) for r in B))

    @classmethod
    def superalgebra(cls) -> "Bicharacter":
        """Gamma = Z_2 with eps(i, j) = (-1)^(ij)."""
        return cls.from_exponents(GradingGroup((2,)), [[1]], denominator=2)

    def eps_exponent(self, lam: Element, mu: Element) -> int:
        B = self.matrix
        total = 0
        for i, li in enumerate(lam):
            if li:
                row = B[i]
                for j, mj in enumerate(mu):
                    if mj:
                        total += li * row[j] * mj
        return total % self.order

    def eps(self, lam: Element, mu: Element) -> Scalar:
        return self.field.root_of_unity(self.eps_exponent(lam, mu))

    def sign_class(self, lam: Element) -> SignClass:
        e = self.eps_exponent(lam, lam)
        if e == 0:
            return SignClass.PLUS
        if 2 * e == self.order:
            return SignClass.MINUS
        raise ValueError(f"eps({lam},{lam}) is not +-1; bicharacter was not validated")

    def is_plus(self, lam: Element) -> bool:
        return self.eps_exponent(lam, lam) == 0

    def plus_part(self) -> list[Element]:
        return [lam for lam in self.group.elements() if self.is_plus(lam)]

    def minus_part(self) -> list[Element]:
        return [lam for lam in self.group.elements() if not self.is_plus(lam)]
