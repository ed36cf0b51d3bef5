"""Weyl-type operators x^{a,i} d^mu on A, and the Witt-type subspace A d_p.

A monomial is ``(u, mu)`` for a basis index ``u`` of A and an exponent vector
``mu`` with d^mu = d_1^{mu_1} ... d_k^{mu_k}; it acts by applying d_k first,
then multiplying by u on the left.  :meth:`WeylAlgebra.compose` reaches normal
order with the operator identity ``d o L_v = L_{d(v)} + eps(d, v) L_v o d``.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple

from . import derivations as der
from .algebra import AlgebraElement, BasisIndex, ColorAlgebra, WindowExceeded
from .grading import Element
from .literals import format_coefficient, parse_terms
from .scalars import Scalar

Mu = tuple[int, ...]


class WeylMonomial(NamedTuple):
    u: BasisIndex
    mu: Mu


class WeylAlgebra:
    """The associative algebra A (x) F[D] of differential operators on A."""

    def __init__(self, alg: ColorAlgebra):
        self.alg = alg
        self.field = alg.field
        self.k = alg.k
        self.ders = der.canonical_derivations(alg)
        grp = alg.group
        self.d_colors: tuple[Element, ...] = tuple(grp.neg(c) for c in alg.t_colors)
        eps_e = alg.bichar.eps_exponent
        self._dd = tuple(tuple(eps_e(a, b) for b in self.d_colors) for a in self.d_colors)
        self.mu_bounds = tuple(1 if not alg.bichar.is_plus(c) else None for c in self.d_colors)
        self.zero_mu: Mu = (0,) * self.k
        self._push: dict[tuple[Mu, BasisIndex], dict[tuple[BasisIndex, Mu], Scalar]] = {}
        self._mono: dict[tuple[WeylMonomial, WeylMonomial], dict[WeylMonomial, Scalar]] = {}
        self._colors: dict[WeylMonomial, Element] = {}

    # -- monomials -------------------------------------------------------------
    def valid_mu(self, mu: Mu) -> bool:
        return len(mu) == self.k and all(m >= 0 and (b is None or m <= b) for m, b in zip(mu, self.mu_bounds))

    def mono_color(self, m: WeylMonomial) -> Element:
        c = self._colors.get(m)
        if c is None:
            grp = self.alg.group
            c = grp.add(self.alg.color_of(m.u), grp.combine(m.mu, self.d_colors))
            self._colors[m] = c
        return c

    def d_product(self, mu: Mu, nu: Mu) -> tuple[Scalar, Mu] | None:
        """d^mu d^nu = sign * d^(mu+nu), or None when an odd d would be squared."""
        s = tuple(x + y for x, y in zip(mu, nu))
        if not self.valid_mu(s):
            return None
        e = 0
        for p, mp in enumerate(mu):
            if mp:
                row = self._dd[p]
                for q in range(p):
                    if nu[q]:
                        e += row[q] * mp * nu[q]
        return self.field.root_of_unity(e), s

    def _push_through(self, mu: Mu, v: BasisIndex) -> dict[tuple[BasisIndex, Mu], Scalar]:
        """d^mu o L_v as a normal-ordered sum of L_y o d^rho."""
        key = (mu, v)
        hit = self._push.get(key)
        if hit is not None:
            return hit
        out: dict[tuple[BasisIndex, Mu], Scalar] = {}
        if not any(mu):
            out[(v, mu)] = self.field.one
        else:
            q = max(p for p, m in enumerate(mu) if m)
            rest = list(mu)
            rest[q] -= 1
            rest = tuple(rest)
            d = self.ders[q]
            alg = self.alg
            # d^rest o L_{d_q(v)}
            for c, w in der.apply_basis(alg, d, v):
                for (y, rho), c2 in self._push_through(rest, w).items():
                    _acc(out, (y, rho), c * c2)
            # eps(d_q, v) d^rest o L_v o d_q
            sign = alg.bichar.eps(self.d_colors[q], alg.color_of(v))
            unit = [0] * self.k
            unit[q] = 1
            unit = tuple(unit)
            for (y, rho), c2 in self._push_through(rest, v).items():
                r = self.d_product(rho, unit)
                if r is not None:
                    _acc(out, (y, r[1]), sign * c2 * r[0])
        self._push[key] = out
        return out

    def mono_compose(self, m1: WeylMonomial, m2: WeylMonomial) -> dict[WeylMonomial, Scalar]:
        key = (m1, m2)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        out: dict[WeylMonomial, Scalar] = {}
        bp = self.alg.basis_product
        for (y, rho), c in self._push_through(m1.mu, m2.u).items():
            r = bp(m1.u, y)
            if r is None:
                continue
            r2 = self.d_product(rho, m2.mu)
            if r2 is None:
                continue
            _acc(out, WeylMonomial(r[1], r2[1]), c * r[0] * r2[0])
        self._mono[key] = out
        return out

    # -- elements ------------------------------------------------------------
    def element(self, terms=None) -> "WeylElement":
        return WeylElement(self, terms or {})

    def monomial(self, u: BasisIndex, mu: Mu | None = None, coef=1) -> "WeylElement":
        mu = self.zero_mu if mu is None else tuple(mu)
        if not self.valid_mu(mu):
            raise ValueError(f"d-exponent {mu} is not allowed")
        return WeylElement(self, {WeylMonomial(u, mu): self.field.coerce(coef)})

    def from_algebra(self, x: AlgebraElement) -> "WeylElement":
        return WeylElement(self, {WeylMonomial(u, self.zero_mu): c for u, c in x.terms.items()}, _trusted=True)

    def one(self) -> "WeylElement":
        return self.monomial(self.alg.one_index)

    def d(self, p: int) -> "WeylElement":
        mu = [0] * self.k
        mu[p - 1] = 1
        return self.monomial(self.alg.one_index, tuple(mu))

    def compose(self, w1: "WeylElement", w2: "WeylElement") -> "WeylElement":
        out: dict[WeylMonomial, Scalar] = {}
        for m1, c1 in w1.terms.items():
            for m2, c2 in w2.terms.items():
                c = c1 * c2
                for m, c3 in self.mono_compose(m1, m2).items():
                    _acc(out, m, c * c3)
        return WeylElement(self, out, _trusted=True)

    def act(self, w: "WeylElement", x: AlgebraElement) -> AlgebraElement:
        """Apply the operator w to x: iterated derivations (d_k first), then left multiplication."""
        alg = self.alg
        out = alg.zero()
        for m, c in w.terms.items():
            y = x
            for p in range(self.k - 1, -1, -1):
                for _ in range(m.mu[p]):
                    y = der.apply(alg, self.ders[p], y)
            out = out + (alg.basis(m.u, c) * y)
        return out

    def bracket(self, w1: "WeylElement", w2: "WeylElement") -> "WeylElement":
        """Color commutator, extended bilinearly over homogeneous components."""
        out = self.element()
        eps = self.alg.bichar.eps
        for c1, x in w1.homogeneous_components().items():
            for c2, y in w2.homogeneous_components().items():
                out = out + self.compose(x, y) - self.compose(y, x).scale(eps(c1, c2))
        return out

    # -- finite bases ------------------------------------------------------------
    def mus(self, max_degree: int | None = None) -> list[Mu]:
        """All allowed d-exponents; ``max_degree`` bounds the unbounded slots."""
        ranges = []
        for b in self.mu_bounds:
            if b is None:
                if max_degree is None:
                    raise WindowExceeded("d-exponents are unbounded; give max_degree")
                ranges.append(range(max_degree + 1))
            else:
                ranges.append(range(b + 1))
        out = [mu for mu in itertools.product(*ranges) if max_degree is None or sum(mu) <= max_degree]
        return sorted(out)

    # -- literals ------------------------------------------------------------
    def render_monomial(self, m: WeylMonomial) -> str:
        a = self.alg.render_index(m.u)
        if not any(m.mu):
            return a
        dpart = "d[" + ",".join(map(str, m.mu)) + "]"
        return dpart if a == "1" else f"{a} {dpart}"

    def parse(self, text: str) -> "WeylElement":
        out = self.element()
        for coef, factors in parse_terms(self.field, text):
            mu = factors.pop("d", self.zero_mu)
            if len(mu) != self.k or not self.valid_mu(tuple(mu)):
                raise ValueError(f"d[{','.join(map(str, mu))}] is not an allowed d-exponent")
            u = self.alg.index_from_factors(factors)
            out = out + self.monomial(u, tuple(mu), coef)
        return out


class WeylElement:
    """Sparse normal-ordered combination of monomials x^{a,i} d^mu."""

    __slots__ = ("weyl", "terms")

    def __init__(self, weyl: WeylAlgebra, terms, _trusted: bool = False):
        self.weyl = weyl
        if _trusted:
            self.terms = terms
        else:
            co = weyl.field.coerce
            self.terms = {WeylMonomial(*m): c for m, c in ((m, co(v)) for m, v in dict(terms).items()) if c}

    def __add__(self, other: "WeylElement") -> "WeylElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return WeylElement(self.weyl, out, _trusted=True)

    def __neg__(self):
        return WeylElement(self.weyl, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WeylElement":
        c = self.weyl.field.coerce(c)
        if not c:
            return self.weyl.element()
        return WeylElement(self.weyl, {m: v * c for m, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return self.weyl.compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[WeylMonomial, Scalar]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, m) -> Scalar:
        return self.terms.get(WeylMonomial(*m), self.weyl.field.zero)

    def colors(self) -> set[Element]:
        return {self.weyl.mono_color(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.colors()) <= 1

    @property
    def color(self) -> Element:
        cs = self.colors()
        if len(cs) != 1:
            raise ValueError("color of a zero or inhomogeneous operator")
        return next(iter(cs))

    def homogeneous_components(self) -> dict[Element, "WeylElement"]:
        out: dict[Element, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(self.weyl.mono_color(m), {})[m] = c
        return {col: WeylElement(self.weyl, t, _trusted=True) for col, t in out.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for n, (m, c) in enumerate(sorted(self.terms.items())):
            joiner, prefix = format_coefficient(c, n == 0)
            mono = self.weyl.render_monomial(m)
            body = (prefix.strip() or "1") if mono == "1" else prefix + mono
            out.append(joiner + body)
        return "".join(out)

    __repr__ = __str__


def _acc(out: dict, key, c):
    prev = out.get(key)
    if prev is not None:
        c = prev + c
    if c:
        out[key] = c
    else:
        out.pop(key, None)
