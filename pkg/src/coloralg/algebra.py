"""The color-commutative algebra A(k, G, E, f) and its sparse elements.

Basis vectors are ``E_alpha x^a t^i`` indexed by :class:`BasisIndex`.  The
product of two basis vectors is a single basis vector times a scalar (or
zero when a Grassmann exponent would reach 2), so :meth:`ColorAlgebra.basis_product`
is memoised and everything else is bilinear bookkeeping.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .grading import Element
from .literals import format_coefficient, parse_terms
from .report import Report
from .scalars import Scalar
from .structure import GVec, StructureData


class BasisIndex(NamedTuple):
    alpha: Element
    a: GVec
    i: tuple[int, ...]


class WindowExceeded(ArithmeticError):
    """A computation restricted to a finite window produced an index outside it."""


@dataclass(frozen=True)
class Truncation:
    """A finite set of basis indices: all of Gamma0, a-values from ``a_window``, and |i| <= ``max_t_degree``."""

    max_t_degree: int
    a_window: tuple[GVec, ...]

    @classmethod
    def box(cls, m: int, radius: int, max_t_degree: int) -> "Truncation":
        pts = tuple(tuple(v) for v in itertools.product(range(-radius, radius + 1), repeat=m))
        return cls(max_t_degree, pts)

    def contains(self, idx: BasisIndex) -> bool:
        return sum(idx.i) <= self.max_t_degree and idx.a in self._a_set

    @property
    def _a_set(self):
        s = self.__dict__.get("_aset")
        if s is None:
            s = frozenset(self.a_window)
            object.__setattr__(self, "_aset", s)
        return s


class ColorAlgebra:
    """A = A(k, G, E, f) over Q(zeta_L)."""

    def __init__(self, structure: StructureData):
        self.sd = structure
        self.bichar = structure.bichar
        self.group = structure.group
        self.field = structure.field
        self.ksig = structure.ksig
        self.k = structure.ksig.k
        self.m = structure.G.rank
        zero = self.group.zero
        self.t_colors: tuple[Element, ...] = tuple(self.ksig.t_color(p, zero) for p in range(1, self.k + 1))
        self.bounds = tuple(self.ksig.exponent_bound(p) for p in range(1, self.k + 1))
        eps_e = self.bichar.eps_exponent
        # tt[q][p] = exponent of eps(t_q, t_p)
        self._tt = tuple(tuple(eps_e(tq, tp) for tp in self.t_colors) for tq in self.t_colors)
        self._L = self.bichar.order
        self._products: dict[tuple[BasisIndex, BasisIndex], tuple[Scalar, BasisIndex] | None] = {}
        self._gamma0_set = frozenset(structure.gamma0.elements)
        self.one_index = BasisIndex(zero, structure.G.zero, (0,) * self.k)

    # -- indices -------------------------------------------------------------
    def is_valid_index(self, idx: BasisIndex) -> bool:
        if len(idx.a) != self.m or len(idx.i) != self.k:
            return False
        for e, bound in zip(idx.i, self.bounds):
            if e < 0 or (bound is not None and e > bound):
                return False
        return idx.alpha in self._gamma0_set

    def t_part_color(self, i: tuple[int, ...]) -> Element:
        return self.group.combine(i, self.t_colors)

    def color_of(self, u: BasisIndex) -> Element:
        grp = self.group
        return grp.add(grp.add(u.alpha, self.sd.hat(u.a)), self.t_part_color(u.i))

    def sign_factors(self, i: tuple[int, ...], beta: Element, j: tuple[int, ...]) -> tuple[Scalar, Scalar]:
        """(eps_{i,beta}, eps~_{i,j}) for exponent vectors ``i``, ``j`` and a color ``beta``."""
        L = self._L
        e1 = 0
        for p, ip in enumerate(i):
            if ip:
                e1 += self.bichar.eps_exponent(self.t_colors[p], beta) * ip
        e2 = 0
        for q, iq in enumerate(i):
            if iq:
                row = self._tt[q]
                for p in range(q):
                    if j[p]:
                        e2 += row[p] * iq * j[p]
        root = self.field.root_of_unity
        return root(e1 % L), root(e2 % L)

    def basis_product(self, u: BasisIndex, v: BasisIndex) -> tuple[Scalar, BasisIndex] | None:
        key = (u, v)
        try:
            return self._products[key]
        except KeyError:
            pass
        out = self._basis_product(u, v)
        self._products[key] = out
        return out

    def _basis_product(self, u: BasisIndex, v: BasisIndex):
        ij = tuple(x + y for x, y in zip(u.i, v.i))
        for e, bound in zip(ij, self.bounds):
            if bound is not None and e > bound:
                return None
        sd = self.sd
        grp = self.group
        eps_e = self.bichar.eps_exponent
        L = self._L
        alpha, a, i = u
        beta, b, j = v
        hat_a, hat_b = sd.hat(a), sd.hat(b)
        # eps_{i,beta} eps_{i,hat b}: move t^i past E_beta x^b
        exp = eps_e(self.t_part_color(i), grp.add(beta, hat_b))
        # eps~_{i,j}
        for q, iq in enumerate(i):
            if iq:
                row = self._tt[q]
                for p in range(q):
                    if j[p]:
                        exp += row[p] * iq * j[p]
        # eps(hat a, beta): move x^a past E_beta
        exp += eps_e(hat_a, beta)
        exp += sd.f_exponent(a, b)
        theta = sd.theta(a, b)
        ab_alpha = grp.add(alpha, beta)
        coef = self.field.root_of_unity(exp % L)
        e1 = sd.e(alpha, beta)
        e2 = sd.e(ab_alpha, theta)
        if e1 != 1:
            coef = coef * e1
        if e2 != 1:
            coef = coef * e2
        return coef, BasisIndex(grp.add(ab_alpha, theta), tuple(x + y for x, y in zip(a, b)), ij)

    # -- elements ------------------------------------------------------------
    def element(self, terms=None) -> "AlgebraElement":
        return AlgebraElement(self, terms or {})

    def basis(self, idx: BasisIndex, coef=1) -> "AlgebraElement":
        return AlgebraElement(self, {idx: self.field.coerce(coef)})

    def one(self) -> "AlgebraElement":
        return self.basis(self.one_index)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def index(self, alpha=None, a=None, i=None) -> BasisIndex:
        alpha = self.group.zero if alpha is None else self.group.element(alpha)
        a = self.sd.G.zero if a is None else tuple(int(x) for x in a)
        i = (0,) * self.k if i is None else tuple(int(x) for x in i)
        return BasisIndex(alpha, a, i)

    def t(self, p: int) -> "AlgebraElement":
        """The variable t_p (1-based)."""
        i = [0] * self.k
        i[p - 1] = 1
        return self.basis(self.index(i=i))

    def mul(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        out: dict[BasisIndex, Scalar] = {}
        bp = self.basis_product
        for u, cu in x.terms.items():
            for v, cv in y.terms.items():
                r = bp(u, v)
                if r is None:
                    continue
                c, w = r
                val = cu * cv * c
                prev = out.get(w)
                if prev is not None:
                    val = prev + val
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
        return AlgebraElement(self, out, _trusted=True)

    def invert_root_vector(self, w: BasisIndex) -> "AlgebraElement":
        """Inverse of a root vector E_alpha x^a (exponent vector zero)."""
        if any(w.i):
            raise ValueError(f"{self.render_index(w)} has a t-part and is not invertible")
        grp = self.group
        cand = BasisIndex(grp.neg(w.alpha), self.sd.G.neg(w.a), w.i)
        r = self.basis_product(cand, w)
        if r is None or r[1] != self.one_index:
            raise ArithmeticError(f"E_(-alpha) x^(-a) * {self.render_index(w)} is not a multiple of 1")
        return self.basis(cand, r[0].inverse())

    # -- enumeration -------------------------------------------------------
    def exponent_vectors(self, max_degree: int) -> list[tuple[int, ...]]:
        out = []

        def rec(p, remaining, acc):
            if p == self.k:
                out.append(tuple(acc))
                return
            bound = self.bounds[p]
            top = remaining if bound is None else min(bound, remaining)
            for e in range(top + 1):
                acc.append(e)
                rec(p + 1, remaining - e, acc)
                acc.pop()

        rec(0, max_degree, [])
        return out

    def window(self, trunc: Truncation) -> list[BasisIndex]:
        exps = self.exponent_vectors(trunc.max_t_degree)
        return sorted(
            BasisIndex(al, tuple(a), i)
            for al in self.sd.gamma0.elements
            for a in trunc.a_window
            for i in exps
        )

    def default_truncation(self, radius: int = 1, max_t_degree: int = 2) -> Truncation:
        return Truncation.box(self.m, radius, max_t_degree)

    # -- literals ------------------------------------------------------------
    def render_index(self, idx: BasisIndex) -> str:
        parts = []
        if not self.sd.gamma0.is_trivial and any(idx.alpha):
            parts.append("E[" + ",".join(map(str, idx.alpha)) + "]")
        if self.m and any(idx.a):
            parts.append("x[" + ",".join(map(str, idx.a)) + "]")
        if any(idx.i):
            parts.append("t[" + ",".join(map(str, idx.i)) + "]")
        return " ".join(parts) or "1"

    def index_from_factors(self, factors: dict) -> BasisIndex:
        unknown = set(factors) - {"E", "x", "t"}
        if unknown:
            raise ValueError(f"unknown factor(s) {sorted(unknown)} in algebra literal")
        i = factors.get("t", (0,) * self.k)
        if len(i) == self.k - self.ksig.k1:
            i = (0,) * self.ksig.k1 + tuple(i)
        idx = BasisIndex(
            self.group.element(factors.get("E", self.group.zero)),
            tuple(factors.get("x", self.sd.G.zero)),
            tuple(i),
        )
        if not self.is_valid_index(idx):
            raise ValueError(f"{factors} does not name a basis vector of A")
        return idx

    def parse(self, text: str) -> "AlgebraElement":
        out = self.zero()
        for coef, factors in parse_terms(self.field, text):
            out = out + self.basis(self.index_from_factors(factors), coef)
        return out


class AlgebraElement:
    """A finite linear combination of basis vectors; no stored zero coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: ColorAlgebra, terms, _trusted: bool = False):
        self.algebra = algebra
        if _trusted:
            self.terms = terms
        else:
            coerce = algebra.field.coerce
            self.terms = {idx: c for idx, c in ((i, coerce(v)) for i, v in dict(terms).items()) if c}

    # arithmetic
    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for idx, c in other.terms.items():
            v = out.get(idx)
            v = c if v is None else v + c
            if v:
                out[idx] = v
            else:
                out.pop(idx, None)
        return AlgebraElement(self.algebra, out, _trusted=True)

    def __neg__(self):
        return AlgebraElement(self.algebra, {i: -c for i, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = self.algebra.field.coerce(c)
        if not c:
            return self.algebra.zero()
        return AlgebraElement(self.algebra, {i: v * c for i, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[BasisIndex, Scalar]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, idx: BasisIndex) -> Scalar:
        return self.terms.get(idx, self.algebra.field.zero)

    # grading
    def colors(self) -> set[Element]:
        return {self.algebra.color_of(idx) for idx in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.colors()) <= 1

    @property
    def color(self) -> Element:
        cs = self.colors()
        if len(cs) != 1:
            raise ValueError("color of a zero or inhomogeneous element")
        return next(iter(cs))

    def homogeneous_components(self) -> dict[Element, "AlgebraElement"]:
        out: dict[Element, dict] = {}
        for idx, c in self.terms.items():
            out.setdefault(self.algebra.color_of(idx), {})[idx] = c
        return {col: AlgebraElement(self.algebra, t, _trusted=True) for col, t in out.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        alg = self.algebra
        out = []
        for n, (idx, c) in enumerate(sorted(self.terms.items())):
            joiner, prefix = format_coefficient(c, n == 0)
            mono = alg.render_index(idx)
            if mono == "1":
                body = prefix.strip() or "1"
            else:
                body = prefix + mono
            out.append(joiner + body)
        return "".join(out)

    __repr__ = __str__


# -- verification sweeps ----------------------------------------------------

def check_associativity(alg: ColorAlgebra, indices: Iterable[BasisIndex]) -> Report:
    """(uv)w == u(vw) for every triple of basis vectors drawn from ``indices``."""
    rep = Report("associativity")
    idx = list(indices)
    bp = alg.basis_product
    for u in idx:
        for v in idx:
            uv = bp(u, v)
            for w in idx:
                rep.checked += 1
                vw = bp(v, w)
                left = None
                if uv is not None:
                    r = bp(uv[1], w)
                    if r is not None:
                        left = (uv[0] * r[0], r[1])
                right = None
                if vw is not None:
                    r = bp(u, vw[1])
                    if r is not None:
                        right = (vw[0] * r[0], r[1])
                if left != right:
                    rep.fail(
                        "algebra.associativity",
                        f"(uv)w != u(vw) for u={alg.render_index(u)}, v={alg.render_index(v)}, w={alg.render_index(w)}",
                        (u, v, w),
                    )
    return rep


def check_color_commutativity(alg: ColorAlgebra, indices: Iterable[BasisIndex]) -> Report:
    """uv == eps(color u, color v) vu on basis pairs, and the product has the summed color."""
    rep = Report("color_commutativity")
    idx = list(indices)
    bp = alg.basis_product
    grp = alg.group
    for u in idx:
        cu = alg.color_of(u)
        for v in idx:
            rep.checked += 1
            cv = alg.color_of(v)
            uv, vu = bp(u, v), bp(v, u)
            if (uv is None) != (vu is None) or (
                uv is not None and (uv[1] != vu[1] or uv[0] != alg.bichar.eps(cu, cv) * vu[0])
            ):
                rep.fail(
                    "algebra.color_commutativity",
                    f"uv != eps(u,v) vu for u={alg.render_index(u)}, v={alg.render_index(v)}",
                    (u, v),
                )
            if uv is not None and alg.color_of(uv[1]) != grp.add(cu, cv):
                rep.fail("algebra.grading", f"product of {u} and {v} has the wrong color", (u, v))
    return rep


def check_zero_square(alg: ColorAlgebra, indices: Iterable[BasisIndex]) -> Report:
    """u*u == 0 for every basis vector of a Gamma_- color."""
    rep = Report("zero_square")
    for u in indices:
        if not alg.bichar.is_plus(alg.color_of(u)):
            rep.checked += 1
            if alg.basis_product(u, u) is not None:
                rep.fail("algebra.zero_square", f"u^2 != 0 for odd-colored u={alg.render_index(u)}", u)
    return rep
