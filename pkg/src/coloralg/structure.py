"""Structure data of A(k, G, E, f).

``KSignature`` fixes the four derivation blocks and the colors of the
t-variables, ``GroupG`` the lattice of eigenvalues with its color map
(``hat``), and ``GammaZero`` the twisted group algebra E = F[Gamma0].
``StructureData`` bundles them with the canonical cocycle ``f``.

With the color map a group homomorphism, theta vanishes identically; the
general formulas are still written against :meth:`StructureData.theta` and
:func:`validate_f_cocycle` accepts arbitrary finite theta tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np
import sympy

from .grading import Bicharacter, Element, GradingGroup, SignClass
from .report import ConfigurationError, Report
from .scalars import Scalar

GVec = tuple[int, ...]


@dataclass(frozen=True)
class KSignature:
    k1: int
    k2: int
    k3: int
    k4: int
    t_colors: tuple[Element, ...] = ()

    @property
    def k(self) -> int:
        return self.k1 + self.k2 + self.k3 + self.k4

    @property
    def eigen_rank(self) -> int:
        """k1 + k2: the number of coordinates carried by G."""
        return self.k1 + self.k2

    def t_color(self, p: int, zero: Element) -> Element:
        """Color of t_p for 1-based ``p`` (t_p = 0 for p <= k1)."""
        if p <= self.k1:
            return zero
        return self.t_colors[p - self.k1 - 1]

    def block(self, p: int) -> str:
        if p <= self.k1:
            return "grading"
        if p <= self.k1 + self.k2:
            return "mixed"
        if p <= self.k1 + self.k2 + self.k3:
            return "plus"
        return "minus"

    def is_grassmann(self, p: int) -> bool:
        return p > self.k1 + self.k2 + self.k3

    def exponent_bound(self, p: int) -> int | None:
        """Largest allowed exponent of t_p (None = unbounded)."""
        if p <= self.k1:
            return 0
        if p > self.k1 + self.k2 + self.k3:
            return 1
        return None


def validate_ksignature(ks: KSignature, bichar: Bicharacter) -> Report:
    rep = Report("k_signature")
    grp = bichar.group
    if min(ks.k1, ks.k2, ks.k3, ks.k4) < 0:
        rep.fail("k.nonnegative", f"k = {ks.k1, ks.k2, ks.k3, ks.k4} has a negative entry")
        return rep
    if ks.k <= 0:
        rep.fail("k.positive", "k = k1 + k2 + k3 + k4 must be positive")
    n_t = ks.k2 + ks.k3 + ks.k4
    if len(ks.t_colors) != n_t:
        rep.fail("k.t_colors", f"expected {n_t} t-colors (k2+k3+k4), got {len(ks.t_colors)}")
        return rep
    if ks.k4 > 0 and not bichar.minus_part():
        rep.fail("k.k4_requires_minus", "k4 > 0 but Gamma_- is empty; k4 must be 0")
    for p in range(ks.k1 + 1, ks.k + 1):
        rep.checked += 1
        c = ks.t_color(p, grp.zero)
        block = ks.block(p)
        if block == "mixed" and c != grp.zero:
            rep.fail("k.t_colors", f"t_{p} lies in the k2 block and must have color 0, got {c}", p)
        elif block == "plus" and bichar.sign_class(c) is not SignClass.PLUS:
            rep.fail("k.t_colors", f"t_{p} lies in the k3 block and must have a Gamma_+ color, got {c}", p)
        elif block == "minus" and bichar.sign_class(c) is not SignClass.MINUS:
            rep.fail("k.t_colors", f"t_{p} lies in the k4 block and must have a Gamma_- color, got {c}", p)
    return rep


@dataclass(frozen=True)
class GroupG:
    """Free abelian G = Z^m embedded in Q^(k1+k2) by its generators."""

    generators: tuple[tuple[Fraction, ...], ...]
    hat_images: tuple[Element, ...]
    eigen_rank: int

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def zero(self) -> GVec:
        return (0,) * self.rank

    def coords(self, a: GVec) -> tuple[Fraction, ...]:
        """The eigenvalue vector (a_1, ..., a_{k1+k2}) of ``a``."""
        out = [Fraction(0)] * self.eigen_rank
        for c, gen in zip(a, self.generators):
            if c:
                for p in range(self.eigen_rank):
                    out[p] += c * gen[p]
        return tuple(out)

    def add(self, a: GVec, b: GVec) -> GVec:
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a: GVec) -> GVec:
        return tuple(-x for x in a)


def validate_group_g(G: GroupG, bichar: Bicharacter) -> Report:
    rep = Report("group_G")
    n = G.eigen_rank
    if n == 0:
        if G.rank:
            rep.fail("G.trivial", "k1 + k2 = 0 forces G = {0}, but generators were given")
        return rep
    if any(len(g) != n for g in G.generators):
        rep.fail("G.shape", f"every generator of G must have {n} = k1+k2 coordinates")
        return rep
    if len(G.hat_images) != G.rank:
        rep.fail("hat.shape", f"{G.rank} generators but {len(G.hat_images)} hat images")
        return rep
    rank = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in g] for g in G.generators]).rank() if G.rank else 0
    rep.checked += 1
    if rank < n:
        rep.fail(
            "G.nondegenerate",
            f"G must contain an F-basis of F^{n}; generators span only dimension {rank}",
        )
    if rank < G.rank:
        rep.fail("G.free", f"the {G.rank} generators are linearly dependent, so Z^{G.rank} -> G is not injective")
    for j, h in enumerate(G.hat_images):
        rep.checked += 1
        if bichar.sign_class(h) is not SignClass.PLUS:
            rep.fail("hat.plus", f"hat image of generator {j} is {h}, which is not in Gamma_+ (root vectors must be invertible)", j)
    return rep


@dataclass(frozen=True)
class GammaZero:
    """The subgroup Gamma0 of Gamma_+ together with its e-table."""

    elements: tuple[Element, ...]
    e_table: Mapping[tuple[Element, Element], Scalar] = field(compare=False)

    @classmethod
    def trivial(cls, bichar: Bicharacter) -> "GammaZero":
        z = bichar.group.zero
        return cls((z,), {(z, z): bichar.field.one})

    @classmethod
    def from_generators(cls, bichar: Bicharacter, generators) -> "GammaZero":
        """Gamma0 generated by ``generators`` with the ordered-product e-table.

        The generated subgroup must be the internal direct product of the
        cyclic groups of the generators, so each element has unique
        coordinates; e(a, b) = prod_{i<j} eps(h_i, h_j)^(a_i b_j).
        """
        grp = bichar.group
        gens = [grp.element(h) for h in generators]
        orders = [_element_order(grp, h) for h in gens]
        coords: dict[Element, tuple[int, ...]] = {}
        for c in itertools.product(*(range(o) for o in orders)):
            el = grp.combine(c, gens)
            if el in coords:
                raise ConfigurationError([_single("gamma0.generators", "Gamma0 generators are not independent; give an explicit e_table")])
            coords[el] = c
        L = bichar.order
        table = {}
        for a, ca in coords.items():
            for b, cb in coords.items():
                e = 0
                for i in range(len(gens)):
                    for j in range(i + 1, len(gens)):
                        e += bichar.eps_exponent(gens[i], gens[j]) * ca[i] * cb[j]
                table[(a, b)] = bichar.field.root_of_unity(e % L)
        return cls(tuple(sorted(coords)), table)

    def e(self, alpha: Element, beta: Element) -> Scalar:
        return self.e_table[(alpha, beta)]

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1


def _single(rule, message):
    rep = Report(rule.split(".")[0])
    rep.fail(rule, message)
    return rep


def _element_order(grp: GradingGroup, h: Element) -> int:
    n, x = 1, h
    while x != grp.zero:
        x = grp.add(x, h)
        n += 1
    return n


def validate_gamma_zero(gz: GammaZero, bichar: Bicharacter) -> Report:
    """Subgroup of Gamma_+, complete nonzero table, and the three e-identities, exhaustively."""
    rep = Report("gamma0_e_table")
    grp = bichar.group
    els = list(gz.elements)
    S = set(els)
    if grp.zero not in S:
        rep.fail("gamma0.subgroup", "Gamma0 must contain 0")
    for a in els:
        if bichar.sign_class(a) is not SignClass.PLUS:
            rep.fail("gamma0.plus", f"Gamma0 must lie in Gamma_+, but {a} is in Gamma_-", a)
        for b in els:
            if grp.add(a, b) not in S:
                rep.fail("gamma0.subgroup", f"Gamma0 not closed: {a} + {b} missing", (a, b))
    if not rep.ok:
        return rep
    for a in els:
        for b in els:
            val = gz.e_table.get((a, b))
            if val is None or not val:
                rep.fail("e.table", f"e({a},{b}) missing or zero", (a, b))
    if not rep.ok:
        return rep
    e = gz.e
    for a in els:
        rep.checked += 1
        if e(a, grp.zero) != 1:
            rep.fail("e.normalization", f"e(a,0) = 1 fails at a={a}", a)
        for b in els:
            rep.checked += 1
            if e(a, b) != bichar.eps(a, b) * e(b, a):
                rep.fail("e.symmetry", f"e(a,b) = eps(a,b) e(b,a) fails at (a,b)=({a},{b})", (a, b))
    for a, b, c in itertools.product(els, repeat=3):
        rep.checked += 1
        ab, bc = grp.add(a, b), grp.add(b, c)
        if e(a, b) * e(ab, c) != e(a, bc) * e(b, c):
            rep.fail(
                "e.cocycle",
                f"e(a,b) e(a+b,c) = e(a,b+c) e(b,c) fails at (a,b,c)=({a},{b},{c})",
                (a, b, c),
            )
    return rep


@dataclass(frozen=True)
class StructureData:
    """Everything needed to multiply in A(k, G, E, f)."""

    bichar: Bicharacter
    ksig: KSignature
    G: GroupG
    gamma0: GammaZero

    def __post_init__(self):
        L = self.bichar.order
        h = self.G.hat_images
        m = len(h)
        f_exp = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                f_exp[i][j] = self.bichar.eps_exponent(h[i], h[j])
        object.__setattr__(self, "_f_exp", tuple(tuple(r) for r in f_exp))
        object.__setattr__(self, "_L", L)

    @property
    def group(self) -> GradingGroup:
        return self.bichar.group

    @property
    def field(self):
        return self.bichar.field

    def validate(self) -> list[Report]:
        reports = [
            validate_ksignature(self.ksig, self.bichar),
            validate_group_g(self.G, self.bichar),
            validate_gamma_zero(self.gamma0, self.bichar),
        ]
        return reports

    def check(self) -> "StructureData":
        bad = [r for r in self.validate() if not r.ok]
        if bad:
            raise ConfigurationError(bad)
        return self

    # -- the color map and its cocycles --------------------------------------
    def hat(self, a: GVec) -> Element:
        return self.group.combine(a, self.G.hat_images)

    def theta(self, a: GVec, b: GVec) -> Element:
        grp = self.group
        return grp.sub(grp.add(self.hat(a), self.hat(b)), self.hat(self.G.add(a, b)))

    def f_exponent(self, a: GVec, b: GVec) -> int:
        fe = self._f_exp
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = fe[i]
                for j in range(i + 1, len(b)):
                    if b[j]:
                        total += row[j] * ai * b[j]
        return total % self._L

    def canonical_f(self, a: GVec, b: GVec) -> Scalar:
        """Ordered bimultiplicative square root of eps(hat a, hat b)."""
        return self.field.root_of_unity(self.f_exponent(a, b))

    f = canonical_f

    def e(self, alpha: Element, beta: Element) -> Scalar:
        return self.gamma0.e(alpha, beta)


FTable = Callable[[GVec, GVec], Scalar] | Mapping[tuple[GVec, GVec], Scalar]


def validate_f_cocycle(
    f: FTable,
    sample,
    *,
    hat: Callable[[GVec], Element],
    bichar: Bicharacter,
    theta=None,
    e=None,
) -> Report:
    """Check the f-symmetry/normalization on all pairs and the f-cocycle on all triples of ``sample``.

    ``f`` and ``theta`` may be callables or finite tables; triples whose
    required values are missing from a table are counted in
    ``details['skipped']``.  ``e`` defaults to the trivial table and
    ``theta`` to zero.
    """
    rep = Report("f_cocycle")
    grp = bichar.group
    field_ = bichar.field
    S = [tuple(int(x) for x in a) for a in sample]
    if not S:
        return rep
    m = len(S[0])
    zero_g = (0,) * m
    zero_gamma = grp.zero

    def lookup(fn, key):
        if callable(fn):
            return fn(*key)
        return fn.get(key)

    fval = (lambda a, b: lookup(f, (a, b)))
    thval = (lambda a, b: zero_gamma) if theta is None else (lambda a, b: lookup(theta, (a, b)))
    eval_ = (lambda x, y: field_.one) if e is None else e

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    # symmetry and normalization on pairs
    for a in S:
        v = fval(a, zero_g)
        if v is not None:
            rep.checked += 1
            if v != 1:
                rep.fail("f.normalization", f"f(a,0) = 1 fails at a={a}", a)
        for b in S:
            ab, ba = fval(a, b), fval(b, a)
            if ab is None or ba is None:
                continue
            rep.checked += 1
            if ab != bichar.eps(hat(a), hat(b)) * ba:
                rep.fail("f.symmetry", f"f(a,b) = eps(hat a, hat b) f(b,a) fails at (a,b)=({a},{b})", (a, b))

    # cocycle on triples: index sums and gather every needed value once
    n = len(S)
    sums: dict[GVec, int] = {}
    sum_idx = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(S):
        for j, b in enumerate(S):
            sum_idx[i, j] = sums.setdefault(add(a, b), len(sums))
    T = list(sums)
    gamma0_idx: dict[Element, int] = {}

    def th_index(a, b):
        t = thval(a, b)
        if t is None:
            return -1
        return gamma0_idx.setdefault(t, len(gamma0_idx))

    f_SS = [[fval(a, b) for b in S] for a in S]
    f_TS = [[fval(t, c) for c in S] for t in T]
    f_ST = [[fval(a, t) for t in T] for a in S]
    th_SS = np.array([[th_index(a, b) for b in S] for a in S], dtype=np.int64).reshape(n, n)
    th_TS = np.array([[th_index(t, c) for c in S] for t in T], dtype=np.int64).reshape(len(T), n)
    th_ST = np.array([[th_index(a, t) for t in T] for a in S], dtype=np.int64).reshape(n, len(T))
    g0 = list(gamma0_idx)
    e_tab = [[eval_(x, y) for y in g0] for x in g0]
    eps_hat = [[bichar.eps(hat(a), t) for t in g0] for a in S]

    values = [v for tab in (f_SS, f_TS, f_ST, e_tab, eps_hat) for row in tab for v in row if v is not None]
    exps = [field_.root_exponent(v) for v in values]
    if values and all(x is not None for x in exps):
        _cocycle_exponents(rep, S, field_.order, sum_idx, f_SS, f_TS, f_ST, th_SS, th_TS, th_ST, e_tab, eps_hat, field_)
    else:
        _cocycle_scalars(rep, S, sum_idx, f_SS, f_TS, f_ST, th_SS, th_TS, th_ST, e_tab, eps_hat)
    return rep


def _exp_array(tab, field_, shape):
    out = np.full(shape, -1, dtype=np.int64)
    for i, row in enumerate(tab):
        for j, v in enumerate(row):
            if v is not None:
                out[i, j] = field_.root_exponent(v)
    return out


def _cocycle_exponents(rep, S, L, sum_idx, f_SS, f_TS, f_ST, th_SS, th_TS, th_ST, e_tab, eps_hat, field_):
    n = len(S)
    nT = len(f_TS)
    g = max(len(e_tab), 1)
    FSS = _exp_array(f_SS, field_, (n, n))
    FTS = _exp_array(f_TS, field_, (nT, n))
    FST = _exp_array(f_ST, field_, (n, nT))
    E = _exp_array(e_tab, field_, (g, g))
    EPS = _exp_array(eps_hat, field_, (n, g))
    A = np.arange(n)[:, None, None]
    C = np.arange(n)[None, None, :]
    ab = np.broadcast_to(sum_idx[:, :, None], (n, n, n))
    bc = np.broadcast_to(sum_idx[None, :, :], (n, n, n))
    t_ab = np.broadcast_to(th_SS[:, :, None], (n, n, n))
    t_abc = th_TS[ab, C]
    t_bc = np.broadcast_to(th_SS[None, :, :], (n, n, n))
    t_a_bc = th_ST[A, bc]
    parts_l = [E[t_ab, t_abc], np.broadcast_to(FSS[:, :, None], (n, n, n)), FTS[ab, C]]
    parts_r = [EPS[A, t_bc], E[t_bc, t_a_bc], np.broadcast_to(FSS[None, :, :], (n, n, n)), FST[A, bc]]
    missing = (t_ab < 0) | (t_abc < 0) | (t_bc < 0) | (t_a_bc < 0)
    for p in parts_l + parts_r:
        missing = missing | (p < 0)
    lhs = sum(parts_l) % L
    rhs = sum(parts_r) % L
    valid = ~missing
    rep.checked += int(valid.sum())
    rep.details["skipped"] = int(missing.sum())
    bad = np.argwhere(valid & (lhs != rhs))
    for i, j, k in bad[:50]:
        a, b, c = S[i], S[j], S[k]
        rep.fail("f.cocycle", f"f-cocycle identity fails at (a,b,c)=({a},{b},{c})", (a, b, c))
    if len(bad) > 50:
        rep.details["further_failures"] = int(len(bad) - 50)


def _cocycle_scalars(rep, S, sum_idx, f_SS, f_TS, f_ST, th_SS, th_TS, th_ST, e_tab, eps_hat):
    n = len(S)
    skipped = 0
    for i in range(n):
        for j in range(n):
            ab = sum_idx[i, j]
            for k in range(n):
                bc = sum_idx[j, k]
                t_ab, t_abc, t_bc, t_a_bc = th_SS[i, j], th_TS[ab, k], th_SS[j, k], th_ST[i, bc]
                vals = [f_SS[i][j], f_TS[ab][k], f_SS[j][k], f_ST[i][bc]]
                if min(t_ab, t_abc, t_bc, t_a_bc) < 0 or any(v is None for v in vals):
                    skipped += 1
                    continue
                rep.checked += 1
                lhs = e_tab[t_ab][t_abc] * vals[0] * vals[1]
                rhs = eps_hat[i][t_bc] * e_tab[t_bc][t_a_bc] * vals[2] * vals[3]
                if lhs != rhs:
                    rep.fail("f.cocycle", f"f-cocycle identity fails at (a,b,c)=({S[i]},{S[j]},{S[k]})", (S[i], S[j], S[k]))
    rep.details["skipped"] = skipped


def box(m: int, radius: int) -> list[GVec]:
    """All integer vectors in {-radius..radius}^m."""
    return [tuple(v) for v in itertools.product(range(-radius, radius + 1), repeat=m)]
