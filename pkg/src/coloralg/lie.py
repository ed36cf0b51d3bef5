"""Finite-dimensional graded subspaces of the Weyl algebra and their bracket tables.

A :class:`SubalgebraBasis` is stored in fully reduced echelon form over the
monomials ordered by (color, monomial), so its rows are homogeneous and
coordinates are read off the pivot columns.  With ``quotient=True`` the
identity operator is discarded, which realises the quotient by the center F.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import BasisIndex, ColorAlgebra, Truncation, WindowExceeded
from .grading import Element
from .linalg import EchelonBasis, kernel
from .report import Report
from .scalars import Scalar
from .weyl import WeylAlgebra, WeylElement, WeylMonomial


class NotClosed(ValueError):
    """A bracket of two basis vectors left the subspace."""


class SubalgebraBasis:
    def __init__(self, weyl: WeylAlgebra, elements: Iterable[WeylElement], quotient: bool = False, name: str = "S"):
        self.weyl = weyl
        self.quotient = quotient
        self.name = name
        self._identity = WeylMonomial(weyl.alg.one_index, weyl.zero_mu)
        eb = EchelonBasis(order=self._key)
        for w in elements:
            vec = self._vector(w)
            if vec:
                eb.add(vec)
        order = sorted(range(len(eb.rows)), key=lambda r: self._key(eb.pivots[r]))
        self.pivots = [eb.pivots[r] for r in order]
        self.rows = [WeylElement(weyl, eb.rows[r], _trusted=True) for r in order]
        self.colors: list[Element] = [weyl.mono_color(p) for p in self.pivots]
        self._echelon = eb
        self.closed = False

    def _key(self, m: WeylMonomial):
        return (self.weyl.mono_color(m), m)

    def _vector(self, w: WeylElement) -> dict:
        vec = dict(w.terms)
        if self.quotient:
            vec.pop(self._identity, None)
        return vec

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return self.dim

    def coordinates(self, w: WeylElement) -> dict[int, Scalar] | None:
        """Sparse coordinates of ``w`` (mod F when quotiented), or None if outside the span."""
        vec = self._vector(w)
        if self._echelon.reduce(vec):
            return None
        return {j: vec[p] for j, p in enumerate(self.pivots) if p in vec}

    def contains(self, w: WeylElement) -> bool:
        return self.coordinates(w) is not None

    def element(self, coords: dict[int, Scalar]) -> WeylElement:
        out = self.weyl.element()
        for j, c in coords.items():
            out = out + self.rows[j].scale(c)
        return out

    def color_counts(self) -> dict[Element, int]:
        out: dict[Element, int] = {}
        for c in self.colors:
            out[c] = out.get(c, 0) + 1
        return dict(sorted(out.items()))


@dataclass
class LieTable:
    """Structure constants: ``brackets[i][j]`` holds the coordinates of [b_i, b_j]."""

    basis: SubalgebraBasis
    brackets: list[list[dict[int, Scalar]]] = field(repr=False)

    @classmethod
    def build(cls, S: SubalgebraBasis) -> "LieTable":
        W = S.weyl
        n = S.dim
        table: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                br = W.bracket(S.rows[i], S.rows[j])
                co = S.coordinates(br)
                if co is None:
                    raise NotClosed(f"[{S.rows[i]}, {S.rows[j]}] = {br} leaves {S.name}")
                table[i][j] = co
        S.closed = True
        return cls(S, table)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def colors(self) -> list[Element]:
        return self.basis.colors

    @property
    def field(self):
        return self.basis.weyl.field

    def eps(self, i: int, j: int) -> Scalar:
        return self.basis.weyl.alg.bichar.eps(self.colors[i], self.colors[j])

    def is_abelian(self) -> bool:
        return not any(e for row in self.brackets for e in row)

    def bracket_vec(self, x: dict[int, Scalar], j: int) -> dict[int, Scalar]:
        """[x, b_j] for a coordinate vector x."""
        out: dict[int, Scalar] = {}
        for i, c in x.items():
            for k, v in self.brackets[i][j].items():
                _acc(out, k, c * v)
        return out

    def left_bracket_vec(self, i: int, x: dict[int, Scalar]) -> dict[int, Scalar]:
        """[b_i, x] for a coordinate vector x."""
        out: dict[int, Scalar] = {}
        for j, c in x.items():
            for k, v in self.brackets[i][j].items():
                _acc(out, k, c * v)
        return out

    # -- identities -----------------------------------------------------------
    def check_skew(self) -> Report:
        rep = Report("color_skew_symmetry")
        for i in range(self.dim):
            for j in range(self.dim):
                rep.checked += 1
                e = self.eps(i, j)
                rhs = {k: -e * v for k, v in self.brackets[j][i].items()}
                if self.brackets[i][j] != rhs:
                    rep.fail("lie.skew", f"[b{i},b{j}] != -eps [b{j},b{i}]", (i, j))
        return rep

    def check_jacobi(self, triples: Iterable[tuple[int, int, int]] | None = None) -> Report:
        """[a,[b,c]] == [[a,b],c] + eps(a,b) [b,[a,c]] on the given basis triples (default: all)."""
        rep = Report("color_jacobi")
        n = self.dim
        if triples is None:
            triples = itertools.product(range(n), repeat=3)
        for a, b, c in triples:
            rep.checked += 1
            lhs = self.left_bracket_vec(a, self.brackets[b][c])
            rhs = self.bracket_vec(self.brackets[a][b], c)
            e = self.eps(a, b)
            for k, v in self.left_bracket_vec(b, self.brackets[a][c]).items():
                _acc(rhs, k, e * v)
            if lhs != rhs:
                rep.fail("lie.jacobi", f"color Jacobi fails on (b{a},b{b},b{c})", (a, b, c))
        return rep

    def check_grading(self) -> Report:
        rep = Report("bracket_grading")
        grp = self.basis.weyl.alg.group
        for i in range(self.dim):
            for j in range(self.dim):
                rep.checked += 1
                want = grp.add(self.colors[i], self.colors[j])
                if any(self.colors[k] != want for k in self.brackets[i][j]):
                    rep.fail("lie.grading", f"[b{i},b{j}] is not of color {want}", (i, j))
        return rep

    def to_json(self) -> dict:
        S = self.basis
        names = [str(r) for r in S.rows]
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                co = self.brackets[i][j]
                if co:
                    out.append({
                        "left": names[i],
                        "right": names[j],
                        "result": {names[k]: str(v) for k, v in sorted(co.items())},
                    })
        return {
            "target": S.name,
            "dimension": self.dim,
            "quotient_by_identity": S.quotient,
            "basis": [{"element": nm, "color": list(c)} for nm, c in zip(names, S.colors)],
            "brackets": out,
        }


def _acc(out: dict, key, c):
    prev = out.get(key)
    if prev is not None:
        c = prev + c
    if c:
        out[key] = c
    else:
        out.pop(key, None)


# -- the standard subspaces -------------------------------------------------------

def algebra_basis(alg: ColorAlgebra, trunc: Truncation | None = None) -> list[BasisIndex]:
    """All basis indices of A when finite-dimensional, otherwise those in ``trunc``."""
    if trunc is None:
        if not is_finite(alg):
            raise WindowExceeded("A is infinite-dimensional; give a truncation")
        trunc = Truncation(alg.ksig.k4, ((),))
    return alg.window(trunc)


def is_finite(alg: ColorAlgebra) -> bool:
    ks = alg.ksig
    return ks.k1 + ks.k2 + ks.k3 == 0


def witt(W: WeylAlgebra, trunc: Truncation | None = None) -> SubalgebraBasis:
    """W = span{u d_p}."""
    idx = algebra_basis(W.alg, trunc)
    gens = [W.monomial(u, _unit(W.k, p)) for u in idx for p in range(W.k)]
    return SubalgebraBasis(W, gens, name="W")


def weyl_full(W: WeylAlgebra, trunc: Truncation | None = None, quotient: bool = False) -> SubalgebraBasis:
    """The whole operator algebra (finite case), or its truncated spanning monomials."""
    idx = algebra_basis(W.alg, trunc)
    mus = W.mus(None if trunc is None else trunc.max_t_degree)
    gens = [W.monomial(u, mu) for u in idx for mu in mus]
    return SubalgebraBasis(W, gens, quotient=quotient, name="Wtilde" if quotient else "Weyl")


def derived(S: SubalgebraBasis, name: str | None = None) -> SubalgebraBasis:
    """Row-reduced basis of [S, S] (computed in the same quotient as S)."""
    W = S.weyl
    gens = [W.bracket(x, y) for i, x in enumerate(S.rows) for y in S.rows[i:]]
    gens += [W.bracket(y, x) for i, x in enumerate(S.rows) for y in S.rows[i + 1 :]]
    return SubalgebraBasis(W, gens, quotient=S.quotient, name=name or f"[{S.name},{S.name}]")


def center(S: SubalgebraBasis, table: LieTable | None = None) -> SubalgebraBasis:
    """{x in S : [x, S] = 0}, computed color by color as a kernel."""
    T = table or LieTable.build(S)
    field_ = S.weyl.field
    n = S.dim
    by_color: dict[Element, list[int]] = {}
    for i, c in enumerate(S.colors):
        by_color.setdefault(c, []).append(i)
    gens = []
    for _, members in sorted(by_color.items()):
        cols = []
        for i in members:
            col = {}
            for j in range(n):
                for k, v in T.brackets[i][j].items():
                    col[(j, k)] = v
            cols.append(col)
        for vec in kernel(cols, field_):
            gens.append(S.element({members[pos]: c for pos, c in vec.items()}))
    return SubalgebraBasis(S.weyl, gens, quotient=S.quotient, name=f"Z({S.name})")


def _unit(k: int, p: int) -> tuple[int, ...]:
    mu = [0] * k
    mu[p] = 1
    return tuple(mu)


def top_operator(W: WeylAlgebra) -> WeylElement:
    """t^(1..1) d^(1..1) in the purely Grassmann case."""
    alg = W.alg
    return W.monomial(alg.index(i=(1,) * alg.k), (1,) * alg.k)


def dims_report(W: WeylAlgebra, trunc: Truncation | None = None) -> dict:
    """Dimensions of A, W, the Weyl algebra, its quotient by F and the derived algebra.

    For infinite configurations a truncation is required and only the
    numbers of spanning monomials inside it are reported.
    """
    alg = W.alg
    if not is_finite(alg):
        if trunc is None:
            raise WindowExceeded("infinite-dimensional configuration; pass a truncation")
        idx = alg.window(trunc)
        mus = W.mus(trunc.max_t_degree)
        return {
            "finite": False,
            "truncation": {"max_t_degree": trunc.max_t_degree, "a_window_size": len(trunc.a_window)},
            "A_window": len(idx),
            "W_window": len(idx) * W.k,
            "Weyl_window": len(idx) * len(mus),
        }
    n = alg.ksig.k4
    idx = algebra_basis(alg)
    S_W = witt(W)
    full = weyl_full(W)
    tilde = weyl_full(W, quotient=True)
    bar = derived(tilde, name="Wbar")
    top = top_operator(W)
    g0 = len(alg.sd.gamma0.elements)
    out = {
        "finite": True,
        "n": n,
        "A": len(idx),
        "W": S_W.dim,
        "Weyl": full.dim,
        "Wtilde": tilde.dim,
        "Wbar": bar.dim,
        "Wbar_colors": {",".join(map(str, c)): m for c, m in bar.color_counts().items()},
        "Wtilde_equals_Wbar_plus_top": tilde.dim == bar.dim + 1 and not bar.contains(top),
    }
    if g0 == 1:
        expected = {"A": 2**n, "W": n * 2**n, "Weyl": 4**n, "Wtilde": 4**n - 1, "Wbar": 2 ** (2 * n) - 2}
        out["expected"] = expected
        out["matches_expected"] = all(out[k] == v for k, v in expected.items())
        if n == 1:
            out["notes"] = [
                "with a single odd variable the derived algebra is 2-dimensional and abelian, "
                "not zero; it is still not simple"
            ]
    return out
