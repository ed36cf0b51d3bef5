"""The canonical color derivations of A(k, G, E, f).

``Grading(p)`` multiplies E_alpha x^a t^i by the eigenvalue a_p,
``Lowering(p)`` differentiates in t_p with the color sign of moving past
everything to its left, and ``Mixed(p)`` is their sum.  The canonical
operator d_p is Grading for p <= k1, Mixed for k1 < p <= k1+k2 and Lowering
beyond.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .algebra import AlgebraElement, BasisIndex, ColorAlgebra, Truncation, WindowExceeded
from .grading import Element
from .linalg import EchelonBasis, poly_derivative, poly_gcd
from .report import Report
from .scalars import Scalar


class Kind(enum.Enum):
    GRADING = "grading"
    LOWERING = "lowering"
    MIXED = "mixed"


@dataclass(frozen=True)
class DerivationSpec:
    kind: Kind
    p: int  # 1-based variable index

    def __str__(self):
        return f"{self.kind.value}({self.p})"


def check_spec(alg: ColorAlgebra, d: DerivationSpec) -> None:
    ks = alg.ksig
    p = d.p
    if not 1 <= p <= ks.k:
        raise ValueError(f"{d}: p must lie in 1..{ks.k}")
    if d.kind is Kind.GRADING and p > ks.k1 + ks.k2:
        raise ValueError(f"{d}: the grading part vanishes for p > k1+k2 = {ks.k1 + ks.k2}")
    if d.kind is Kind.LOWERING and p <= ks.k1:
        raise ValueError(f"{d}: the lowering part vanishes for p <= k1 = {ks.k1}")
    if d.kind is Kind.MIXED and not ks.k1 < p <= ks.k1 + ks.k2:
        raise ValueError(f"{d}: mixed operators exist only for k1 < p <= k1+k2")


def canonical(alg: ColorAlgebra, p: int) -> DerivationSpec:
    ks = alg.ksig
    if p <= ks.k1:
        kind = Kind.GRADING
    elif p <= ks.k1 + ks.k2:
        kind = Kind.MIXED
    else:
        kind = Kind.LOWERING
    d = DerivationSpec(kind, p)
    check_spec(alg, d)
    return d


def canonical_derivations(alg: ColorAlgebra) -> list[DerivationSpec]:
    """The spanning list [d_1, ..., d_k] of D."""
    return [canonical(alg, p) for p in range(1, alg.k + 1)]


def color(alg: ColorAlgebra, d: DerivationSpec) -> Element:
    return alg.group.neg(alg.t_colors[d.p - 1])


# A derivation argument is a single spec or a finite linear combination.
Derivation = Union[DerivationSpec, Mapping[DerivationSpec, object]]


def _as_combo(alg: ColorAlgebra, d: Derivation) -> list[tuple[DerivationSpec, Scalar]]:
    if isinstance(d, DerivationSpec):
        check_spec(alg, d)
        return [(d, alg.field.one)]
    out = []
    for spec, c in d.items():
        check_spec(alg, spec)
        c = alg.field.coerce(c)
        if c:
            out.append((spec, c))
    return sorted(out, key=lambda sc: (sc[0].p, sc[0].kind.value))


def combo_color(alg: ColorAlgebra, d: Derivation) -> Element:
    cols = {color(alg, s) for s, _ in _as_combo(alg, d)}
    if len(cols) > 1:
        raise ValueError("derivation combination is not homogeneous")
    return cols.pop() if cols else alg.group.zero


def _cache(alg: ColorAlgebra) -> dict:
    c = alg.__dict__.get("_dcache")
    if c is None:
        c = alg.__dict__["_dcache"] = {}
    return c


def apply_basis(alg: ColorAlgebra, d: DerivationSpec, u: BasisIndex) -> list[tuple[Scalar, BasisIndex]]:
    """d(u) for a basis vector, as at most two (coefficient, index) terms."""
    cache = _cache(alg)
    key = (d, u)
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = []
    p = d.p
    if d.kind in (Kind.GRADING, Kind.MIXED):
        ap = alg.sd.G.coords(u.a)[p - 1]
        if ap:
            out.append((alg.field.rational(ap), u))
    if d.kind in (Kind.LOWERING, Kind.MIXED):
        ip = u.i[p - 1]
        if ip:
            grp = alg.group
            dcol = grp.neg(alg.t_colors[p - 1])
            # color passed over: alpha + hat(a) + sum_{q<p} i_q t_q
            passed = grp.add(grp.add(u.alpha, alg.sd.hat(u.a)), alg.t_part_color(u.i[: p - 1]))
            exp = alg.bichar.eps_exponent(dcol, passed)
            j = list(u.i)
            j[p - 1] -= 1
            out.append((alg.field.root_of_unity(exp) * ip, BasisIndex(u.alpha, u.a, tuple(j))))
    cache[key] = out
    return out


def apply(alg: ColorAlgebra, d: Derivation, u: AlgebraElement) -> AlgebraElement:
    out: dict[BasisIndex, Scalar] = {}
    for spec, c in _as_combo(alg, d):
        for idx, cu in u.terms.items():
            for coef, w in apply_basis(alg, spec, idx):
                v = c * cu * coef
                prev = out.get(w)
                if prev is not None:
                    v = prev + v
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
    return AlgebraElement(alg, out, _trusted=True)


# -- checks --------------------------------------------------------------------

def leibniz_check(alg: ColorAlgebra, d: Derivation, u: AlgebraElement, v: AlgebraElement, rep: Report | None = None) -> Report:
    """d(uv) == d(u) v + eps(color d, color u) u d(v) for homogeneous u, v."""
    rep = rep or Report("leibniz")
    rep.checked += 1
    if not u or not v:
        return rep
    lam = combo_color(alg, d)
    lhs = apply(alg, d, u * v)
    rhs = apply(alg, d, u) * v + (u * apply(alg, d, v)).scale(alg.bichar.eps(lam, u.color))
    if lhs != rhs:
        rep.fail("derivation.leibniz", f"Leibniz rule fails for {_dname(d)} on u={u}, v={v}", (str(u), str(v)))
    return rep


def leibniz_sweep(alg: ColorAlgebra, indices: Iterable[BasisIndex], derivations=None) -> Report:
    """Leibniz for every given derivation on every ordered pair of basis vectors."""
    rep = Report("leibniz")
    idx = list(indices)
    ders = derivations or canonical_derivations(alg)
    bp = alg.basis_product
    eps_e = alg.bichar.eps_exponent
    root = alg.field.root_of_unity
    colors = {u: alg.color_of(u) for u in idx}
    for d in ders:
        lam = color(alg, d)
        images = {u: apply_basis(alg, d, u) for u in idx}
        for u in idx:
            du = images[u]
            sign = root(eps_e(lam, colors[u]))
            for v in idx:
                rep.checked += 1
                lhs: dict = {}
                r = bp(u, v)
                if r is not None:
                    for c, w in apply_basis(alg, d, r[1]):
                        _acc(lhs, w, r[0] * c)
                rhs: dict = {}
                for c, w in du:
                    r2 = bp(w, v)
                    if r2 is not None:
                        _acc(rhs, r2[1], c * r2[0])
                for c, w in images[v]:
                    r2 = bp(u, w)
                    if r2 is not None:
                        _acc(rhs, r2[1], sign * c * r2[0])
                if lhs != rhs:
                    rep.fail(
                        "derivation.leibniz",
                        f"Leibniz rule fails for {d} on u={alg.render_index(u)}, v={alg.render_index(v)}",
                        (d.p, u, v),
                    )
    return rep


def _acc(out: dict, w, c):
    prev = out.get(w)
    if prev is not None:
        c = prev + c
    if c:
        out[w] = c
    else:
        out.pop(w, None)


def _dname(d: Derivation) -> str:
    if isinstance(d, DerivationSpec):
        return str(d)
    return " + ".join(f"({c})*{s}" for s, c in d.items())


# -- matrices on a window ----------------------------------------------------

def matrix_on(alg: ColorAlgebra, d: Derivation, window: list[BasisIndex]) -> list[dict[int, Scalar]]:
    """Sparse columns: column j holds d(window[j]) in window coordinates.

    Raises WindowExceeded if the window is not d-invariant.
    """
    pos = {u: j for j, u in enumerate(window)}
    cols = []
    for u in window:
        img = apply(alg, d, alg.basis(u))
        col = {}
        for w, c in img.terms.items():
            j = pos.get(w)
            if j is None:
                raise WindowExceeded(f"{_dname(d)} maps {alg.render_index(u)} outside the window")
            col[j] = c
        cols.append(col)
    return cols


def _matmul(A: list[dict], B: list[dict]) -> list[dict]:
    """Product of column-sparse square matrices (A after B)."""
    out = []
    for col in B:
        res: dict = {}
        for k, c in col.items():
            for i, a in A[k].items():
                _acc(res, i, a * c)
        out.append(res)
    return out


def _flatten(M: list[dict]) -> dict:
    return {(i, j): c for j, col in enumerate(M) for i, c in col.items()}


class Classification(enum.Enum):
    SEMISIMPLE = "SemiSimple"
    LOCALLY_FINITE_NOT_SEMISIMPLE = "LocallyFiniteNotSemiSimple"
    LOCALLY_NILPOTENT = "LocallyNilpotent"


def minimal_polynomial(M: list[dict], field) -> list[Scalar]:
    """Monic minimal polynomial (low degree first) of a column-sparse matrix."""
    n = len(M)
    identity = [{j: field.one} for j in range(n)]
    eb = EchelonBasis(track=True)
    power = identity
    for deg in range(n + 1):
        v = _flatten(power)
        if not v:
            # M^deg = 0: minimal polynomial is x^deg
            return [field.zero] * deg + [field.one]
        dep = eb.add(v)
        if dep is not None:
            coeffs = [dep.get(j, field.zero) for j in range(deg + 1)]
            lead = coeffs[-1].inverse()
            return [c * lead for c in coeffs]
        power = _matmul(M, power)
    raise ArithmeticError("minimal polynomial degree exceeded the dimension")


def classify(alg: ColorAlgebra, d: Derivation, window: Truncation | list[BasisIndex]) -> Classification:
    """Classify d by its matrix on a finite d-invariant window.

    A nonzero nilpotent matrix is locally nilpotent; otherwise a squarefree
    minimal polynomial means semisimple (the zero operator counts as
    semisimple).
    """
    idx = alg.window(window) if isinstance(window, Truncation) else list(window)
    M = matrix_on(alg, d, idx)
    field = alg.field
    if not any(M):
        return Classification.SEMISIMPLE
    mp = minimal_polynomial(M, field)
    if all(not c for c in mp[:-1]):
        return Classification.LOCALLY_NILPOTENT
    g = poly_gcd(mp, poly_derivative(mp))
    if len(g) <= 1:
        return Classification.SEMISIMPLE
    return Classification.LOCALLY_FINITE_NOT_SEMISIMPLE


def eps_commute_check(alg: ColorAlgebra, window: Truncation | list[BasisIndex]) -> Report:
    """d_p d_q == eps(color d_p, color d_q) d_q d_p as matrices on the window, all p, q."""
    rep = Report("eps_commute")
    idx = alg.window(window) if isinstance(window, Truncation) else list(window)
    ders = canonical_derivations(alg)
    mats = [matrix_on(alg, d, idx) for d in ders]
    for a, dp in enumerate(ders):
        for b, dq in enumerate(ders):
            rep.checked += 1
            s = alg.bichar.eps(color(alg, dp), color(alg, dq))
            left = _flatten(_matmul(mats[a], mats[b]))
            right = {k: s * v for k, v in _flatten(_matmul(mats[b], mats[a])).items()}
            if left != right:
                rep.fail("derivation.eps_commute", f"d_{dp.p} d_{dq.p} != eps * d_{dq.p} d_{dp.p} on the window", (dp.p, dq.p))
    return rep
