"""Simplicity verdicts for finite-dimensional Lie color algebras, with certificates.

Stage 1 (Burnside): if the unital associative algebra generated by the
adjoint operators is all of End(S), then S has no proper nonzero ideal.  The
rank computation runs over F_p with zeta_L sent to a primitive L-th root of
unity; a rank reached modulo p is a lower bound for the rank over Q(zeta_L),
so a full count proves the claim.  Because every ad operator is homogeneous,
End(S) splits by color shift and each shift is counted separately.

Stage 2 (graded closures): the ideal generated by every homogeneous basis
vector and by random homogeneous probes.  A proper closure is recomputed
exactly and returned as the witness ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import flint
import numpy as np
from sympy import isprime

from .grading import Element
from .lie import LieTable
from .linalg import EchelonBasis, ModularReduction, primes_one_mod
from .report import Report
from .scalars import Scalar

CHUNK_FACTOR = 2
MAX_CHUNK = 4096
SIMPLE = "SIMPLE"
NOT_SIMPLE = "NOT-SIMPLE"


@dataclass
class SimplicityResult:
    verdict: str
    method: str
    dim: int
    certificate: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def simple(self) -> bool:
        return self.verdict == SIMPLE

    @property
    def is_proof(self) -> bool:
        """Burnside counts and explicit ideals are proofs; probe closures are not."""
        return self.method != "graded-closure"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "dim": self.dim,
            "certificate": self.certificate,
            "details": self.details,
            "proof": self.is_proof,
        }


# -- modular ad matrices -------------------------------------------------------------

def _modular(table: LieTable, start: int = 2**19):
    """(reduction, ad matrices) for the first prime where every structure constant reduces."""
    field_ = table.field
    for p in primes_one_mod(field_.order, start):
        red = ModularReduction(field_, p)
        try:
            return red, ad_matrices_mod(table, red)
        except ZeroDivisionError:
            continue
    raise AssertionError("unreachable")


def ad_matrices_mod(table: LieTable, red) -> list[np.ndarray]:
    d = table.dim
    out = []
    for j in range(d):
        M = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            for k, v in table.brackets[j][i].items():
                M[k, i] = red(v)
        out.append(M)
    return out


def _shift_blocks(colors: list[Element], group) -> dict[Element, np.ndarray]:
    """Flat indices (k*d + i) of End(S) with color(k) = color(i) + shift, per shift."""
    d = len(colors)
    out: dict[Element, list[int]] = {}
    for k in range(d):
        for i in range(d):
            out.setdefault(group.sub(colors[k], colors[i]), []).append(k * d + i)
    return {g: np.array(v, dtype=np.int64) for g, v in sorted(out.items())}


def _pivot_columns(R, rank: int) -> list[int]:
    piv, col = [], 0
    ncols = R.ncols()
    for row in range(rank):
        while col < ncols and int(R[row, col]) == 0:
            col += 1
        piv.append(col)
        col += 1
    return piv


def _to_numpy(M) -> np.ndarray:
    return np.array([int(v) for v in M.entries()], dtype=np.int64).reshape(M.nrows(), M.ncols())


def _independent(rows: np.ndarray, p: int) -> list[int]:
    """Indices of a greedily chosen maximal independent subset of ``rows`` (mod p)."""
    if rows.shape[0] == 0:
        return []
    n, m = rows.shape
    M = flint.nmod_mat(m, n, rows.T.ravel().tolist(), p)
    R, rank = M.rref()
    return _pivot_columns(R, rank)


class _ModEchelon:
    """Reduced echelon rows mod p, kept as float64 so reductions run through BLAS.

    Entries stay in [0, p) and p < 2^20, so every dot product over at most
    2^12 terms is an integer below 2^53 and therefore exact.
    """

    def __init__(self, n: int, p: int):
        self.p = p
        self.E = np.zeros((0, n))
        self.P = np.zeros(0, dtype=np.int64)

    def __len__(self):
        return self.E.shape[0]

    def add(self, C: np.ndarray) -> list[int]:
        """Insert rows of C greedily; return the positions of those that were independent."""
        p = self.p
        R = C.astype(np.float64)
        if len(self):
            R = np.mod(R - np.mod(R[:, self.P] @ self.E, p), p)
        R = R.astype(np.int64)
        live = np.nonzero(R.any(axis=1))[0]
        piv = [int(live[c]) for c in _independent(R[live], p)]
        if piv:
            S = R[piv]
            M = flint.nmod_mat(S.shape[0], S.shape[1], S.ravel().tolist(), p)
            N, rank = M.rref()
            Q = _pivot_columns(N, rank)
            Nf = _to_numpy(N)[:rank].astype(np.float64)
            if len(self):
                self.E = np.mod(self.E - np.mod(self.E[:, Q] @ Nf, p), p)
            self.E = np.vstack([self.E, Nf])
            self.P = np.concatenate([self.P, np.array(Q, dtype=np.int64)])
        return piv


# -- stage 1 -----------------------------------------------------------------------------

def burnside(table: LieTable, seed: int = 0, max_levels: int | None = None) -> tuple[bool, dict]:
    """Try to certify that the ad operators generate End(S).

    Returns (full, info).  When full, ``info`` holds the prime, the root of
    unity and, per color shift, a list of words (tuples of basis positions;
    the word (j1, j2, ...) denotes ad_{j1} ad_{j2} ...) whose matrices are
    independent and fill that shift.
    """
    d = table.dim
    grp = table.basis.weyl.alg.group
    colors = table.colors
    red, ads = _modular(table)
    p = red.prime
    blocks = _shift_blocks(colors, grp)
    target = {g: len(ix) for g, ix in blocks.items()}
    zero = grp.zero
    accepted: dict[Element, list[tuple[int, ...]]] = {g: [] for g in blocks}
    echelons = {g: _ModEchelon(len(ix), p) for g, ix in blocks.items()}
    word_color = {(): zero}
    mats = {(): np.eye(d, dtype=np.int64)}
    accepted[zero].append(())
    echelons[zero].add(mats[()].ravel()[blocks[zero]][None, :])
    frontier = [()]
    rng = random.Random(seed)
    levels = 0
    max_levels = max_levels or d * d

    def full():
        return all(len(accepted[g]) == target[g] for g in blocks)

    while frontier and not full() and levels < max_levels:
        levels += 1
        cands: dict[Element, list[tuple[int, tuple]]] = {g: [] for g in blocks}
        for w in frontier:
            cw = word_color[w]
            for j in range(d):
                g = grp.add(colors[j], cw)
                if g in blocks and len(accepted[g]) < target[g]:
                    cands[g].append((j, w))
        new_frontier = []
        for g, lst in cands.items():
            rng.shuffle(lst)
            pos = 0
            size = 0
            while pos < len(lst) and len(accepted[g]) < target[g]:
                need = target[g] - len(accepted[g])
                size = min(max(CHUNK_FACTOR * need + 8, 2 * size), MAX_CHUNK)
                chunk = lst[pos : pos + size]
                pos += len(chunk)
                prods = [(ads[j] @ mats[w]) % p for j, w in chunk]
                cand_vecs = np.array([P.ravel()[blocks[g]] for P in prods], dtype=np.int64)
                for c in echelons[g].add(cand_vecs):
                    j, w = chunk[c]
                    nw = (j,) + w
                    accepted[g].append(nw)
                    word_color[nw] = g
                    mats[nw] = prods[c]
                    new_frontier.append(nw)
        # matrices of words that can no longer extend anything are dropped
        for w in frontier:
            if w != ():
                mats.pop(w, None)
        frontier = new_frontier

    info = {
        "prime": p,
        "root": red.root,
        "envelope_dim_mod_p": sum(len(v) for v in accepted.values()),
        "target": d * d,
        "levels": levels,
        "words": {",".join(map(str, g)): [list(w) for w in accepted[g]] for g in blocks},
    }
    return full(), info


# -- stage 2 -----------------------------------------------------------------------------

def _rref_mod(rows: np.ndarray, p: int) -> np.ndarray:
    """Row-reduce an integer matrix mod p (small column count); returns the nonzero rows."""
    A = rows.copy() % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            A[mask] = (A[mask] - col[mask, None] * A[r][None, :]) % p
        r += 1
    return A[:r]


def closure_dim_mod(ads: list[np.ndarray], v: np.ndarray, p: int) -> int:
    """Dimension (mod p) of the ideal generated by coordinate vector v."""
    d = len(ads)
    ADS = np.stack(ads)  # (d, d, d): ADS[j] @ x = [b_j, x]
    basis = _rref_mod(v[None, :], p)
    new = basis
    while new.shape[0] and basis.shape[0] < d:
        imgs = np.einsum("jki,ni->njk", ADS, new).reshape(-1, d) % p
        merged = _rref_mod(np.vstack([basis, imgs]), p)
        if merged.shape[0] == basis.shape[0]:
            break
        new = basis = merged
    return basis.shape[0]


def exact_closure(table: LieTable, v: dict[int, Scalar]) -> EchelonBasis:
    eb = EchelonBasis()
    queue = [v]
    eb.add(v)
    while queue:
        x = queue.pop()
        for j in range(table.dim):
            y = table.left_bracket_vec(j, x)
            r = eb.reduce(y)
            if r:
                eb.add(r)
                queue.append(r)
    return eb


def _probe(table: LieTable, members: list[int], rng: random.Random) -> dict[int, Scalar]:
    field_ = table.field
    v: dict[int, Scalar] = {}
    while not v:
        for i in members:
            c = rng.randint(-5, 5)
            if c:
                v[i] = field_.rational(c)
    return v


def graded_closures(table: LieTable, probes: int = 64, seed: int = 0) -> tuple[bool, dict]:
    """(all closures full, info); info carries an exact proper ideal if one is found."""
    d = table.dim
    red, ads = _modular(table)
    p = red.prime
    rng = random.Random(seed)
    gens: list[tuple[str, dict[int, Scalar]]] = [(f"b{i}", {i: table.field.one}) for i in range(d)]
    by_color: dict[Element, list[int]] = {}
    for i, c in enumerate(table.colors):
        by_color.setdefault(c, []).append(i)
    for c, members in sorted(by_color.items()):
        for r in range(probes):
            gens.append((f"probe[{','.join(map(str, c))}]#{r}", _probe(table, members, rng)))
    checked = 0
    for name, v in gens:
        checked += 1
        vec = np.zeros(d, dtype=np.int64)
        for i, c in v.items():
            vec[i] = red(c)
        if closure_dim_mod(ads, vec, p) == d:
            continue
        eb = exact_closure(table, v)
        if len(eb) < d:
            return False, {
                "prime": p,
                "closures_checked": checked,
                "generator": name,
                "ideal": [_coords_json(row) for row in eb.rows],
            }
    return True, {"prime": p, "closures_checked": checked, "probes_per_color": probes}


def _coords_json(vec: dict[int, Scalar]) -> dict[str, str]:
    return {str(k): str(v) for k, v in sorted(vec.items())}


# -- verdict ---------------------------------------------------------------------------------

def simplicity_check(table: LieTable, probes: int = 64, seed: int = 0, use_burnside: bool = True) -> SimplicityResult:
    d = table.dim
    if d == 0:
        return SimplicityResult(NOT_SIMPLE, "zero", 0, {"reason": "the zero algebra is not simple"})
    if table.is_abelian():
        ideal = [_coords_json({0: table.field.one})] if d > 1 else []
        return SimplicityResult(
            NOT_SIMPLE,
            "abelian",
            d,
            {"reason": "all brackets vanish", "ideal": ideal},
        )
    details = {}
    if use_burnside:
        ok, info = burnside(table, seed=seed)
        details["burnside"] = {k: v for k, v in info.items() if k != "words"}
        if ok:
            return SimplicityResult(SIMPLE, "burnside", d, {k: info[k] for k in ("prime", "root", "words")}, details)
    ok, info = graded_closures(table, probes=probes, seed=seed)
    details["closures"] = {k: v for k, v in info.items() if k != "ideal"}
    if ok:
        # closures from basis vectors and random probes are strong evidence, not a proof
        details["proof"] = False
        return SimplicityResult(SIMPLE, "graded-closure", d, {"prime": info["prime"], "probes_per_color": probes, "seed": seed}, details)
    return SimplicityResult(NOT_SIMPLE, "proper-ideal", d, {"generator": info["generator"], "ideal": info["ideal"]}, details)


# -- independent certificate checking ---------------------------------------------------

def verify_certificate(table: LieTable, result: SimplicityResult) -> Report:
    """Replay a certificate against the bracket table without reusing the search code."""
    rep = Report("simplicity_certificate")
    cert = result.certificate
    d = table.dim
    field_ = table.field
    if result.method == "burnside":
        p, w = int(cert["prime"]), int(cert["root"])
        L = field_.order
        rep.checked += 1
        if not isprime(p) or (p - 1) % L:
            rep.fail("cert.prime", f"{p} is not a prime = 1 mod {L}")
            return rep
        if pow(w, L, p) != 1 or any(pow(w, L // q, p) == 1 for q in range(2, L + 1) if L % q == 0 and isprime(q)):
            rep.fail("cert.root", f"{w} is not a primitive {L}-th root of unity mod {p}")
            return rep
        powers = [pow(w, j, p) for j in range(field_.degree)]

        def reduce(x: Scalar) -> int:
            if x.den % p == 0:
                raise ZeroDivisionError
            return sum(c * q for c, q in zip(x.num, powers)) * pow(x.den, -1, p) % p

        try:
            ads = np.zeros((d, d, d), dtype=np.int64)
            for j in range(d):
                for i in range(d):
                    for k, v in table.brackets[j][i].items():
                        ads[j, k, i] = reduce(v)
        except ZeroDivisionError:
            rep.fail("cert.prime", "a structure constant has a denominator divisible by the prime")
            return rep
        grp = table.basis.weyl.alg.group
        colors = table.colors
        total = 0
        for key, words in cert["words"].items():
            shift = tuple(int(x) for x in key.split(",")) if key else ()
            mask = np.array([[grp.sub(colors[k], colors[i]) == shift for i in range(d)] for k in range(d)])
            size = int(mask.sum())
            rows = []
            for word in words:
                M = np.eye(d, dtype=np.int64)
                for j in reversed(word):
                    M = ads[j] @ M % p
                rows.append(M[mask])
            rep.checked += 1
            r = flint.nmod_mat(len(rows), size, np.concatenate(rows).tolist(), p).rank() if rows else 0
            if r != size:
                rep.fail("cert.rank", f"shift {shift}: words span {r} of {size} dimensions")
            total += r
        if total != d * d:
            rep.fail("cert.rank", f"envelope certificate spans {total} of {d * d}")
        rep.checked += 1
        if table.is_abelian():
            rep.fail("cert.abelian", "an abelian algebra is not simple")
    elif result.method in ("abelian", "proper-ideal"):
        ideal = [{int(k): field_.parse(v) for k, v in vec.items()} for vec in cert.get("ideal", [])]
        if result.method == "abelian":
            rep.checked += 1
            if not table.is_abelian():
                rep.fail("cert.abelian", "claimed abelian but a bracket is nonzero")
        if not ideal and result.method == "proper-ideal":
            rep.fail("cert.ideal", "empty ideal")
        eb = EchelonBasis()
        for v in ideal:
            eb.add(v)
        rep.checked += 1
        if len(eb) != len(ideal) or len(eb) >= d:
            rep.fail("cert.ideal", f"ideal of dimension {len(eb)} is not proper in dimension {d}")
        for v in ideal:
            for j in range(d):
                rep.checked += 1
                if not eb.contains(table.left_bracket_vec(j, v)):
                    rep.fail("cert.ideal", f"[b{j}, x] leaves the claimed ideal", j)
    elif result.method == "graded-closure":
        again = graded_closures(table, probes=int(cert["probes_per_color"]), seed=int(cert["seed"]))
        rep.checked += 1
        if not again[0]:
            rep.fail("cert.closure", "replayed closures found a proper ideal")
    else:
        rep.fail("cert.method", f"unknown method {result.method}")
    return rep
