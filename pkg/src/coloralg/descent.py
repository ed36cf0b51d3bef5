"""Reduce a nonzero homogeneous element of A to 1 using derivations and multiplications.

Every move keeps the element inside any graded D-stable ideal that contains
the starting element, so a successful chain shows that the ideal is all of A.
The chain has three stages:

1. separate the a-support: (d_q - a'_q)^n kills the a'-component (d_q acts
   there as a'_q plus a nilpotent) while acting invertibly on a component
   whose q-th eigenvalue differs;
2. lower every t-exponent to zero on the remaining component;
3. multiply by the inverse of the surviving root vector.

:func:`replay` re-executes a chain with derivatives recomputed from the
Leibniz rule on factorizations into generators, so it never calls the
basis formulas of :mod:`coloralg.derivations`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import derivations as der
from .algebra import AlgebraElement, BasisIndex, ColorAlgebra
from .report import Report


class DescentError(ArithmeticError):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"descent stuck at {stage}: {message}")


@dataclass(frozen=True)
class Move:
    """``apply``: x -> (d_p - shift)^power x;  ``mul``: x -> element * x."""

    kind: str
    p: int = 0
    shift: Fraction = Fraction(0)
    power: int = 1
    element: AlgebraElement | None = None

    def __str__(self):
        if self.kind == "apply":
            return f"apply {self.p} shift {self.shift} power {self.power}"
        return f"mul {self.element}"

    def to_json(self) -> dict:
        if self.kind == "apply":
            return {"move": "apply", "p": self.p, "shift": str(self.shift), "power": self.power}
        return {"move": "mul", "element": str(self.element)}


@dataclass
class Witness:
    start: AlgebraElement
    moves: list[Move] = field(default_factory=list)
    stages: list[str] = field(default_factory=list)

    def to_script(self) -> str:
        lines = [f"start {self.start}"]
        lines += [str(m) for m in self.moves]
        lines.append("expect 1")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "start": str(self.start),
            "moves": [dict(m.to_json(), stage=s) for m, s in zip(self.moves, self.stages)],
            "result": "1",
        }


def parse_script(alg: ColorAlgebra, text: str) -> Witness:
    start = None
    moves = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        word, _, rest = line.partition(" ")
        if word == "start":
            start = alg.parse(rest)
        elif word == "apply":
            parts = rest.split()
            if len(parts) != 5 or parts[1] != "shift" or parts[3] != "power":
                raise ValueError(f"bad apply line: {line!r}")
            moves.append(Move("apply", int(parts[0]), Fraction(parts[2]), int(parts[4])))
        elif word == "mul":
            moves.append(Move("mul", element=alg.parse(rest)))
        elif word == "expect":
            if rest.strip() != "1":
                raise ValueError("a descent script must end at 1")
        else:
            raise ValueError(f"unknown script line {line!r}")
    if start is None:
        raise ValueError("script has no start line")
    return Witness(start, moves, ["?"] * len(moves))


# -- construction ------------------------------------------------------------------

def _apply_move(alg: ColorAlgebra, m: Move, x: AlgebraElement) -> AlgebraElement:
    if m.kind == "mul":
        return m.element * x
    d = der.canonical(alg, m.p)
    shift = alg.field.rational(m.shift)
    for _ in range(m.power):
        x = der.apply(alg, d, x) - x.scale(shift)
    return x


def d_simplicity_descent(alg: ColorAlgebra, u: AlgebraElement) -> Witness:
    if not u:
        raise ValueError("descent needs a nonzero element")
    if not u.is_homogeneous():
        raise ValueError("descent needs a homogeneous element")
    w = Witness(u)
    x = u
    ks = alg.ksig
    n_eig = ks.k1 + ks.k2
    coords = alg.sd.G.coords

    def push(stage, move):
        nonlocal x
        x = _apply_move(alg, move, x)
        if not x:
            raise DescentError(stage, f"move {move} annihilated the element")
        w.moves.append(move)
        w.stages.append(stage)

    # stage 1: one a-component
    while True:
        support = sorted({idx.a for idx in x.terms})
        if len(support) == 1:
            break
        target = support[-1]
        other = support[0]
        ct, co = coords(target), coords(other)
        q = next((q for q in range(n_eig) if ct[q] != co[q]), None)
        if q is None:
            raise DescentError("separate", f"a-values {target} and {other} have equal eigenvalues; G is degenerate")
        if q < ks.k1:
            power = 1
        else:
            power = 1 + max(idx.i[q] for idx in x.terms if idx.a == other)
        push("separate", Move("apply", q + 1, co[q], power))
    a_star = support[0]
    ca = coords(a_star)

    # stage 2: lower each t-exponent to zero
    for p in range(ks.k1, ks.k):
        top = max(idx.i[p] for idx in x.terms)
        if top:
            shift = ca[p] if p < n_eig else Fraction(0)
            push("lower", Move("apply", p + 1, shift, top))

    # stage 3: invert the root vector
    if len(x.terms) != 1:
        raise DescentError("invert", f"expected a single root vector, got {x}")
    (idx, c), = x.terms.items()
    if any(idx.i):
        raise DescentError("invert", f"{alg.render_index(idx)} still has a t-part")
    if idx == alg.one_index and c == 1:
        return w
    inv = alg.invert_root_vector(idx).scale(c.inverse())
    push("invert", Move("mul", element=inv))
    if x != alg.one():
        raise DescentError("invert", f"ended at {x} instead of 1")
    return w


# -- independent replay -----------------------------------------------------------------

class LeibnizDerivative:
    """d_p recomputed from its values on generators and the Leibniz rule.

    A basis vector E_alpha x^a t^i is rebuilt as the ordered product
    E_alpha * x^a * t_1 ... t_1 * t_2 ... (using only multiplication), and its
    derivative is the signed sum over factors.  On generators: d_p(E_alpha) = 0,
    d_p(x^a) = a_p x^a, d_p(t_q) = delta_pq.
    """

    def __init__(self, alg: ColorAlgebra):
        self.alg = alg
        self._cache: dict[tuple[int, BasisIndex], AlgebraElement] = {}

    def _factors(self, idx: BasisIndex) -> list[BasisIndex]:
        alg = self.alg
        out = []
        if idx.alpha != alg.group.zero:
            out.append(BasisIndex(idx.alpha, alg.sd.G.zero, (0,) * alg.k))
        if any(idx.a):
            out.append(BasisIndex(alg.group.zero, idx.a, (0,) * alg.k))
        for p, e in enumerate(idx.i):
            unit = tuple(int(q == p) for q in range(alg.k))
            out.extend([BasisIndex(alg.group.zero, alg.sd.G.zero, unit)] * e)
        return out

    def _d_generator(self, p: int, g: BasisIndex) -> AlgebraElement:
        alg = self.alg
        ks = alg.ksig
        if any(g.i):
            q = g.i.index(1)
            return alg.one() if (q == p - 1 and p > ks.k1) else alg.zero()
        if any(g.a) and p <= ks.k1 + ks.k2:
            return alg.basis(g, alg.field.rational(alg.sd.G.coords(g.a)[p - 1]))
        return alg.zero()

    def basis_derivative(self, p: int, idx: BasisIndex) -> AlgebraElement:
        key = (p, idx)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        fs = self._factors(idx)
        gens = [alg.basis(f) for f in fs]
        prod = alg.one()
        for g in gens:
            prod = prod * g
        c0 = prod.coefficient(idx)
        if len(prod) != 1 or not c0:
            raise ArithmeticError(f"factorization of {alg.render_index(idx)} does not reproduce it")
        dcolor = alg.group.neg(alg.t_colors[p - 1])
        total = alg.zero()
        left = alg.one()
        passed = alg.group.zero
        for s, g in enumerate(gens):
            dg = self._d_generator(p, fs[s])
            if dg:
                term = left * dg
                for h in gens[s + 1 :]:
                    term = term * h
                total = total + term.scale(alg.bichar.eps(dcolor, passed))
            left = left * g
            passed = alg.group.add(passed, alg.color_of(fs[s]))
        out = total.scale(c0.inverse())
        self._cache[key] = out
        return out

    def apply(self, p: int, x: AlgebraElement) -> AlgebraElement:
        out = self.alg.zero()
        for idx, c in x.terms.items():
            out = out + self.basis_derivative(p, idx).scale(c)
        return out


def replay(alg: ColorAlgebra, witness: Witness, start: AlgebraElement | None = None) -> Report:
    """Check that the moves carry the start element to 1, recomputing every derivative independently."""
    rep = Report("descent_replay")
    start = witness.start if start is None else start
    x = start
    D = LeibnizDerivative(alg)
    for n, m in enumerate(witness.moves):
        rep.checked += 1
        if m.kind == "apply":
            if not 1 <= m.p <= alg.k:
                rep.fail("descent.move", f"move {n}: no derivation d_{m.p}", n)
                return rep
            shift = alg.field.rational(m.shift)
            for _ in range(m.power):
                x = D.apply(m.p, x) - x.scale(shift)
        elif m.kind == "mul":
            if m.element is None or m.element.algebra is not alg:
                rep.fail("descent.move", f"move {n}: multiplier is not an element of A", n)
                return rep
            x = m.element * x
        else:
            rep.fail("descent.move", f"move {n}: unknown kind {m.kind}", n)
            return rep
    rep.checked += 1
    if x != alg.one():
        rep.fail("descent.result", f"chain ends at {x}, not 1")
    return rep


def dumps(witness: Witness) -> str:
    return json.dumps(witness.to_json(), indent=2)
