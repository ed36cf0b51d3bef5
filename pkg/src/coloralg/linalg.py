"""Sparse exact linear algebra over Q(zeta_L), plus reduction modulo primes.

Vectors are dicts ``column -> Scalar`` with no zero entries.  Columns are any
hashable keys; pivots are chosen by a fixed column order so results are
reproducible.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from sympy import isprime

from .scalars import CyclotomicField, Scalar

Vector = dict


def axpy(y: Vector, c: Scalar, x: Vector) -> None:
    """y += c * x in place."""
    for col, v in x.items():
        w = y.get(col)
        w = c * v if w is None else w + c * v
        if w:
            y[col] = w
        else:
            y.pop(col, None)


def scale(x: Vector, c: Scalar) -> Vector:
    return {col: v * c for col, v in x.items()} if c else {}


class EchelonBasis:
    """Fully reduced row-echelon basis of a growing subspace.

    Every stored row has pivot coefficient 1 and no other stored row has a
    nonzero entry in that pivot column, so the coordinates of a vector in the
    span are simply its entries at the pivot columns.  With ``track=True`` each
    row also records which combination of the *added* vectors produced it.
    """

    def __init__(self, order: Callable[[Hashable], object] | None = None, track: bool = False):
        self.order = order or (lambda c: c)
        self.rows: list[Vector] = []
        self.pivots: list[Hashable] = []
        self._pivot_row: dict[Hashable, int] = {}
        self.track = track
        self.combos: list[Vector] = []
        self._added = 0

    def __len__(self):
        return len(self.rows)

    def _pivot(self, vec: Vector):
        return min(vec, key=self.order)

    def reduce(self, vec: Vector, combo: Vector | None = None) -> Vector:
        r = dict(vec)
        for col in [c for c in r if c in self._pivot_row]:
            c = r.get(col)
            if c:
                row = self._pivot_row[col]
                axpy(r, -c, self.rows[row])
                if combo is not None:
                    axpy(combo, -c, self.combos[row])
        return r

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Vector) -> Vector | None:
        """Insert ``vec``; return None if independent, else the dependency combo (tracked mode) or {}."""
        field_one = None
        combo = None
        if self.track:
            any_val = next(iter(vec.values()), None)
            field_one = any_val.field.one if any_val is not None else None
            combo = {self._added: field_one} if field_one is not None else {}
        self._added += 1
        r = self.reduce(vec, combo)
        if not r:
            return combo if self.track else {}
        piv = self._pivot(r)
        inv = r[piv].inverse()
        r = scale(r, inv)
        if self.track:
            combo = scale(combo, inv)
        # clear the new pivot from existing rows
        for idx, row in enumerate(self.rows):
            c = row.get(piv)
            if c:
                axpy(row, -c, r)
                if self.track:
                    axpy(self.combos[idx], -c, combo)
        self._pivot_row[piv] = len(self.rows)
        self.rows.append(r)
        self.pivots.append(piv)
        if self.track:
            self.combos.append(combo)
        return None

    def coordinates(self, vec: Vector) -> list[Scalar] | None:
        """Coordinates of ``vec`` with respect to ``self.rows``; None if outside the span."""
        if self.reduce(vec):
            return None
        zero = None
        out = []
        for piv in self.pivots:
            v = vec.get(piv)
            if v is None:
                if zero is None:
                    some = next(iter(vec.values()), None)
                    zero = some.field.zero if some is not None else 0
                v = zero
            out.append(v)
        return out


def rank(vectors: Iterable[Vector], order=None) -> int:
    eb = EchelonBasis(order)
    for v in vectors:
        if v:
            eb.add(v)
    return len(eb)


def kernel(columns: list[Vector], field: CyclotomicField) -> list[Vector]:
    """Basis of {x : sum_j x_j columns[j] = 0}, as dicts ``j -> Scalar``."""
    eb = EchelonBasis(track=True)
    out = []
    for j, col in enumerate(columns):
        if not col:
            out.append({j: field.one})
            eb._added += 1
            continue
        dep = eb.add(col)
        if dep is not None:
            out.append(dep)
    return out


# -- univariate polynomials over Scalars (coefficient lists, low degree first) --

def poly_trim(p: list[Scalar]) -> list[Scalar]:
    while p and not p[-1]:
        p.pop()
    return p


def poly_divmod(a: list[Scalar], b: list[Scalar]):
    a = poly_trim(list(a))
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    zero = b[0].field.zero
    q = [zero] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - c * bj
        poly_trim(a)
    return poly_trim(q), a


def poly_gcd(a: list[Scalar], b: list[Scalar]) -> list[Scalar]:
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def poly_derivative(p: list[Scalar]) -> list[Scalar]:
    return poly_trim([c * j for j, c in enumerate(p)][1:])


# -- reduction modulo a prime ----------------------------------------------

class ModularReduction:
    """Ring map Z_(p)[zeta_L] -> F_p sending zeta_L to a primitive L-th root of unity.

    Linear independence of reduced vectors implies independence over
    Q(zeta_L), since reduction cannot raise the rank of a matrix.
    """

    def __init__(self, field: CyclotomicField, prime: int):
        L = field.order
        if (prime - 1) % L:
            raise ValueError(f"prime {prime} is not 1 mod {L}")
        self.field = field
        self.prime = prime
        self.root = _primitive_root_of_order(L, prime)
        self._powers = [pow(self.root, j, prime) for j in range(field.degree)]

    def __call__(self, x: Scalar) -> int:
        p = self.prime
        if x.den % p == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
        s = sum(c * w for c, w in zip(x.num, self._powers))
        return s * pow(x.den, -1, p) % p


def primes_one_mod(L: int, start: int = 2**20):
    """Primes p = 1 mod L with p > start, in increasing order."""
    p = start - start % L + 1
    while True:
        if p > start and isprime(p):
            yield p
        p += L


def _primitive_root_of_order(L: int, p: int) -> int:
    factors = _prime_factors(L)
    for g in range(2, p):
        w = pow(g, (p - 1) // L, p)
        if all(pow(w, L // q, p) != 1 for q in factors):
            return w
    raise ValueError(f"no element of order {L} mod {p}")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
