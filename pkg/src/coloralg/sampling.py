"""Seeded random elements for probes and property checks."""

from __future__ import annotations

import random

from .algebra import AlgebraElement, BasisIndex, ColorAlgebra
from .weyl import WeylAlgebra, WeylElement

COEFFICIENTS = (1, -1, 2, -3, "1/2", "-2/3", 5)


def by_color(alg: ColorAlgebra, window: list[BasisIndex]) -> dict:
    out: dict = {}
    for u in window:
        out.setdefault(alg.color_of(u), []).append(u)
    return out


def _coef(alg: ColorAlgebra, rng: random.Random):
    c = alg.field.coerce(rng.choice(COEFFICIENTS))
    if alg.field.order > 2 and rng.random() < 0.3:
        c = c * alg.field.root_of_unity(rng.randrange(alg.field.order))
    return c


def homogeneous_element(alg: ColorAlgebra, groups: dict, rng: random.Random, max_terms: int = 4) -> AlgebraElement:
    """A nonzero homogeneous element with up to ``max_terms`` basis vectors of one random color."""
    col = rng.choice(sorted(groups))
    pool = groups[col]
    picks = rng.sample(pool, min(len(pool), rng.randint(1, max_terms)))
    return alg.element({u: _coef(alg, rng) for u in picks})


def homogeneous_elements(alg: ColorAlgebra, window: list[BasisIndex], count: int, seed: int, max_terms: int = 4) -> list[AlgebraElement]:
    rng = random.Random(seed)
    groups = by_color(alg, window)
    return [homogeneous_element(alg, groups, rng, max_terms) for _ in range(count)]


def algebra_element(alg: ColorAlgebra, window: list[BasisIndex], rng: random.Random, max_terms: int = 3) -> AlgebraElement:
    picks = rng.sample(window, min(len(window), rng.randint(1, max_terms)))
    return alg.element({u: _coef(alg, rng) for u in picks})


def weyl_element(W: WeylAlgebra, window: list[BasisIndex], mus: list, rng: random.Random, max_terms: int = 3) -> WeylElement:
    out = W.element()
    for _ in range(rng.randint(1, max_terms)):
        out = out + W.monomial(rng.choice(window), rng.choice(mus), _coef(W.alg, rng))
    return out
