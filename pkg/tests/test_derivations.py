import random

import pytest
from conftest import fixture_algebra, fixture_config
from hypothesis import given
from hypothesis import strategies as st

from coloralg import derivations as der
from coloralg import sampling
from coloralg.derivations import Classification, DerivationSpec, Kind
from coloralg.descent import LeibnizDerivative
from coloralg.scalars import CyclotomicField

VALID = [
    "grassmann_n2",
    "grassmann_n3",
    "trivial_polynomial_k3",
    "polynomial_k3",
    "mixed_k1111",
    "group_algebra_k1",
    "quantum_torus_m3",
    "twisted_torus",
]


def window(name):
    return fixture_algebra(name).window(fixture_config(name).truncation())


def test_canonical_kinds():
    alg = fixture_algebra("mixed_k1111")
    kinds = [d.kind for d in der.canonical_derivations(alg)]
    assert kinds == [Kind.GRADING, Kind.MIXED, Kind.LOWERING, Kind.LOWERING]
    assert str(der.canonical(alg, 2)) == "mixed(2)"
    assert [der.color(alg, d) for d in der.canonical_derivations(alg)] == [(0, 0), (0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize("spec", [DerivationSpec(Kind.GRADING, 3), DerivationSpec(Kind.LOWERING, 1), DerivationSpec(Kind.MIXED, 3), DerivationSpec(Kind.MIXED, 9)])
def test_illegal_specs(spec):
    with pytest.raises(ValueError):
        der.check_spec(fixture_algebra("mixed_k1111"), spec)


def test_known_values():
    alg = fixture_algebra("trivial_polynomial_k3")
    d = der.canonical(alg, 1)
    assert der.apply(alg, d, alg.parse("t[3]")) == alg.parse("3 t[2]")
    # t2 t1 = eps(t2, t1) t1 t2, so d_2 passes t_1 with sign eps(-t2, t1) = zeta_6^2
    alg = fixture_algebra("polynomial_k3")
    z = alg.field.root_of_unity(1)
    assert der.apply(alg, der.canonical(alg, 2), alg.parse("t[1,1]")) == alg.parse("t[1,0]").scale(z * z)
    assert der.apply(alg, der.canonical(alg, 1), alg.parse("t[1,1]")) == alg.parse("t[0,1]")
    # mixed: d_2 = grading part a_2 plus lowering in t_2
    alg = fixture_algebra("mixed_k1111")
    x = alg.parse("x[1,1] t[0,1,0,0]")
    assert der.apply(alg, der.canonical(alg, 1), x) == x.scale(alg.field.rational("3/2"))
    assert der.apply(alg, der.canonical(alg, 2), x) == x + alg.parse("x[1,1]")
    # t_4 is odd and passes E and x^a of color hat(a)
    y = alg.parse("x[1,0] t[0,0,0,1]")
    assert der.apply(alg, der.canonical(alg, 4), y) == alg.parse("x[1,0]").scale(alg.bichar.eps((1, 0), (0, 1)))


@pytest.mark.parametrize("name", VALID)
def test_formula_matches_leibniz_route(name):
    alg = fixture_algebra(name)
    D = LeibnizDerivative(alg)
    for d in der.canonical_derivations(alg):
        for u in window(name):
            assert der.apply(alg, d, alg.basis(u)) == D.basis_derivative(d.p, u), (d, alg.render_index(u))


@pytest.mark.parametrize("name", VALID)
def test_leibniz_sweep(name):
    alg = fixture_algebra(name)
    rep = der.leibniz_sweep(alg, window(name))
    assert rep.ok and rep.checked == alg.k * len(window(name)) ** 2


@pytest.mark.parametrize("name", VALID)
def test_color_commutation_of_derivations(name):
    assert der.eps_commute_check(fixture_algebra(name), window(name)).ok


@pytest.mark.parametrize(
    "name,expected",
    [
        ("mixed_k1111", ["SemiSimple", "LocallyFiniteNotSemiSimple", "LocallyNilpotent", "LocallyNilpotent"]),
        ("grassmann_n2", ["LocallyNilpotent", "LocallyNilpotent"]),
        ("trivial_polynomial_k3", ["LocallyNilpotent"]),
        ("quantum_torus_m3", ["SemiSimple"] * 3),
        ("group_algebra_k1", ["SemiSimple"]),
    ],
)
def test_classification(name, expected):
    alg = fixture_algebra(name)
    got = [der.classify(alg, d, window(name)).value for d in der.canonical_derivations(alg)]
    assert got == expected


def test_zero_operator_is_semisimple():
    alg = fixture_algebra("quantum_torus_m3")
    idx = [alg.one_index]
    assert der.classify(alg, der.canonical(alg, 1), idx) is Classification.SEMISIMPLE


def test_minimal_polynomial_of_jordan_form():
    F = CyclotomicField(2)
    r = F.rational
    # J_2(3) + diag(3, 5): minimal polynomial (x-3)^2 (x-5) = x^3 - 11x^2 + 39x - 45
    M = [{0: r(3)}, {0: r(1), 1: r(3)}, {2: r(3)}, {3: r(5)}]
    assert der.minimal_polynomial(M, F) == [r(-45), r(39), r(-11), r(1)]


def test_window_must_be_invariant():
    alg = fixture_algebra("polynomial_k3")
    with pytest.raises(Exception):
        der.matrix_on(alg, der.canonical(alg, 1), [alg.index(i=(1, 0))])


@pytest.mark.parametrize("name", VALID)
@given(seed=st.integers(0, 2**16))
def test_random_leibniz(name, seed):
    alg = fixture_algebra(name)
    rng = random.Random(seed)
    groups = sampling.by_color(alg, window(name))
    u = sampling.homogeneous_element(alg, groups, rng)
    v = sampling.homogeneous_element(alg, groups, rng)
    for d in der.canonical_derivations(alg):
        assert der.leibniz_check(alg, d, u, v).ok


def test_combination_of_derivations():
    alg = fixture_algebra("mixed_k1111")
    d1, d2 = der.canonical(alg, 1), der.canonical(alg, 2)
    x = alg.parse("x[1,0] t[0,2,0,0]")
    combo = {d1: 2, d2: -1}
    assert der.apply(alg, combo, x) == der.apply(alg, d1, x).scale(2) - der.apply(alg, d2, x)
    with pytest.raises(ValueError):
        der.combo_color(alg, {d1: 1, der.canonical(alg, 4): 1})
