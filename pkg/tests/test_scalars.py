import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coloralg.scalars import CyclotomicField

ORDERS = [2, 4, 6, 8, 12]


def scalars(order):
    F = CyclotomicField(order)
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coef, min_size=F.degree, max_size=F.degree).map(
        lambda cs: sum((F.rational(c) * F.root_of_unity(j) for j, c in enumerate(cs)), F.zero)
    )


def field_and_pair():
    return st.sampled_from(ORDERS).flatmap(lambda L: st.tuples(st.just(L), scalars(L), scalars(L)))


def test_fields_are_cached():
    assert CyclotomicField(4) is CyclotomicField(4)


@pytest.mark.parametrize("order,degree", [(2, 1), (4, 2), (6, 2), (8, 4), (12, 4)])
def test_degree_is_euler_phi(order, degree):
    assert CyclotomicField(order).degree == degree


@pytest.mark.parametrize("order", ORDERS)
def test_root_is_primitive(order):
    F = CyclotomicField(order)
    z = F.root_of_unity(1)
    assert z**order == F.one
    assert all(z**j != F.one for j in range(1, order))


def test_small_identities():
    F = CyclotomicField(4)
    i = F.root_of_unity(1)
    assert i * i == -F.one
    F6 = CyclotomicField(6)
    w = F6.root_of_unity(1)
    # zeta_6^2 - zeta_6 + 1 = 0
    assert w * w - w + F6.one == F6.zero
    assert F6.root_of_unity(3) == -F6.one


def test_parse_render_examples():
    F = CyclotomicField(6)
    x = F.parse("1/2 - 3*z")
    assert str(x) == "1/2 - 3*z"
    assert F.parse(str(F.root_of_unity(5))) == F.root_of_unity(5)
    with pytest.raises(ValueError):
        F.parse("2 3")


@given(field_and_pair())
def test_embedding_is_a_ring_map(data):
    _, x, y = data
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9
    assert abs((x + y).to_complex() - (x.to_complex() + y.to_complex())) < 1e-9


@given(field_and_pair())
def test_field_axioms(data):
    L, x, y = data
    F = CyclotomicField(L)
    assert x * y == y * x
    assert (x + y) - y == x
    if x:
        assert x * x.inverse() == F.one
        assert (y / x) * x == y


@given(st.sampled_from(ORDERS).flatmap(lambda L: st.tuples(st.just(L), scalars(L))))
def test_render_round_trip(data):
    L, x = data
    F = CyclotomicField(L)
    assert F.parse(str(x)) == x
    assert hash(F.parse(str(x))) == hash(x)


@given(st.sampled_from(ORDERS), st.integers(-50, 50))
def test_root_exponent(L, j):
    F = CyclotomicField(L)
    assert F.root_exponent(F.root_of_unity(j)) == j % L
    assert abs(F.root_of_unity(j).to_complex() - cmath.exp(2j * cmath.pi * j / L)) < 1e-12


def test_rational_equality():
    F = CyclotomicField(8)
    assert F.rational(Fraction(3, 4)) == Fraction(3, 4)
    assert F.root_exponent(F.rational(2)) is None
