import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coloralg.grading import Bicharacter, GradingGroup, SignClass, validate_bicharacter
from coloralg.report import ConfigurationError

VALID = [
    ((2,), [[1]], 2),
    ((2, 2), [[2, 2], [2, 0]], None),
    ((3, 3), [[0, 2], [4, 0]], None),
    ((2, 2), [[0, 0], [0, 0]], None),
    ((4,), [[4]], None),
]


@pytest.mark.parametrize("factors,matrix,den", VALID)
def test_valid_bicharacters(factors, matrix, den):
    assert validate_bicharacter(GradingGroup(factors), matrix, den).ok


def test_invalid_bicharacters():
    g = GradingGroup((2, 2))
    rep = validate_bicharacter(g, [[0, 1], [1, 0]])
    assert {v.rule for v in rep.violations} >= {"bicharacter.order"}
    rep = validate_bicharacter(g, [[0, 2], [0, 0]])
    assert "bicharacter.skew" in {v.rule for v in rep.violations}
    assert validate_bicharacter(g, [[0]]).violations[0].rule == "bicharacter.shape"
    with pytest.raises(ConfigurationError):
        Bicharacter.from_exponents(g, [[0, 2], [0, 0]])


def test_superalgebra_signs():
    b = Bicharacter.superalgebra()
    assert b.sign_class((0,)) is SignClass.PLUS
    assert b.sign_class((1,)) is SignClass.MINUS
    assert b.eps((1,), (1,)) == -b.field.one
    assert b.minus_part() == [(1,)]


def test_klein_split():
    b = Bicharacter.from_exponents(GradingGroup((2, 2)), [[2, 2], [2, 0]])
    assert sorted(b.plus_part()) == [(0, 0), (0, 1)]
    assert sorted(b.minus_part()) == [(1, 0), (1, 1)]


@pytest.mark.parametrize("factors,matrix,den", VALID)
def test_bicharacter_laws_exhaustive(factors, matrix, den):
    g = GradingGroup(factors)
    b = Bicharacter.from_exponents(g, matrix, den)
    els = list(g.elements())
    one = b.field.one
    for x, y in itertools.product(els, repeat=2):
        assert b.eps(x, y) * b.eps(y, x) == one
        assert b.eps(x, x) in (one, -one)
        for z in els:
            assert b.eps(g.add(x, y), z) == b.eps(x, z) * b.eps(y, z)


@given(st.lists(st.integers(0, 5), min_size=2, max_size=2), st.lists(st.integers(0, 5), min_size=2, max_size=2))
def test_group_operations(x, y):
    g = GradingGroup((3, 3))
    a, c = g.element(x), g.element(y)
    assert g.sub(g.add(a, c), c) == a
    assert g.add(a, g.neg(a)) == g.zero
    assert g.scale(3, a) == g.zero
