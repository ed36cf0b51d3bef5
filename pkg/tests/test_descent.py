import random
from fractions import Fraction

import pytest
from conftest import fixture_algebra, fixture_config
from hypothesis import given
from hypothesis import strategies as st

from coloralg import descent, sampling
from coloralg.descent import Move

VALID = [
    "grassmann_n1",
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


def test_cube_of_t():
    alg = fixture_algebra("trivial_polynomial_k3")
    w = descent.d_simplicity_descent(alg, alg.parse("t[3]"))
    assert [str(m) for m in w.moves] == ["apply 1 shift 0 power 3", "mul 1/6"]
    assert descent.replay(alg, w).ok


def test_group_algebra_inverse():
    alg = fixture_algebra("group_algebra_k1")
    w = descent.d_simplicity_descent(alg, alg.parse("x[1]"))
    assert [str(m) for m in w.moves] == ["mul x[-1]"]


def test_one_needs_no_moves():
    alg = fixture_algebra("mixed_k1111")
    assert descent.d_simplicity_descent(alg, alg.one()).moves == []


def test_separation_stage():
    alg = fixture_algebra("mixed_k1111")
    # hat(1,0) = hat(1,2) = (0,1) and t_2 has color 0, so both terms share one color
    x = alg.parse("x[1,0] + 2 x[1,2] t[0,3,0,0]")
    assert x.is_homogeneous()
    w = descent.d_simplicity_descent(alg, x)
    assert w.stages[0] == "separate"
    assert descent.replay(alg, w).ok


def test_rejects_bad_input():
    alg = fixture_algebra("mixed_k1111")
    with pytest.raises(ValueError):
        descent.d_simplicity_descent(alg, alg.zero())
    with pytest.raises(ValueError):
        descent.d_simplicity_descent(alg, alg.parse("1 + t[0,0,0,1]"))


def test_script_round_trip():
    alg = fixture_algebra("polynomial_k3")
    w = descent.d_simplicity_descent(alg, alg.parse("t[2,1] - 3 t[2,4]"))
    again = descent.parse_script(alg, w.to_script())
    assert str(again.start) == str(w.start)
    assert [str(m) for m in again.moves] == [str(m) for m in w.moves]
    assert descent.replay(alg, again).ok


def test_tampered_witness_fails():
    alg = fixture_algebra("mixed_k1111")
    w = descent.d_simplicity_descent(alg, alg.parse("x[1,1] t[0,2,1,1]"))
    m = w.moves[0]
    w.moves[0] = Move(m.kind, m.p, m.shift + 1, m.power)
    assert not descent.replay(alg, w).ok
    w2 = descent.d_simplicity_descent(alg, alg.parse("x[1,1] t[0,2,1,1]"))
    assert not descent.replay(alg, w2, start=alg.parse("2 x[1,1] t[0,2,1,1]")).ok


def test_replay_rejects_unknown_derivation():
    alg = fixture_algebra("trivial_polynomial_k3")
    w = descent.Witness(alg.parse("t[1]"), [Move("apply", 7, Fraction(0), 1)], ["?"])
    rep = descent.replay(alg, w)
    assert not rep.ok and rep.violations[0].rule == "descent.move"


def test_json_shape():
    alg = fixture_algebra("trivial_polynomial_k3")
    data = descent.d_simplicity_descent(alg, alg.parse("t[2]")).to_json()
    assert data["start"] == "t[2]" and data["result"] == "1"
    assert data["moves"][0] == {"move": "apply", "p": 1, "shift": "0", "power": 2, "stage": "lower"}


@pytest.mark.parametrize("name", VALID)
@given(seed=st.integers(0, 2**20))
def test_every_homogeneous_element_reaches_one(name, seed):
    alg = fixture_algebra(name)
    x = sampling.homogeneous_element(alg, sampling.by_color(alg, window(name)), random.Random(seed), max_terms=5)
    w = descent.d_simplicity_descent(alg, x)
    assert descent.replay(alg, w).ok
