import copy

import pytest
from conftest import fixture_algebra

from coloralg import lie
from coloralg.simplicity import graded_closures, simplicity_check, verify_certificate
from coloralg.suites import build_target
from coloralg.weyl import WeylAlgebra

_T = {}


def table(n, target):
    key = (n, target)
    if key not in _T:
        S = build_target(WeylAlgebra(fixture_algebra(f"grassmann_n{n}")), target)
        _T[key] = lie.LieTable.build(S)
    return _T[key]


def test_n1_witt_has_an_explicit_ideal():
    T = table(1, "W")
    res = simplicity_check(T)
    assert res.verdict == "NOT-SIMPLE" and res.method == "proper-ideal"
    ideal = [T.basis.element({int(k): T.field.parse(v) for k, v in vec.items()}) for vec in res.certificate["ideal"]]
    assert [str(x) for x in ideal] == ["d[1]"]
    assert verify_certificate(T, res).ok


def test_n1_wbar_is_abelian():
    res = simplicity_check(table(1, "Wbar"))
    assert res.verdict == "NOT-SIMPLE" and res.method == "abelian"
    assert verify_certificate(table(1, "Wbar"), res).ok


@pytest.mark.parametrize("target,dim", [("W", 8), ("Wbar", 14)])
def test_n2_is_simple_by_burnside(target, dim):
    T = table(2, target)
    res = simplicity_check(T)
    assert (res.verdict, res.method, res.dim) == ("SIMPLE", "burnside", dim)
    assert res.is_proof
    assert verify_certificate(T, res).ok


@pytest.mark.parametrize("n,target", [(2, "W"), (2, "Wbar"), (3, "W")])
def test_closure_route_agrees(n, target):
    T = table(n, target)
    res = simplicity_check(T, use_burnside=False, probes=8)
    assert res.verdict == "SIMPLE" and res.method == "graded-closure" and not res.is_proof
    assert verify_certificate(T, res).ok


@pytest.mark.parametrize("target", ["Weyl", "Wtilde"])
def test_non_simple_targets_yield_ideals(target):
    T = table(2, target)
    res = simplicity_check(T, probes=8)
    assert res.verdict == "NOT-SIMPLE"
    assert verify_certificate(T, res).ok
    assert 0 < len(res.certificate["ideal"]) < T.dim


def test_dropping_words_breaks_the_certificate():
    T = table(2, "Wbar")
    res = simplicity_check(T)
    bad = copy.deepcopy(res)
    key = max(bad.certificate["words"], key=lambda k: len(bad.certificate["words"][k]))
    bad.certificate["words"][key] = bad.certificate["words"][key][1:]
    assert not verify_certificate(T, bad).ok


def test_bad_prime_is_rejected():
    T = table(2, "W")
    res = simplicity_check(T)
    bad = copy.deepcopy(res)
    bad.certificate["prime"] = 524311
    assert not verify_certificate(T, bad).ok
    bad.certificate["prime"] = res.certificate["prime"]
    bad.certificate["root"] = 1
    assert not verify_certificate(T, bad).ok


def test_fake_ideal_is_rejected():
    T = table(2, "W")
    res = simplicity_check(table(1, "W"))
    res.certificate["ideal"] = [{"0": "1"}]
    res.dim = T.dim
    assert not verify_certificate(T, res).ok


def test_closures_find_the_center():
    T = table(2, "Weyl")
    ok, info = graded_closures(T, probes=4)
    assert not ok and info["ideal"]
