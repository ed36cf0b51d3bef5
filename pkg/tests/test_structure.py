from fractions import Fraction

import pytest
from conftest import fixture_config, quantum_torus_data

from coloralg.config import from_dict
from coloralg.grading import Bicharacter, GradingGroup
from coloralg.report import ConfigurationError
from coloralg.structure import GammaZero, GroupG, KSignature, box, validate_f_cocycle, validate_gamma_zero, validate_ksignature

SUPER = Bicharacter.superalgebra()
KLEIN = Bicharacter.from_exponents(GradingGroup((2, 2)), [[2, 2], [2, 0]])


def rules(rep):
    return {v.rule for v in rep.violations}


def test_ksignature_blocks():
    ks = KSignature(1, 1, 1, 1, t_colors=((0, 0), (0, 1), (1, 0)))
    assert validate_ksignature(ks, KLEIN).ok
    assert [ks.block(p) for p in range(1, 5)] == ["grading", "mixed", "plus", "minus"]
    assert ks.exponent_bound(4) == 1 and ks.exponent_bound(3) is None


@pytest.mark.parametrize(
    "ks,rule",
    [
        (KSignature(0, 0, 0, 1, t_colors=((0,),)), "k.t_colors"),
        (KSignature(0, 0, 1, 0, t_colors=((1,),)), "k.t_colors"),
        (KSignature(0, 1, 0, 0, t_colors=((1,),)), "k.t_colors"),
        (KSignature(0, 0, 0, 2, t_colors=((1,),)), "k.t_colors"),
        (KSignature(0, 0, 0, 0, t_colors=()), "k.positive"),
    ],
)
def test_ksignature_violations(ks, rule):
    assert rule in rules(validate_ksignature(ks, SUPER))


def test_k4_needs_minus_colors():
    trivial = Bicharacter.from_exponents(GradingGroup((2,)), [[0]])
    rep = validate_ksignature(KSignature(0, 0, 0, 1, t_colors=((1,),)), trivial)
    assert "k.k4_requires_minus" in rules(rep)


def test_group_g_coordinates():
    G = GroupG(((Fraction(1), Fraction(0)), (Fraction(1, 2), Fraction(1))), ((0, 1), (0, 0)), 2)
    assert G.coords((2, -1)) == (Fraction(3, 2), Fraction(-1))
    assert G.add((1, 2), G.neg((1, 2))) == G.zero


def test_invalid_fixtures_report_their_rules():
    with pytest.raises(ConfigurationError) as exc:
        fixture_config("invalid_plus_in_k4")
    assert "k.t_colors" in {v.rule for r in exc.value.reports for v in r.violations}
    with pytest.raises(ConfigurationError) as exc:
        fixture_config("invalid_degenerate_G")
    found = {v.rule for r in exc.value.reports for v in r.violations}
    assert {"G.nondegenerate", "G.free"} <= found


def test_hat_must_be_plus():
    data = quantum_torus_data(1)
    data["gamma"] = {"invariant_factors": [2]}
    data["epsilon"] = {"exponent_matrix": [[1]], "denominator": 2}
    data["hat"] = {"images": [[1]]}
    with pytest.raises(ConfigurationError) as exc:
        from_dict(data)
    assert "hat.plus" in {v.rule for r in exc.value.reports for v in r.violations}


def test_corrupted_e_table_is_pinpointed():
    with pytest.raises(ConfigurationError) as exc:
        fixture_config("corrupted_e_table")
    bad = [v for r in exc.value.reports for v in r.violations if v.rule == "e.cocycle"]
    assert bad
    assert bad[0].where == ((1, 0), (1, 0), (2, 0))


def test_generated_e_table_is_a_cocycle():
    b = Bicharacter.from_exponents(GradingGroup((3, 3)), [[0, 2], [4, 0]])
    gz = GammaZero.from_generators(b, [[1, 0], [0, 1]])
    assert len(gz.elements) == 9
    assert validate_gamma_zero(gz, b).ok
    # e(a,b) = eps(a,b) e(b,a) pins the commutator of E_(1,0) and E_(0,1)
    assert gz.e((1, 0), (0, 1)) == b.eps((1, 0), (0, 1)) * gz.e((0, 1), (1, 0))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_canonical_f_cocycle(m):
    sd = from_dict(quantum_torus_data(m)).structure
    rep = validate_f_cocycle(sd.canonical_f, box(m, 2), hat=sd.hat, bichar=sd.bichar)
    assert rep.ok and rep.checked > 0


def test_canonical_f_is_a_square_root():
    sd = fixture_config("quantum_torus_m3").structure
    for a in box(3, 1):
        for b in box(3, 1):
            assert sd.canonical_f(a, b) == sd.bichar.eps(sd.hat(a), sd.hat(b)) * sd.canonical_f(b, a)


def test_corrupted_f_fails():
    sd = fixture_config("quantum_torus_m3").structure
    sample = box(3, 1)
    target = ((1, 0, 0), (0, 1, 0))

    def bad(a, b):
        v = sd.canonical_f(a, b)
        return -v if (a, b) == target else v

    rep = validate_f_cocycle(bad, sample, hat=sd.hat, bichar=sd.bichar)
    assert not rep.ok
    assert rules(rep) <= {"f.cocycle", "f.symmetry"}


def test_mixed_fixture_structure():
    sd = fixture_config("mixed_k1111").structure
    assert sd.ksig.k == 4 and sd.G.rank == 2
    assert sd.theta((1, 0), (0, 1)) == sd.group.zero
    assert validate_f_cocycle(sd.canonical_f, box(2, 2), hat=sd.hat, bichar=sd.bichar).ok
