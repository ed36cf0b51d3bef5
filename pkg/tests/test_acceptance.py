"""The seven acceptance criteria, each at its stated size, tolerance and time budget.

Run directly (``python tests/test_acceptance.py``) for one PASS/FAIL line per
criterion, or through pytest, which prints the same lines in its summary.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, quantum_torus_data  # noqa: E402

from coloralg import derivations as der  # noqa: E402
from coloralg import descent, lie, sampling  # noqa: E402
from coloralg.algebra import check_associativity, check_color_commutativity  # noqa: E402
from coloralg.config import fixture_names, from_dict, load_fixture  # noqa: E402
from coloralg.report import ConfigurationError  # noqa: E402
from coloralg.simplicity import graded_closures, simplicity_check, verify_certificate  # noqa: E402
from coloralg.structure import box, validate_f_cocycle  # noqa: E402
from coloralg.suites import build_target, compose_oracle  # noqa: E402
from coloralg.weyl import WeylAlgebra  # noqa: E402

SEED = 20240601


def _weyl(n):
    return WeylAlgebra(load_fixture(f"grassmann_n{n}").algebra())


def criterion_1():
    t0 = time.perf_counter()
    got = {}
    for n in (1, 2, 3):
        rep = lie.dims_report(_weyl(n))
        got[n] = (rep["W"], rep["Wbar"])
    elapsed = time.perf_counter() - t0
    ok = got == {1: (2, 2), 2: (8, 14), 3: (24, 62)} and elapsed < 5
    return ok, f"dims (W, Wbar) = {got}", elapsed


def criterion_2():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for n, target, want in [(2, "W", "SIMPLE"), (3, "W", "SIMPLE"), (2, "Wbar", "SIMPLE"), (3, "Wbar", "SIMPLE"), (1, "W", "NOT-SIMPLE"), (1, "Wbar", "NOT-SIMPLE")]:
        T = lie.LieTable.build(build_target(_weyl(n), target))
        s0 = time.perf_counter()
        res = simplicity_check(T, seed=SEED)
        search = time.perf_counter() - s0
        checked = verify_certificate(T, res).ok
        good = res.verdict == want and checked and res.is_proof
        if want == "NOT-SIMPLE":
            good = good and bool(res.certificate.get("ideal"))
        if n == 3 and target == "Wbar":
            good = good and res.method == "burnside" and search < 60
            notes.append(f"n=3 Wbar envelope {search:.1f}s")
        ok = ok and good
        notes.append(f"n={n} {target} dim {res.dim} {res.verdict}/{res.method}")
    T = lie.LieTable.build(build_target(_weyl(3), "Wbar"))
    s0 = time.perf_counter()
    full, info = graded_closures(T, seed=SEED)
    fallback = time.perf_counter() - s0
    ok = ok and full and fallback < 10
    notes.append(f"fallback closures {info['closures_checked']} in {fallback:.1f}s")
    return ok, "; ".join(notes), time.perf_counter() - t0


def criterion_3():
    t0 = time.perf_counter()
    T = lie.LieTable.build(build_target(_weyl(2), "Wbar"))
    skew, jac = T.check_skew(), T.check_jacobi()
    counts = T.basis.color_counts()
    ok = skew.ok and jac.ok and jac.checked == 14**3 and T.dim == 14 and counts == {(0,): 6, (1,): 8}
    return ok, f"dim {T.dim}, even/odd {counts.get((0,))}/{counts.get((1,))}, Jacobi on {jac.checked} triples", time.perf_counter() - t0


def criterion_4():
    t0 = time.perf_counter()
    cfg = load_fixture("mixed_k1111")
    alg = cfg.algebra()
    ks = alg.ksig
    # super sign: eps(a, b) = (-1)^(|a||b|) with |a| = 1 exactly on Gamma_-
    odd = {a: not alg.bichar.is_plus(a) for a in alg.group.elements()}
    one = alg.field.one
    super_like = all(alg.bichar.eps(a, b) == (-one if odd[a] and odd[b] else one) for a in odd for b in odd)
    setup = (ks.k1, ks.k2, ks.k3, ks.k4) == (1, 1, 1, 1) and alg.group.invariant_factors == (2, 2) and not super_like
    trunc = cfg.truncation()
    idx = alg.window(trunc)
    setup = setup and trunc.max_t_degree == 3 and sorted(trunc.a_window) == sorted(box(2, 1))
    assoc = check_associativity(alg, idx)
    comm = check_color_commutativity(alg, idx)
    leib = der.leibniz_sweep(alg, idx)
    elapsed = time.perf_counter() - t0
    ok = setup and assoc.ok and comm.ok and leib.ok and elapsed < 120
    return ok, f"window {len(idx)}: {assoc.checked} associativity triples, {comm.checked} commutation pairs, {leib.checked} Leibniz checks", elapsed


def criterion_5():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for name in ("grassmann_n3", "polynomial_k3", "mixed_k1111"):
        cfg = load_fixture(name)
        alg = cfg.algebra()
        elems = sampling.homogeneous_elements(alg, alg.window(cfg.truncation()), 200, SEED)
        passed = 0
        for u in elems:
            try:
                w = descent.d_simplicity_descent(alg, u)
            except descent.DescentError:
                continue
            passed += descent.replay(alg, w).ok
        ok = ok and passed == 200 and all(elems)
        notes.append(f"{name} {passed}/200")
    return ok, ", ".join(notes), time.perf_counter() - t0


def criterion_6():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for name in fixture_names():
        try:
            cfg = load_fixture(name)
        except ConfigurationError:
            continue
        W = WeylAlgebra(cfg.algebra())
        if lie.is_finite(W.alg):
            idx, mus = lie.algebra_basis(W.alg), W.mus()
        else:
            trunc = cfg.truncation()
            idx, mus = W.alg.window(trunc), W.mus(trunc.max_t_degree)
        rep = compose_oracle(W, idx, mus, random.Random(SEED), 500)
        ok = ok and rep.ok and rep.checked == 500
        notes.append(f"{name} {rep.checked - len(rep.violations)}/500")
    return ok, ", ".join(notes), time.perf_counter() - t0


def criterion_7():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for m in (1, 2, 3):
        sd = from_dict(quantum_torus_data(m)).structure
        rep = validate_f_cocycle(sd.canonical_f, box(m, 2), hat=sd.hat, bichar=sd.bichar)
        ok = ok and rep.ok
        notes.append(f"m={m} {rep.checked} checks")
    try:
        load_fixture("corrupted_e_table")
        ok = False
        notes.append("corrupted e-table accepted")
    except ConfigurationError as exc:
        hits = [v for r in exc.reports for v in r.violations if v.rule == "e.cocycle"]
        ok = ok and bool(hits) and hits[0].where is not None and len(hits[0].where) == 3
        notes.append(f"corrupted e-table fails at {hits[0].where if hits else None}")
    elapsed = time.perf_counter() - t0
    return ok and elapsed < 5, "; ".join(notes), elapsed


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


def _line(n, ok, summary, elapsed):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {summary}"


@pytest.mark.parametrize("n", range(1, 8))
def test_criterion(n):
    ok, summary, elapsed = CRITERIA[n - 1]()
    line = _line(n, ok, summary, elapsed)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = []
    for n, fn in enumerate(CRITERIA, 1):
        ok, summary, elapsed = fn()
        results.append(ok)
        print(_line(n, ok, summary, elapsed), flush=True)
    sys.exit(0 if all(results) else 1)
