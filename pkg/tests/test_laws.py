from __future__ import annotations

import itertools
import json

import numpy as np
import pytest

from ternalg.algebra import OMEGA_BRACKET, structure_constants
from ternalg.laws import (
    LIMITED,
    REALIFIED_EXACT,
    REALIFIED_FLOAT,
    LawReport,
    check_all_axioms,
    check_assoc,
    check_construction_conditions,
    check_ga15_identity,
    check_ga15_system,
    check_omega_symmetry,
    ga15_residual,
    q_associators_vanish,
)
from ternalg.scalar import cyc_embed, cyc_parse
from ternalg.subalg import canonical_2dim
from ternalg.zoo import (
    cubic_algebra,
    cubic_form,
    random_algebra,
    random_form,
    rect_algebra,
    rect_form,
    vector_algebra,
    zero_algebra,
)

import oracles


@pytest.fixture(scope="module")
def seed7():
    return random_algebra(7, 3)


def test_assoc_examples():
    assert check_assoc(rect_algebra(2, 3), 2).holds
    assert check_assoc(cubic_algebra(2, "A"), 2).holds
    assert check_assoc(vector_algebra(3), 2).holds
    assert check_assoc(vector_algebra(3), 1).verdict == "fails"
    assert check_assoc(zero_algebra(2), 1).holds and check_assoc(zero_algebra(2), 2).holds


def test_cubic_first_kind_counterexample():
    rep = check_assoc(cubic_algebra(2, "A"), 1)
    assert rep.verdict == "fails"
    assert rep.counterexample["args"] == ["X111", "X111", "X111", "X121", "X211"]
    X = [np.zeros((2, 2, 2), dtype=complex) for _ in range(3)]
    X[0][0, 0, 0] = X[1][0, 1, 0] = X[2][1, 0, 0] = 1
    p = oracles.cubic_product
    s = u = v = X[0]
    x, y = X[1], X[2]
    left = p(p(s, u, v), x, y)
    mid = p(s, p(u, v, x), y)
    assert not np.allclose(left, mid) or not np.allclose(mid, p(s, u, p(v, x, y)))


def test_perturbed_bracket_breaks_symmetry(seed7):
    assert check_omega_symmetry(seed7).holds
    rep = check_omega_symmetry(seed7, OMEGA_BRACKET.perturbed(0, 1))
    assert rep.verdict == "fails" and rep.counterexample["args"] == ["e1", "e1", "e2"]


@pytest.mark.parametrize("make", [lambda: cubic_algebra(2, "A"), lambda: vector_algebra(3),
                                  lambda: rect_algebra(2, 2), lambda: zero_algebra(2)])
def test_ga15_holds_on_second_kind_examples(make):
    A = make()
    assert check_ga15_identity(A).holds


def test_reduced_bracket_is_special_to_vectors():
    assert check_ga15_identity(vector_algebra(3), "reduced").holds
    assert check_ga15_identity(rect_algebra(2, 2), "reduced").verdict == "fails"


def test_ga15_counterexample_matches_float_oracle(seed7):
    rep = check_ga15_identity(seed7)
    assert rep.verdict == "fails"
    assert rep.counterexample["args"] == ["e1", "e1", "e2", "e2", "e3"]
    prod = oracles.tensor_product(seed7.product.to_complex())
    br = lambda s, u, v: oracles.omega_bracket(prod, s, u, v)  # noqa: E731
    e = np.eye(3)
    first = None
    for idx in itertools.product(range(3), repeat=5):
        if not np.allclose(oracles.ga15_residual(br, *(e[i] for i in idx)), 0):
            first = idx
            break
    assert first == (0, 0, 1, 1, 2)
    want = oracles.ga15_residual(br, *(e[i] for i in first))
    got = np.array([cyc_embed(cyc_parse(t)) for t in rep.counterexample["residual"]])
    assert np.allclose(got, want)


def test_tensor_route_matches_element_route(seed7):
    rep = check_ga15_identity(seed7)
    e = seed7.basis()
    res = ga15_residual(seed7, "omega", [e[i] for i in rep.counterexample["indices"]])
    assert [cyc_parse(t) for t in rep.counterexample["residual"]] == list(res.coords)


def test_ga15_system_agrees_with_identity(seed7):
    assert check_ga15_system(structure_constants(cubic_algebra(2, "A"))).holds
    assert check_ga15_system(canonical_2dim("II")).holds
    bad = check_ga15_system(structure_constants(seed7))
    assert bad.verdict == "fails"


def test_construction_conditions():
    for make in (lambda: rect_form(2, 3), lambda: cubic_form(2)):
        A, spec = make()
        assert check_construction_conditions(spec, 2).holds
        assert check_assoc(A, 2).holds
        assert check_construction_conditions(spec, 1).verdict == "fails"
    A, spec = random_form(3)
    rep = check_construction_conditions(spec, 1)
    assert rep.verdict == "fails" and rep.counterexample["condition"] == "product=kind"
    assert check_assoc(A, 1).verdict == "fails"


def test_q_associators_match_assoc():
    assert q_associators_vanish(cubic_algebra(2, "A"), 2)
    assert not q_associators_vanish(cubic_algebra(2, "A"), 1)
    assert not q_associators_vanish(random_algebra(7, 3), 1)


def test_report_invariants_and_json(seed7):
    rep = check_ga15_identity(seed7)
    data = json.loads(rep.dumps())
    assert data["verdict"] == "fails" and data["certifying"]
    assert "counterexample" not in check_omega_symmetry(seed7).to_json()
    assert not rep and bool(check_omega_symmetry(seed7))
    with pytest.raises(ValueError):
        LawReport("x", "fails", "exact", 1)
    assert "counterexample" in str(rep)


def test_determinism_and_jobs_invariance(seed7):
    a = check_ga15_identity(seed7, jobs=1).to_json()
    b = check_ga15_identity(seed7, jobs=3).to_json()
    c = check_ga15_identity(seed7, jobs=1).to_json()
    assert a == b == c
    A = cubic_algebra(2, "A")
    assert check_assoc(A, 1, jobs=1).to_json() == check_assoc(A, 1, jobs=2).to_json()


def test_float_mode_agrees(seed7):
    ex, fl = check_ga15_identity(seed7), check_ga15_identity(seed7, mode="float")
    assert fl.mode == "float" and ex.counterexample["args"] == fl.counterexample["args"]
    assert check_ga15_identity(cubic_algebra(2, "A"), mode="float").holds
    with pytest.raises(ValueError):
        check_ga15_identity(seed7, mode="float", tol=0)
    with pytest.raises(ValueError):
        check_ga15_identity(seed7, mode="interval")


def test_conjugate_mid_regimes():
    B = vector_algebra(2, "hermitian")
    default = check_assoc(B, 2)
    assert default.holds and default.regime == REALIFIED_FLOAT
    exact = check_assoc(B, 2, realified_exact=True)
    assert exact.holds and exact.regime == REALIFIED_EXACT and exact.tuples_checked == 4**5
    assert check_ga15_identity(B).holds
    assert check_ga15_identity(rect_algebra(1, 2, "dagger"), realified_exact=True).holds


def test_limit_is_not_certifying():
    rep = check_assoc(cubic_algebra(2, "A"), 2, limit=50)
    assert rep.holds and rep.regime == LIMITED and not rep.certifying and rep.tuples_checked == 50
    bad = check_assoc(cubic_algebra(2, "A"), 1, limit=50)
    assert bad.verdict == "fails" and not bad.certifying
    assert "[non-certifying]" in str(rep)


def test_check_all_axioms(seed7):
    reps = check_all_axioms(vector_algebra(2))
    assert [r.holds for r in reps] == [True, True]
    assert [r.holds for r in check_all_axioms(seed7)] == [True, False]


def test_bad_kind():
    with pytest.raises(ValueError):
        check_assoc(zero_algebra(1), 3)
