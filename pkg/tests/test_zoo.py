from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ternalg import linalg
from ternalg.algebra import Element, ShapeError, TernaryAlgebra, ternary_product
from ternalg.laws import check_assoc
from ternalg.scalar import I, ONE, ZERO, CycNum, cyc_embed
from ternalg.zoo import (
    F1,
    ConstructionError,
    CubicMatrix,
    FiniteRelation,
    G_elements,
    algebra_from_descriptor,
    algebra_to_descriptor,
    all_relations,
    canonical_G_basis,
    cubic_algebra,
    cubic_relabel,
    cubic_scalar_trace_algebra,
    cubic_trace,
    make_algebra_from_form,
    parse_descriptor,
    random_algebra,
    rect_algebra,
    relation_ternary,
    semiheap_check,
    vector_algebra,
)

import oracles


def test_vector_examples():
    A = vector_algebra(3)
    e = A.basis()
    assert ternary_product(A, e[0], e[0], e[2]) == e[2]
    assert ternary_product(A, e[0], e[1], e[2]).is_zero()
    with pytest.raises(ShapeError):
        vector_algebra(0)
    with pytest.raises(ValueError):
        vector_algebra(2, "sesqui")


def test_rect_example():
    # E11 . E21 . E22 = E11 E21^T E22 = E12 E22 ... = 0; E11 . E11 . E12 = E12
    A = rect_algebra(2, 2)
    E11, E12, E21, E22 = A.basis()
    assert ternary_product(A, E11, E11, E12) == E12
    assert ternary_product(A, E11, E21, E22) == E12
    assert ternary_product(A, E11, E12, E22).is_zero()


def test_rect_dagger_is_conjugate_mid():
    A = rect_algebra(1, 2, "dagger")
    e1, e2 = A.basis()
    assert ternary_product(A, e1, e1 * I, e2) == e2 * (-I)


def test_cubic_example_unit():
    A = cubic_algebra(2, "A")
    X111, X222 = G_elements()[6], G_elements()[7]
    assert ternary_product(A, X111, X111, X111) == X111
    assert ternary_product(A, X111, X222, X111).is_zero()


def test_cubic_matrix_api():
    X = CubicMatrix.from_entries(2, {(1, 2, 1): "i", (2, 2, 2): 3})
    assert X[1, 2, 1] == I and X[1, 1, 1] == ZERO
    assert CubicMatrix.from_element(X.to_element(), 2) == X
    assert (X - X) == CubicMatrix.zero(2)
    assert set(X.nonzero()) == {(1, 2, 1), (2, 2, 2)}
    with pytest.raises(ShapeError):
        CubicMatrix.from_entries(2, {(3, 1, 1): 1})
    with pytest.raises(ValueError):
        cubic_trace(X, "14")


def _np_trace(X, pair):
    return {"12": np.einsum("iik->k", X), "13": np.einsum("iji->j", X), "23": np.einsum("ijj->i", X)}[pair]


def test_traces_examples():
    G = canonical_G_basis()
    assert G[0].trace("12") == [ZERO, ZERO]
    assert G[6].trace("12") == [ONE, ZERO]
    assert G[2].trace("13") == [ZERO, -I]
    ident = CubicMatrix.from_entries(2, {(1, 1, 1): 1, (2, 2, 1): 1})
    assert ident.trace("12") == [CycNum.of(2), ZERO]


@pytest.mark.parametrize("pair", ["12", "13", "23"])
def test_traces_match_float_oracle(pair):
    for X, Xc in zip(canonical_G_basis(), oracles.g_basis()):
        got = np.array([cyc_embed(t) for t in X.trace(pair)])
        assert np.allclose(got, _np_trace(Xc, pair))


def test_g_basis_matches_figures_and_has_full_rank():
    for X, Xc in zip(canonical_G_basis(), oracles.g_basis()):
        assert np.allclose(X.to_element().to_complex().reshape(2, 2, 2), Xc)
    assert linalg.rank([list(g.coords) for g in G_elements()]) == 8
    assert CubicMatrix.from_entries(2, {tuple(int(c) for c in k): v for k, v in F1.items()})[1, 1, 1] == ONE


def test_scalar_trace_variant():
    A = cubic_scalar_trace_algebra(2)
    assert check_assoc(A, 1).verdict == "fails" or check_assoc(A, 2).holds
    B = cubic_scalar_trace_algebra(2, conj_mid=True)
    assert not B.is_trilinear


def test_make_algebra_from_form_rejects_bad_data():
    with pytest.raises(ConstructionError):
        make_algebra_from_form(2, 1, np.zeros((2, 2, 1), dtype=int), np.zeros((1, 2, 2), dtype=int),
                               np.ones((1, 1, 1), dtype=int), side="middle")
    with pytest.raises(ConstructionError):
        make_algebra_from_form(2, 1, np.zeros((2, 3, 1), dtype=int), np.zeros((1, 2, 2), dtype=int),
                               np.ones((1, 1, 1), dtype=int))
    # the zero map is not a representation of a unital 1-dim ring
    with pytest.raises(ConstructionError):
        make_algebra_from_form(2, 1, np.zeros((2, 2, 1), dtype=int), np.ones((1, 2, 2), dtype=int),
                               np.ones((1, 1, 1), dtype=int))


def test_form_algebra_reproduces_vectors():
    F = np.eye(2, dtype=int)[:, :, None]
    A, spec = make_algebra_from_form(2, 1, F, np.eye(2, dtype=int)[None], np.ones((1, 1, 1), dtype=int))
    assert A.product == vector_algebra(2).product
    assert spec.module_dim == 2 and spec.algebra_dim == 1


def test_relation_examples():
    R = FiniteRelation.from_pairs(2, 3, [(0, 1), (1, 2)])
    S = FiniteRelation.from_pairs(2, 3, [(0, 1)])
    T = FiniteRelation.from_pairs(2, 3, [(0, 0), (0, 2)])
    # x -R-> y -S^-1-> x' -T-> z
    assert relation_ternary(R, S, T).pairs() == {(0, 0), (0, 2)}
    assert relation_ternary(R, R, R) == R
    assert FiniteRelation.identity(2).inverse() == FiniteRelation.identity(2)
    assert S <= R and not R <= S
    with pytest.raises(ShapeError):
        relation_ternary(R, FiniteRelation.identity(2), T)
    assert len(all_relations(2, 2)) == 16


@pytest.mark.parametrize("a,b", [(1, 2), (2, 2)])
def test_semiheap(a, b):
    rep = semiheap_check(a, b)
    assert rep["holds"] and rep["relations"] == 2 ** (a * b)


rels22 = st.lists(st.booleans(), min_size=4, max_size=4).map(
    lambda bits: FiniteRelation.from_array(np.array(bits).reshape(2, 2)))


@given(rels22, rels22, rels22, rels22, rels22)
def test_semiheap_second_kind_property(r, s, t, u, v):
    left = relation_ternary(relation_ternary(r, s, t), u, v)
    mid = relation_ternary(r, relation_ternary(u, t, s), v)
    right = relation_ternary(r, s, relation_ternary(t, u, v))
    assert left == mid == right


@pytest.mark.parametrize("text", ["cubic:n=2,pairing=B", "vector:n=3,form=hermitian", "rect:m=2,n=3",
                                  "zero:dim=3", "custom:random-seed=7", "cubic-trace:n=2,conj-mid=true"])
def test_descriptor_roundtrip(text):
    A = algebra_from_descriptor(text)
    B = algebra_from_descriptor(json.loads(json.dumps(algebra_to_descriptor(A))))
    assert A.product == B.product and A.mode == B.mode and A.labels == B.labels


def test_descriptor_errors():
    for bad in ["", "torus:n=2", "cubic:n", "custom:dim=2,product=x"]:
        with pytest.raises(ValueError):
            algebra_from_descriptor(bad)
    assert parse_descriptor('{"kind": "zero", "dim": 2}') == {"kind": "zero", "dim": 2}


def test_custom_descriptor_entries():
    A = algebra_from_descriptor({"kind": "custom", "dim": 1,
                                 "product": [{"m": 0, "i": 0, "j": 0, "k": 0, "value": "w"}]})
    x = A.basis()[0]
    assert ternary_product(A, x, x, x) == x * CycNum.zeta_power(8)
    assert random_algebra(7, 3).product == algebra_from_descriptor("custom:random-seed=7").product


@pytest.mark.parametrize("pairing", ["A", "B"])
def test_relabel_is_automorphism(pairing):
    A = cubic_algebra(2, pairing)
    f = cubic_relabel(2, [1, 0])
    e = A.basis()
    for a, b, c in itertools.product(range(8), repeat=3):
        assert f(ternary_product(A, e[a], e[b], e[c])) == ternary_product(A, f(e[a]), f(e[b]), f(e[c]))
    with pytest.raises(ValueError):
        cubic_relabel(2, [0, 0])


def test_relabel_swaps_g7_g8():
    f = cubic_relabel(2, [1, 0])
    G = G_elements()
    assert f(G[6]) == G[7] and f(f(G[3])) == G[3]


def test_pairings_differ():
    assert cubic_algebra(2, "A").product != cubic_algebra(2, "B").product
    assert isinstance(cubic_algebra(1), TernaryAlgebra)
    assert Element.unit(3, 1) == vector_algebra(3).basis()[1]
