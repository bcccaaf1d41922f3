from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualfive.exactlin import (
    NEG_I6, Q_REFERENCE, X2, X5, ClosureOverflow, MatRat, NotPositiveDefinite, ProjVec,
    canonical_ints, extended_group, factor_form, group_closure, invariant_form,
    involution_check, leading_minors, p_factor, q_form, quadratic_value, rank_exact,
    symmetry_group,
)
from dualfive.crossratio import affine_jacobian, five_from_params

I6 = MatRat.identity(6)


def test_cyclic_generator_alone():
    assert len(group_closure([X5])) == 5


def test_orders():
    assert len(symmetry_group()) == 120
    assert len(extended_group()) == 240


def test_closure_starts_at_identity_and_is_deterministic():
    a = group_closure([X5, X2])
    assert a[0] == I6
    assert a == symmetry_group()


def test_closure_is_a_group():
    G = symmetry_group()
    S = set(G)
    for g in G[:20]:
        for h in G[::7]:
            assert g @ h in S
    for g in G[:30]:
        assert g.inverse() in S


def test_closure_cap():
    with pytest.raises(ClosureOverflow):
        group_closure([X5, X2], cap=50)
    # a matrix of infinite order
    shear = MatRat.from_rows([[1, 1], [0, 1]])
    with pytest.raises(ClosureOverflow):
        group_closure([shear], cap=100)


def test_involutions():
    assert involution_check(X2)
    assert not involution_check(X5)
    assert involution_check(I6)
    with pytest.raises(ValueError):
        involution_check(MatRat.from_rows([[1, 2, 3]]))


def test_invariant_form_matches_reference():
    Q = invariant_form(symmetry_group(), Fraction(1, 70))
    assert Q == Q_REFERENCE
    assert Q[0, 0] == 20 and all(Q[0, j] == -6 for j in range(1, 6))
    assert all(Q[j, j] == 4 for j in range(1, 6))
    assert Q.is_symmetric()
    assert invariant_form([I6], 1) == I6


def test_quadratic_value_at_vertices():
    assert quadratic_value(q_form(), [1, 1, 0, 0, 1, 1]) == 4
    assert quadratic_value(q_form(), [1, 0, 0, 1, 1, 1]) == 4


def test_q_invariance_all_elements():
    Q = q_form()
    assert all(g.T @ Q @ g == Q for g in symmetry_group())


def test_antipode_in_extended_group_only():
    assert NEG_I6 in set(extended_group())
    assert NEG_I6 not in set(symmetry_group())


def test_leading_minors_of_q():
    assert leading_minors(Q_REFERENCE) == [20, 44, 84, 160, 300, 500]


def test_factor_form():
    P = p_factor()
    assert np.allclose(np.triu(P), P)
    assert (np.diag(P) > 0).all()
    assert np.abs(P.T @ P - Q_REFERENCE.to_numpy()).max() <= 1e-12
    assert np.array_equal(factor_form(I6), np.eye(6))
    d = MatRat.from_rows(np.diag([4, 1, 1, 1, 1, 1]).tolist())
    assert np.allclose(factor_form(d), np.diag([2, 1, 1, 1, 1, 1]))


def test_factor_form_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        factor_form(MatRat.from_rows([[1, 2], [2, 1]]))
    with pytest.raises(NotPositiveDefinite):
        factor_form(MatRat.from_rows([[0, 0], [0, 1]]))


def test_rank_exact():
    assert rank_exact(I6) == 6
    assert rank_exact(MatRat.zeros(5)) == 0
    J = affine_jacobian(five_from_params(Fraction(1, 2), Fraction(1, 4)).values)
    assert five_from_params(Fraction(1, 2), Fraction(1, 4)).values == (
        Fraction(1, 2), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(2, 3))
    assert rank_exact(J) == 3
    assert rank_exact(MatRat.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])) == 2


def test_inverse_and_floats_rejected():
    assert X5.inverse() @ X5 == I6
    with pytest.raises(TypeError):
        MatRat.from_rows([[0.5]])


ints = st.integers(-20, 20)


@given(st.lists(ints, min_size=6, max_size=6).filter(any), st.integers(1, 9), st.integers(-5, 5).filter(bool))
def test_canonical_form_is_idempotent_and_scale_free(v, den, scale):
    c = canonical_ints(v)
    assert canonical_ints(c) == c
    assert canonical_ints([Fraction(scale * x, den) for x in v]) == c
    assert ProjVec.of(v).coords == c


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4))
def test_rank_agrees_with_numpy(rows):
    assert rank_exact(MatRat.from_rows(rows)) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_leading_minors_agree_with_determinants(rows):
    m = MatRat.from_rows(rows)
    minors = leading_minors(m)
    a = np.array(rows, dtype=float)
    for k in range(3):
        if minors[k] == 0:
            break
        assert abs(float(minors[k]) - np.linalg.det(a[: k + 1, : k + 1])) < 1e-9
