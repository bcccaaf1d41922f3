from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dualfive.crossratio import (
    INF, CrossRatioVec, DegenerateParams, DegenerateQuadruple, affine_residuals, constraint_residuals,
    constraint_terms, counting, cross_ratio, five_from_params, index_pairs, n_point_cross_ratios,
    projective_residuals,
)
from dualfive.exactlin import ProjVec

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def test_cross_ratio_examples():
    assert cross_ratio(0, INF, F(3, 4), 1) == F(3, 4)
    assert cross_ratio(1, F(1, 2), 0, F(1, 4)) == F(2, 3)
    with pytest.raises(DegenerateQuadruple):
        cross_ratio(0, INF, 1, 1)
    with pytest.raises(DegenerateQuadruple):
        cross_ratio(INF, INF, 1, 2)


def test_five_from_params():
    u = five_from_params(F(1, 2), F(1, 4))
    assert u.values == (F(1, 2), F(1, 2), F(2, 3), F(3, 4), F(2, 3))
    assert 1 - u[2, 4] * u[2, 5] == F(1, 2) == u[1, 3]
    for s, t in ((F(1, 3), F(1, 3)), (0, F(1, 2)), (F(1, 2), 1)):
        with pytest.raises(DegenerateParams):
            five_from_params(s, t)


def test_n_point_examples():
    assert n_point_cross_ratios([0, INF, 1, F(1, 3)]).values == (F(1, 3), F(2, 3))
    a = n_point_cross_ratios([0, INF, 1, F(1, 2), F(1, 4)])
    assert a == five_from_params(F(1, 2), F(1, 4))
    six = n_point_cross_ratios([0, INF, 1, 2, 3, 4])
    assert len(six.values) == 9
    assert all(r == 0 for r in constraint_residuals(six))


def test_constraint_examples():
    assert constraint_residuals(five_from_params(F(1, 2), F(1, 4))) == [0] * 5
    assert constraint_residuals(CrossRatioVec(4, (F(1, 3), F(2, 3)))) == [0, 0]
    assert constraint_residuals(CrossRatioVec(5, (1,) * 5)) == [-1] * 5


def test_five_point_constraints_match_quadric_table():
    # the general generator at N=5 reproduces u13 = 1 - u24 u25 and its rotations
    terms = dict(constraint_terms(5))
    assert terms[(1, 3)] == [(2, 4), (2, 5)]
    assert sorted(len(v) for v in terms.values()) == [2] * 5


def test_index_pairs_count():
    for n in range(4, 11):
        assert len(index_pairs(n)) == n * (n - 3) // 2
    with pytest.raises(ValueError):
        index_pairs(3)


def test_projective_residual_examples():
    assert projective_residuals(ProjVec.of([1, 1, 0, 0, 1, 1])) == [0] * 5
    assert projective_residuals([1, 0, 0, 0, 0, 0]) == [1] * 5
    z = [F(3), F(-1), F(2), F(5), F(1, 2), F(7)]
    assert projective_residuals([2 * x for x in z]) == [4 * r for r in projective_residuals(z)]


def test_affine_and_projective_agree():
    u = five_from_params(F(2, 7), F(5, 9))
    assert affine_residuals(u.values) == [0] * 5
    assert projective_residuals((1,) + u.values) == [0] * 5


def test_counting_table():
    table = {4: (2, 3), 5: (5, 12), 6: (9, 60), 7: (14, 360), 8: (20, 2520), 9: (27, 20160), 10: (35, 181440)}
    for n, row in table.items():
        assert counting(n) == row


@settings(max_examples=60)
@given(st.integers(4, 7).flatmap(lambda n: st.lists(rationals, min_size=n - 1, max_size=n - 1, unique=True)),
       st.booleans())
def test_constraints_hold_on_image(points, with_inf):
    pts = ([INF] + points) if with_inf else points
    assume(len(pts) >= 4)
    assert all(r == 0 for r in constraint_residuals(n_point_cross_ratios(pts)))


@given(st.lists(rationals, min_size=4, max_size=4, unique=True), rationals, rationals, rationals, rationals)
def test_cross_ratio_mobius_invariance(pts, a, b, c, d):
    assume(a * d - b * c != 0)
    assume(all(c * p + d != 0 for p in pts))
    moved = [(a * p + b) / (c * p + d) for p in pts]
    assert cross_ratio(*moved) == cross_ratio(*pts)


@given(st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100),
       st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100))
def test_params_land_on_variety(s, t):
    assume(s != t)
    assert constraint_residuals(five_from_params(s, t)) == [0] * 5
