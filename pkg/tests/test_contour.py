from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualfive.betafun import b4_gamma, b4_quadrature, product_factor
from dualfive.contour import (
    PhaseLabel, all_corner_pairs, build_phase_surface, corner_cycle_check, corner_holes, edge_phase_exponents,
    loop_report, mutate_gluing, pochhammer_b4, pochhammer_path,
)
from dualfive.tessellation import euler_and_genus


def test_edge_labels():
    m = edge_phase_exponents()
    assert m["z2=0"] == 2 and m["A"] == 1 and m["B"] == 4
    assert m["z1=1"] == 3 and m["z1-z2=0"] == 5
    assert sorted(m.values()) == [1, 2, 3, 4, 5]


def test_phase_label():
    p = PhaseLabel((1, 0, 1, 0, 0))
    assert p.parity == 1 and p.flip(2).parity == -1
    assert p.flip(1).flip(1) == p
    assert p.exponent_sum((0.1, 0.2, 0.3, 0.4, 0.5)) == pytest.approx(0.4)
    with pytest.raises(ValueError):
        PhaseLabel((0, 2))


def test_k5_surface():
    s, c = build_phase_surface(5)
    assert len(s.sheets) == 32
    assert s.counts() == (40, 80, 32)
    assert s.euler_and_genus() == (-8, True, 5)
    assert euler_and_genus(c) == (-8, True, 5)
    assert c.counts() == (40, 80, 32)
    assert s.is_connected() and s.is_involution() and s.parity_orientable()
    # every sheet has exactly five glued edges
    assert all(sum(1 for (p, _) in s.gluing if p == q) == 5 for q in s.sheets)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_general_k(k):
    s, c = build_phase_surface(k)
    v, e, f = s.counts()
    assert (e, f) == (k * 2 ** (k - 1), 2 ** k)
    assert v == len(corner_holes(s)) == k * 2 ** (k - 2)
    chi, ori, _ = s.euler_and_genus()
    assert ori and chi == 2 ** (k - 2) * (4 - k)
    assert euler_and_genus(c) == s.euler_and_genus()


def test_corner_checks():
    s, _ = build_phase_surface(5)
    assert corner_cycle_check(5, 1, 2)
    assert all(corner_cycle_check(s, i, j) for i, j in all_corner_pairs(5))
    assert len(all_corner_pairs(5)) == 10
    holes = corner_holes(s)
    assert len(holes) == 40
    assert all(len(sheets) == 4 for _, _, sheets in holes)
    with pytest.raises(ValueError):
        corner_cycle_check(s, 2, 2)


def test_mutation_is_detected():
    s, _ = build_phase_surface(5)
    m = mutate_gluing(s)
    assert m.is_involution()
    assert not all(corner_cycle_check(m, i, j) for i, j in all_corner_pairs(5))
    assert m.euler_and_genus() != (-8, True, 5)
    assert not m.parity_orientable()


def test_k2_loop():
    s, c = build_phase_surface(2)
    assert c is None
    rep = loop_report(s)
    assert (rep["V"], rep["E"], rep["chi"], rep["cycles"]) == (4, 4, 0, 1)
    assert rep["sheet_order"] == ["00", "01", "11", "10"]


def test_pochhammer_examples():
    assert abs(pochhammer_b4((0.5, 0.5), r=1e-3) - 4 * math.pi) <= 1e-9
    assert abs(pochhammer_b4((1, 1))) <= 1e-8
    assert abs(pochhammer_b4((0.5, -0.5))) <= 1e-6


def test_path_closes():
    path = pochhammer_path((0.3 + 0.1j, 0.7))
    assert len(path.pieces) == 8
    assert abs(path.final_phase() - 1) < 1e-15
    phases = [ph for kind, ph, _, _ in path.pieces if kind == "segment"]
    e1, e2 = (complex(math.cos(2 * math.pi * a), math.sin(2 * math.pi * a)) for a in (0.3, 0.7))
    e1 *= math.exp(-2 * math.pi * 0.1)
    assert phases[0] == 1
    assert abs(phases[1] - e2) < 1e-14
    assert abs(phases[2] - e1 * e2) < 1e-14
    assert abs(phases[3] - e1) < 1e-14


def test_radius_validation():
    with pytest.raises(ValueError):
        pochhammer_b4((0.5, 0.5), r=0.5)


def test_small_circles_vanish_in_convergent_region():
    a = (0.6, 0.8)
    big = abs(pochhammer_path(a, r=1e-2).circle_total)
    small = abs(pochhammer_path(a, r=1e-4).circle_total)
    assert small < big / 10


PAIRS = [(0.5, 0.5), (0.3, 0.45), (1.5, 0.25), (2.3, 0.7), (0.2 + 0.3j, 1.1), (0.75, 1.6 - 0.4j),
         (-0.4, 2.3), (-1.5, -0.25), (0.35 + 1j, -0.6), (3.3, 0.9 + 0.5j)]


@pytest.mark.parametrize("alpha", PAIRS)
def test_continuation_matches_gamma_ratio(alpha):
    ratio = pochhammer_b4(alpha) / product_factor(alpha)
    assert abs(ratio - b4_gamma(alpha)) <= 1e-7 * (1 + abs(b4_gamma(alpha)))


@pytest.mark.parametrize("alpha", [p for p in PAIRS if p[0].real > 0 and p[1].real > 0])
def test_continuation_matches_real_integral(alpha):
    ratio = pochhammer_b4(alpha) / product_factor(alpha)
    assert abs(ratio - b4_quadrature(alpha).value) <= 1e-7


@settings(max_examples=25, deadline=None)
@given(st.floats(-2.4, 3.4), st.floats(-2.4, 3.4), st.floats(-1, 1))
def test_deformation_invariance(a, b, im):
    # keep away from integers where both sides vanish
    if min(abs(a - round(a)), abs(b - round(b))) < 0.05:
        return
    alpha = (complex(a, im), b)
    big, small = pochhammer_path(alpha, r=1e-2), pochhammer_path(alpha, r=1e-3)
    # negative exponents make the pieces near a small circle huge and the sum
    # cancels; the attainable accuracy scales with the largest piece
    scale = max(abs(v) for *_, v in small.pieces)
    assert abs(big.total - small.total) <= 1e-7 + 1e-12 * scale
