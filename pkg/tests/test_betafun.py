from __future__ import annotations

import cmath
import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dualfive.betafun import (
    BranchLocus, DomainError, PoleAtNonPositiveInteger, PoleDetected, b4_gamma, b4_quadrature,
    b5_integrand, b5_quadrature, b5_square_integrand, cyclic_shift, epsilon5, gamma_c, primed_exponents,
    product_factor, rgamma_c,
)
from dualfive.quadrature import QuadratureSpec
from dualfive.verify import b4_grid, b5_cyclic_tuples


def mp_gamma(z: complex) -> complex:
    return complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))


def test_gamma_examples():
    assert gamma_c(1) == 1
    assert gamma_c(5) == 24
    assert abs(gamma_c(0.5) - math.sqrt(math.pi)) <= 1e-15
    assert abs(gamma_c(0.5) - 1.7724539) < 1e-7


@pytest.mark.parametrize("z", [0, -1, -7, -20])
def test_gamma_poles(z):
    with pytest.raises(PoleAtNonPositiveInteger):
        gamma_c(z)
    assert rgamma_c(z) == 0


complex_disc = st.builds(complex, st.floats(-20, 20), st.floats(-20, 20)).filter(lambda z: abs(z) <= 20)


@settings(max_examples=300)
@given(complex_disc)
def test_gamma_relative_error_against_mpmath(z):
    assume(not (z.imag == 0 and z.real <= 0 and z.real == int(z.real)))
    ref = mp_gamma(z)
    assume(math.isfinite(abs(ref)))  # Gamma(z) ~ 1/z overflows for subnormal z
    assert abs(gamma_c(z) - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("k", range(1, 20))
def test_gamma_next_to_poles(k):
    for d in (1e-3, -1e-6, 0.5):
        z = complex(-k + d, 0)
        assert abs(gamma_c(z) - mp_gamma(z)) <= 1e-12 * abs(mp_gamma(z))


def test_b4_gamma_examples():
    assert b4_gamma((1, 1)) == 1
    assert abs(b4_gamma((0.5, 0.5)) - math.pi) <= 1e-14
    assert abs(b4_gamma((2, 3)) - 1 / 12) <= 1e-16


def test_b4_gamma_poles_and_finite_limits():
    with pytest.raises(PoleDetected) as exc:
        b4_gamma((0, 0.5))
    assert exc.value.index == 1
    with pytest.raises(PoleDetected) as exc:
        b4_gamma((0.3, -2))
    assert exc.value.index == 2
    # B(-3, 2) = 1/((-3)(-2)) from the finite Gamma ratio
    assert b4_gamma((-3, 2)) == pytest.approx(1 / 6)
    assert b4_gamma((2, -3)) == pytest.approx(1 / 6)
    # alpha_1 + alpha_2 a pole of the denominator: the ratio vanishes
    assert b4_gamma((0.5, -0.5)) == 0


def test_b4_gamma_finite_limit_matches_nearby_values():
    near = b4_gamma((-3 + 1e-7, 2))
    assert abs(near - b4_gamma((-3, 2))) < 1e-6


def test_b4_quadrature_examples():
    assert abs(b4_quadrature((0.5, 0.5)).value - math.pi) <= 1e-8
    assert abs(b4_quadrature((1, 1)).value - 1) <= 1e-12
    a = (0.1, 3 + 2j)
    assert abs(b4_quadrature(a).value - b4_gamma(a)) <= 1e-8 * (1 + abs(b4_gamma(a)))
    with pytest.raises(DomainError):
        b4_quadrature((0, 1))
    with pytest.raises(DomainError):
        b4_quadrature((1, -0.5 + 1j))


def test_b4_oracle_grid():
    grid = b4_grid()
    assert len(grid) == 25
    assert all(0.1 <= a.real <= 4 for pair in grid for a in pair)
    for a in grid:
        assert abs(b4_quadrature(a).value - b4_gamma(a)) <= 1e-8 * (1 + abs(b4_gamma(a)))


def test_b4_gauss_method_cross_check():
    spec = QuadratureSpec(method="gauss", level=8)
    for a in ((0.5, 0.5), (1.3 + 0.5j, 2.7), (0.7, 0.9)):
        assert abs(b4_quadrature(a, spec).value - b4_gamma(a)) <= 1e-8 * (1 + abs(b4_gamma(a)))


def test_b5_integrand_examples():
    assert b5_integrand(0.5, 0.25, (1,) * 5) == pytest.approx(8 / 3, abs=1e-15)
    for z1, z2 in ((0.5, 0.25), (0.9, 0.1), (0.3 + 0.2j, 0.1 - 0.4j)):
        assert b5_integrand(z1, z2, (2, 1, 1, 1, 1)) == pytest.approx(1 / (1 - z2), abs=1e-14)
    for z1, z2 in ((0.5, 0.5), (0, 0.3), (1, 0.2), (0.3, 1), (0.4, 0)):
        with pytest.raises(BranchLocus):
            b5_integrand(z1, z2, (1,) * 5)


def test_square_form_is_the_substituted_integrand():
    a = (0.7, 1.3, 0.9 + 0.2j, 1.1, 0.6)
    x, v = 0.37, 0.61
    direct = b5_integrand(x, x * v, a) * x
    assert abs(b5_square_integrand(x, 1 - x, v, 1 - v, a) - direct) <= 1e-14


def test_b5_square_form_endpoint_power():
    # near x = 0 the integrand behaves like x**(alpha_1 - 1)
    a = (0.6, 1.2, 0.8, 1.4, 0.9)
    f1 = b5_square_integrand(1e-8, 1 - 1e-8, 0.3, 0.7, a)
    f2 = b5_square_integrand(2e-8, 1 - 2e-8, 0.3, 0.7, a)
    assert abs(cmath.log(f2 / f1).real / math.log(2) - (a[0] - 1)) < 1e-6


def test_b5_closed_forms():
    assert abs(b5_quadrature((1,) * 5).value - math.pi ** 2 / 6) <= 1e-8
    assert abs(b5_quadrature((2, 1, 1, 1, 1)).value - 1) <= 1e-8
    assert abs(b5_quadrature((1, 1, 2, 1, 1)).value - 1) <= 1e-8


def b5_hypergeometric(alpha) -> complex:
    """Independent B5 oracle: integrate out x, then v, giving a 3F2 at unit argument.

    Valid for Re alpha_4 > 0, where the 3F2 series converges.
    """
    a1, a2, a3, a4, a5 = (mpmath.mpmathify(a) for a in alpha)
    return complex(mpmath.beta(a1, a3) * mpmath.beta(a2, a5)
                   * mpmath.hyp3f2(a3 + a5 - a4, a1, a2, a1 + a3, a2 + a5, 1))


@pytest.mark.parametrize("alpha", [
    (0.5,) * 5,
    (0.7 + 0.3j, 1.3, 0.9, 1.1 - 0.2j, 0.6),
    (1.9, 0.55, 1.2, 0.52, 1.7),
    (0.3, 2.5, 0.8, 1.5, 0.4 + 0.4j),
])
def test_b5_against_hypergeometric_oracle(alpha):
    assert abs(b5_quadrature(alpha).value - b5_hypergeometric(alpha)) <= 1e-8


def test_b5_domain():
    with pytest.raises(DomainError):
        b5_quadrature((1, 1, 0, 1, 1))
    with pytest.raises(ValueError):
        b5_quadrature((1, 1, 1))


def test_b5_cyclic_invariance():
    for alpha in b5_cyclic_tuples(10):
        a = b5_quadrature(alpha).value
        b = b5_quadrature(cyclic_shift(alpha, 2)).value
        assert abs(a - b) <= 1e-7


def test_cyclic_shift():
    assert cyclic_shift((1, 2, 3, 4, 5), 2) == (4, 5, 1, 2, 3)
    assert cyclic_shift((1, 2, 3, 4, 5), 5) == (1, 2, 3, 4, 5)


def test_product_factor_examples():
    assert product_factor((1,) * 5) == 0
    assert abs(product_factor((0.5, 0.5)) - 4) <= 1e-15
    assert abs(product_factor((0.5,) * 5) - 32) <= 1e-13


def test_epsilon5_examples():
    assert epsilon5((1,) * 5) == 0
    assert epsilon5((2, 1, 1, 1, 1)) == 0
    val = epsilon5((0.5,) * 5)
    assert abs(val - 32 * b5_quadrature((0.5,) * 5).value) <= 1e-9


def test_primed_exponents_examples():
    assert primed_exponents((1,) * 5) == (0, 0, 0, 0, 0)
    a = 0.3
    assert primed_exponents((a, 0, 0, 0, 0)) == (1 + a, 1 - a, 1, 1, 1 - a)


@given(st.lists(st.fractions(-5, 5, max_denominator=20), min_size=5, max_size=5))
def test_primed_exponent_sum_rule(alpha):
    assert sum(primed_exponents(alpha)) == 5 - sum(alpha)
