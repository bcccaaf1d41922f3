"""Gamma and Beta functions, the five-point function B5 and its phase factors."""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .quadrature import QuadratureSpec, QuadResult, integrate_01, integrate_square


class PoleAtNonPositiveInteger(ValueError):
    pass


class PoleDetected(ValueError):
    def __init__(self, message: str, index: int | None = None, value=None):
        super().__init__(message)
        self.index = index
        self.value = value


class DomainError(ValueError):
    pass


class BranchLocus(ValueError):
    pass


# Lanczos coefficients for g = 607/128, 15 terms (Godfrey).
_LANCZOS_G = 607 / 128
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _positive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real >= 1 and z.real == math.floor(z.real)


def _loggamma_right(z: complex) -> complex:
    # valid for Re z >= 1/2
    zm = z - 1
    acc = _LANCZOS[0]
    for k, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _sinpi(z: complex) -> complex:
    # subtract the nearest integer exactly so sin stays accurate next to its zeros
    n = round(z.real)
    w = complex(z.real - n, z.imag)
    val = cmath.sin(math.pi * w)
    return -val if n % 2 else val


def gamma_c(z) -> complex:
    """Complex Gamma function (Lanczos approximation, reflection for Re z < 1/2)."""
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleAtNonPositiveInteger(f"Gamma has a pole at {z.real:g}")
    if _positive_integer(z) and z.real <= 171:
        return complex(math.factorial(int(z.real) - 1))
    if z.real < 0.5:
        return math.pi / (_sinpi(z) * cmath.exp(_loggamma_right(1 - z)))
    return cmath.exp(_loggamma_right(z))


def rgamma_c(z) -> complex:
    """``1/Gamma(z)``, entire; zero at the non-positive integers."""
    z = complex(z)
    if _nonpositive_integer(z):
        return 0j
    return 1 / gamma_c(z)


def b4_gamma(alpha: Sequence) -> complex:
    """``Gamma(a1) Gamma(a2) / Gamma(a1 + a2)`` continued to every finite point.

    When ``a_i`` is a non-positive integer the value is finite only if the
    other exponent is a positive integer ``k`` with ``a_i + k <= 0``; then
    ``B(a_i, k) = (k-1)! / (a_i (a_i+1) ... (a_i+k-1))``.
    """
    a1, a2 = (complex(a) for a in alpha)
    for idx, (a, b) in enumerate(((a1, a2), (a2, a1))):
        if _nonpositive_integer(a):
            if _positive_integer(b) and _nonpositive_integer(a + b):
                k = int(b.real)
                den = math.prod(a + m for m in range(k))
                return math.factorial(k - 1) / den
            raise PoleDetected(f"B4 has a pole: alpha_{idx + 1} = {a.real:g}", idx + 1, a)
    return gamma_c(a1) * gamma_c(a2) * rgamma_c(a1 + a2)


def b4_quadrature(alpha: Sequence, spec: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """``int_0^1 x^(a1-1) (1-x)^(a2-1) dx`` by singular quadrature."""
    a1, a2 = (complex(a) for a in alpha)
    if a1.real <= 0 or a2.real <= 0:
        raise DomainError("the Beta integral needs Re alpha_1 > 0 and Re alpha_2 > 0")

    def logf(x, xc):
        return (a1 - 1) * np.log(x) + (a2 - 1) * np.log(xc)

    return integrate_01(logf, spec, log=True)


def b5_integrand(z1, z2, alpha: Sequence) -> complex:
    """``z1^(a1-a2-a5) z2^(a2-1) (1-z1)^(a3-1) (z1-z2)^(a5-1) (1-z2)^(a4-a3-a5)``."""
    a1, a2, a3, a4, a5 = (complex(a) for a in alpha)
    z1, z2 = complex(z1), complex(z2)
    if z1 == 0 or z2 == 0 or z1 == 1 or z2 == 1 or z1 == z2:
        raise BranchLocus(f"({z1}, {z2}) lies on a branch line")

    def pw(b, e):
        return cmath.exp(e * cmath.log(b))

    return (pw(z1, a1 - a2 - a5) * pw(z2, a2 - 1) * pw(1 - z1, a3 - 1)
            * pw(z1 - z2, a5 - 1) * pw(1 - z2, a4 - a3 - a5))


def b5_square_log_integrand(x, xc, v, vc, alpha: Sequence):
    """Logarithm of the B5 integrand after ``y = x v``, Jacobian ``x`` included.

    The integrand is ``x^(a1-1) v^(a2-1) (1-x)^(a3-1) (1-v)^(a5-1) (1-xv)^(a4-a3-a5)``
    on the unit square; ``xc``/``vc`` are ``1-x``/``1-v``.
    """
    a1, a2, a3, a4, a5 = (complex(a) for a in alpha)
    one_minus_xv = xc + x * vc
    return ((a1 - 1) * np.log(x) + (a2 - 1) * np.log(v) + (a3 - 1) * np.log(xc)
            + (a5 - 1) * np.log(vc) + (a4 - a3 - a5) * np.log(one_minus_xv))


def b5_square_integrand(x, xc, v, vc, alpha: Sequence):
    return np.exp(b5_square_log_integrand(x, xc, v, vc, alpha))


def b5_quadrature(alpha: Sequence, spec: QuadratureSpec | None = None) -> QuadResult:
    """B5 over the triangle ``0 < y < x < 1``; needs ``Re alpha_i > 0`` for all i."""
    alpha = tuple(complex(a) for a in alpha)
    if len(alpha) != 5:
        raise ValueError("B5 takes five exponents")
    bad = [i + 1 for i, a in enumerate(alpha) if a.real <= 0]
    if bad:
        raise DomainError(f"B5 quadrature needs Re alpha_i > 0; violated for i = {bad}")
    if spec is None:
        spec = QuadratureSpec(level=6, abs_tol=1e-10, rel_tol=1e-10)
    return integrate_square(lambda x, xc, v, vc: b5_square_log_integrand(x, xc, v, vc, alpha),
                            spec, log=True)


def product_factor(alpha: Sequence) -> complex:
    """``prod_j (1 - exp(2 pi i alpha_j))``; exactly zero when some alpha_j is an integer."""
    out = 1 + 0j
    for a in alpha:
        a = complex(a)
        if a.imag == 0 and a.real == math.floor(a.real):
            return 0j
        out *= 1 - cmath.exp(2j * math.pi * a)
    return out


def epsilon5(alpha: Sequence, spec: QuadratureSpec | None = None) -> complex:
    """The entire numerator of the B5 continuation, evaluated where the integral converges."""
    factor = product_factor(alpha)
    b5 = b5_quadrature(alpha, spec).value
    return factor * b5


def primed_exponents(alpha: Sequence) -> tuple:
    """Exponents of the primed branch lines: ``1 + a_i - a_(i+1) - a_(i-1)``, cyclic."""
    a = list(alpha)
    if len(a) != 5:
        raise ValueError("need five exponents")
    return tuple(1 + a[i] - a[(i + 1) % 5] - a[(i - 1) % 5] for i in range(5))


def cyclic_shift(alpha: Sequence, steps: int = 1) -> tuple:
    """Rotate the exponent tuple right by ``steps``: one step is (a5, a1, a2, a3, a4)."""
    a = tuple(alpha)
    steps %= len(a)
    return a[-steps:] + a[:-steps] if steps else a
