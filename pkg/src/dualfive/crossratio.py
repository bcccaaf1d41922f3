"""Cross-ratios of N cyclically ordered points and their constraint systems.

Points live on the real projective line, so an argument may be the marker
:data:`INF`.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .exactlin import MatRat, ProjVec


class DegenerateQuadruple(ValueError):
    """Two of the four cross-ratio arguments coincide."""


class DegenerateParams(ValueError):
    """Parameters hit 0, 1 or each other."""


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"


INF = _Infinity()


def _ext(x):
    return x if x is INF else Fraction(x)


def cross_ratio(w, x, y, z) -> Fraction:
    """``u(w,x,y,z) = (w-y)(x-z) / ((w-z)(x-y))`` with ``INF`` allowed.

    An infinite argument appears in exactly one factor of the numerator and
    one of the denominator; both are dropped.
    """
    pts = [_ext(p) for p in (w, x, y, z)]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j] or (pts[i] is INF and pts[j] is INF):
                raise DegenerateQuadruple(f"points {i} and {j} coincide: {pts[i]}")
    w, x, y, z = pts

    def diff(a, b):
        return None if a is INF or b is INF else a - b

    num = [diff(w, y), diff(x, z)]
    den = [diff(w, z), diff(x, y)]
    return prod(f for f in num if f is not None) / prod(f for f in den if f is not None)


def index_pairs(n: int) -> list[tuple[int, int]]:
    """The ``(i, j)`` labels, 1-based, with ``2 <= j - i <= n - 2``, lexicographic."""
    if n < 4:
        raise ValueError("need N >= 4")
    return [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1) if j - i <= n - 2]


@dataclass(frozen=True)
class CrossRatioVec:
    n: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.n * (self.n - 3) // 2:
            raise ValueError(f"N={self.n} needs {self.n * (self.n - 3) // 2} entries")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return index_pairs(self.n)

    def as_dict(self) -> dict:
        return dict(zip(self.pairs, self.values))

    def __getitem__(self, ij):
        return self.as_dict()[ij]


def five_from_params(s, t) -> CrossRatioVec:
    """``(u13, u14, u24, u25, u35)`` for the points ``0, INF, 1, s, t``."""
    s, t = Fraction(s), Fraction(t)
    if s in (0, 1) or t in (0, 1) or s == t:
        raise DegenerateParams(f"need s,t outside {{0,1}} and s != t, got s={s}, t={t}")
    return CrossRatioVec(5, (s, t / s, (1 - s) / (1 - t), 1 - t, (s - t) / (s * (1 - t))))


def n_point_cross_ratios(points: Sequence) -> CrossRatioVec:
    n = len(points)
    pts = [_ext(p) for p in points]

    def x(k):
        return pts[(k - 1) % n]

    vals = tuple(cross_ratio(x(i), x(i + 1), x(j + 1), x(j)) for i, j in index_pairs(n))
    return CrossRatioVec(n, vals)


def constraint_terms(n: int) -> list[tuple[tuple[int, int], list[tuple[int, int]]]]:
    """For each ``u_ij`` the list of ``u_mn`` whose product appears in its constraint.

    ``m`` runs strictly between ``i`` and ``j``; ``n`` runs cyclically from
    ``j+1`` round to ``i-1``.
    """
    terms = []
    for i, j in index_pairs(n):
        factors = []
        for m in range(i + 1, j):
            for k in range(j + 1, i - 1 + n + 1):
                mm, kk = m, (k - 1) % n + 1
                factors.append((min(mm, kk), max(mm, kk)))
        terms.append(((i, j), factors))
    return terms


def constraint_residuals(u: CrossRatioVec) -> list[Fraction]:
    """``1 - u_ij - prod(u_mn)`` for every constraint; zero on the variety."""
    vals = u.as_dict()
    return [
        1 - vals[ij] - prod((vals[f] for f in factors), start=Fraction(1))
        for ij, factors in constraint_terms(u.n)
    ]


# (k, a, b) such that the k-th quadric is z0^2 - z0*z_k - z_a*z_b
_QUADRICS = ((1, 3, 4), (2, 4, 5), (3, 5, 1), (4, 1, 2), (5, 2, 3))


def projective_residuals(z: Sequence) -> list:
    """The five homogeneous quadrics cutting out the closed surface in RP^5."""
    if isinstance(z, ProjVec):
        z = z.coords
    return [z[0] * z[0] - z[0] * z[k] - z[a] * z[b] for k, a, b in _QUADRICS]


def affine_residuals(z: Sequence) -> list:
    """``1 - z_k - z_a z_b`` for ``z = (z1..z5) = (u13, u14, u24, u25, u35)``."""
    zz = (None,) + tuple(z)
    return [1 - zz[k] - zz[a] * zz[b] for k, a, b in _QUADRICS]


def affine_jacobian(z: Sequence) -> MatRat:
    """Exact 5x5 Jacobian of :func:`affine_residuals` w.r.t. ``z1..z5``."""
    zz = (None,) + tuple(Fraction(x) for x in z)
    rows = []
    for k, a, b in _QUADRICS:
        row = [Fraction(0)] * 5
        row[k - 1] -= 1
        row[a - 1] -= zz[b]
        row[b - 1] -= zz[a]
        rows.append(row)
    return MatRat.from_rows(rows)


def counting(n: int) -> tuple[int, int]:
    """(number of cross-ratio variables, number of components) for B_N."""
    if n < 4:
        raise ValueError("need N >= 4")
    return n * (n - 3) // 2, factorial(n - 1) // 2
