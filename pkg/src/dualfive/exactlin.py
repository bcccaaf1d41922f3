"""Exact rational matrices, finite matrix-group closure and invariant forms.

Everything in here works over :class:`fractions.Fraction` so that group
orders, invariance of the quadratic form and ranks are decided exactly.
The only floating point object is the triangular factor returned by
:func:`factor_form`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction


class ClosureOverflow(RuntimeError):
    """Raised when a generated group exceeds the element cap."""


class NotPositiveDefinite(ValueError):
    """Raised when a leading principal minor is not strictly positive."""


class SingularMatrix(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to build an exact matrix from a float")
    return Fraction(x)


@dataclass(frozen=True)
class MatRat:
    """Immutable exact matrix; ``rows`` is a tuple of tuples of Fractions."""

    rows: tuple

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "MatRat":
        data = tuple(tuple(_frac(x) for x in r) for r in rows)
        if not data or len({len(r) for r in data}) != 1:
            raise ValueError("ragged or empty matrix")
        return cls(data)

    @classmethod
    def identity(cls, n: int = 6) -> "MatRat":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "MatRat":
        return cls.from_rows([[0] * (m if n is None else n) for _ in range(m)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "MatRat":
        return cls.from_rows(zip(*cols))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    @property
    def T(self) -> "MatRat":
        return MatRat(tuple(zip(*self.rows)))

    def __matmul__(self, other: "MatRat") -> "MatRat":
        cols = list(zip(*other.rows))
        if self.shape[1] != len(cols[0]):
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return MatRat(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def __add__(self, other: "MatRat") -> "MatRat":
        return MatRat(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "MatRat") -> "MatRat":
        return self + (-other)

    def __neg__(self) -> "MatRat":
        return MatRat(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "MatRat":
        c = _frac(c)
        return MatRat(tuple(tuple(c * a for a in r) for r in self.rows))

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        return tuple(sum(a * _frac(b) for a, b in zip(r, vec)) for r in self.rows)

    def is_symmetric(self) -> bool:
        return self.rows == self.T.rows

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(a) for a in r] for r in self.rows])

    def inverse(self) -> "MatRat":
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [a / p for a in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return MatRat.from_rows(row[n:] for row in aug)

    def __str__(self) -> str:
        cells = [[str(a) for a in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)


@dataclass(frozen=True, order=True)
class ProjVec:
    """Canonical integer representative of a point of RP^5.

    The entries are coprime integers and the first nonzero entry is positive.
    """

    coords: tuple

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("the zero vector is not a projective point")
        if canonical_ints(self.coords) != tuple(self.coords):
            raise ValueError(f"{self.coords} is not in canonical form; use ProjVec.of")

    @classmethod
    def of(cls, values: Iterable) -> "ProjVec":
        return cls(canonical_ints(values))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def canonical_ints(values: Iterable) -> tuple:
    """Clear denominators, divide out the gcd and make the first nonzero entry positive."""
    vals = [_frac(x) for x in values]
    if not any(vals):
        raise ValueError("the zero vector has no projective class")
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in vals), 1)
    ints = [int(x * den) for x in vals]
    g = reduce(gcd, (abs(x) for x in ints if x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def group_closure(generators: Sequence[MatRat], cap: int = 10000) -> list[MatRat]:
    """Multiplicative closure of ``generators``.

    Breadth-first from the identity, right-multiplying by the generators in
    the order given, so the returned list order is deterministic.  For a
    finite group this is the full group (inverses are powers).
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].shape[0]
    ident = MatRat.identity(n)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for h in generators:
            gh = g @ h
            if gh not in seen:
                seen.add(gh)
                order.append(gh)
                if len(order) > cap:
                    raise ClosureOverflow(f"closure exceeded {cap} elements")
                queue.append(gh)
    return order


def involution_check(m: MatRat) -> bool:
    rows, cols = m.shape
    if rows != cols:
        raise ValueError("involution check needs a square matrix")
    return m @ m == MatRat.identity(rows)


def invariant_form(group: Sequence[MatRat], scale=1) -> MatRat:
    """``scale * sum(g^T g)`` over the group, computed exactly."""
    if not group:
        raise ValueError("empty group")
    total = reduce(lambda acc, g: acc + g.T @ g, group[1:], group[0].T @ group[0])
    return total.scale(scale)


def quadratic_value(q: MatRat, vec: Sequence):
    v = [_frac(x) for x in vec]
    return sum(a * b for a, b in zip(v, q.apply(v)))


def leading_minors(m: MatRat) -> list[Fraction]:
    """Exact leading principal minors via fraction-free (Bareiss) elimination."""
    n = m.shape[0]
    a = [list(r) for r in m.rows]
    minors = []
    prev = Fraction(1)
    for k in range(n):
        # no pivoting: a zero pivot means that minor is zero and we stop there
        minors.append(a[k][k])
        if a[k][k] == 0:
            minors.extend([Fraction(0)] * (n - k - 1))
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return minors


def factor_form(q: MatRat) -> np.ndarray:
    """Upper-triangular ``P`` with positive diagonal and ``P.T @ P == q``.

    Positive definiteness is decided exactly before any floats are touched.
    """
    if not q.is_symmetric():
        raise ValueError("quadratic form must be symmetric")
    for k, d in enumerate(leading_minors(q), start=1):
        if d <= 0:
            raise NotPositiveDefinite(f"leading minor of order {k} is {d}")
    lower = np.linalg.cholesky(q.to_numpy())
    return lower.T.copy()


def rank_exact(m: MatRat) -> int:
    """Rank by fraction-free Gaussian elimination with row pivoting."""
    a = [list(r) for r in m.rows]
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = Fraction(1)
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, rows):
            for j in range(c + 1, cols):
                a[r][j] = (a[r][j] * a[rank][c] - a[r][c] * a[rank][j]) / prev
            a[r][c] = Fraction(0)
        prev = a[rank][c]
        rank += 1
        if rank == rows:
            break
    return rank


# The two generators of the order-120 symmetry group.  X5 rotates face 1
# (v1..v5 -> v2..v5,v1, v12 -> v15); X2 reflects across the edge v3-v4.
X5 = MatRat.from_rows([
    [1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0],
])

X2 = MatRat.from_rows([
    [1, 0, 0, 0, 0, -1],
    [2, 0, -1, 0, -1, -1],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [2, -1, 0, -1, 0, -1],
    [0, 0, 0, 0, 0, -1],
])

NEG_I6 = -MatRat.identity(6)

# The averaged form (1/70) sum g^T g as printed, used as the reference value.
Q_REFERENCE = MatRat.from_rows([
    [20, -6, -6, -6, -6, -6],
    [-6, 4, 1, 2, 2, 1],
    [-6, 1, 4, 1, 2, 2],
    [-6, 2, 1, 4, 1, 2],
    [-6, 2, 2, 1, 4, 1],
    [-6, 1, 2, 2, 1, 4],
])

Q_SCALE = Fraction(1, 70)

_cache: dict = {}


def symmetry_group() -> list[MatRat]:
    """The order-120 group generated by X5 and X2 (cached)."""
    if "G" not in _cache:
        _cache["G"] = group_closure([X5, X2])
    return _cache["G"]


def extended_group() -> list[MatRat]:
    """The order-240 group generated by X5, X2 and -I."""
    if "G~" not in _cache:
        _cache["G~"] = group_closure([X5, X2, NEG_I6])
    return _cache["G~"]


def q_form() -> MatRat:
    """The invariant form recomputed from the group (not copied from the table)."""
    if "Q" not in _cache:
        _cache["Q"] = invariant_form(symmetry_group(), Q_SCALE)
    return _cache["Q"]


def p_factor() -> np.ndarray:
    if "P" not in _cache:
        _cache["P"] = factor_form(q_form())
    return _cache["P"].copy()
