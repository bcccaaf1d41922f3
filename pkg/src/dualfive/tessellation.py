"""The 12-pentagon tessellation of the five-crosscap surface and its double cover.

Each of the twelve components of the (s, t) parameter domain is reached from
the triangle ``0 < y < x < 1`` by a rational map, and the triangle from the
unit square by a piecewise-linear map.  Composing with the homogeneous
parameterization of the cross-ratio surface gives a vector of rational
functions of ``(u, v)``; clearing denominators and the polynomial gcd gives
the closure of each patch, total on the closed square.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import sqrt
from typing import Callable, Sequence

import numpy as np
import sympy as sp

from .exactlin import MatRat, ProjVec, canonical_ints, p_factor, q_form, quadratic_value


class OutOfDomain(ValueError):
    pass


class NotClosedSurface(ValueError):
    pass


class NonPositiveNorm(ArithmeticError):
    pass


HALF = Fraction(1, 2)

# Pentagon corners in the (u, v) square, in boundary order.
CORNERS = ((HALF, Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)),
           (Fraction(0), Fraction(1)), (Fraction(0), Fraction(0)))

# (s, t) as functions of (x, y) for each component; valid for Fractions and sympy symbols.
REGION_MAPS: dict[int, Callable] = {
    1: lambda x, y: (x, y),
    2: lambda x, y: ((x - y) / (1 - y), y / (y - 1)),
    3: lambda x, y: (1 / (x * y), x / y),
    4: lambda x, y: (y, x),
    5: lambda x, y: (y / (y - 1), (x - y) / (1 - y)),
    6: lambda x, y: (x / (x - 1), (x - y) / (x - 1)),
    7: lambda x, y: ((x - y) / (x - 1), x / (x - 1)),
    8: lambda x, y: (x / y, 1 / (x * y)),
    9: lambda x, y: ((1 - y) / (x - y), y / (y - x)),
    10: lambda x, y: (1 / (1 - y), (1 - x) / (1 - y)),
    11: lambda x, y: ((1 - x) / (1 - y), 1 / (1 - y)),
    12: lambda x, y: (y / (y - x), (1 - y) / (x - y)),
}

# Vertex coordinates as listed; the sign matters for the lift to R^6.
VERTICES: dict[int, tuple] = {
    1: (1, 1, 0, 0, 1, 1),
    2: (1, 1, 1, 0, 0, 1),
    3: (1, 1, 1, 1, 0, 0),
    4: (1, 0, 1, 1, 1, 0),
    5: (1, 0, 0, 1, 1, 1),
    6: (0, 0, -1, 0, 1, 0),
    7: (0, 0, 0, -1, 0, 1),
    8: (0, 1, 0, 0, -1, 0),
    9: (0, 0, 1, 0, 0, -1),
    10: (0, -1, 0, 1, 0, 0),
    11: (0, 0, 0, 1, 0, 0),
    12: (0, 0, 0, 0, 0, 1),
    13: (0, 0, 1, 0, 0, 0),
    14: (0, 0, 0, 0, 1, 0),
    15: (0, 1, 0, 0, 0, 0),
}

# Oriented faces of the genus-4 double cover on signed vertex ids.
# Ids 1..12 are the faces k, ids 13..24 the conjugate faces k-bar.
FACES: dict[int, tuple] = {
    1: (1, 2, 3, 4, 5),
    2: (1, 5, -9, -13, 6),
    3: (8, 15, 11, -7, 3),
    4: (-12, 9, 4, 3, -7),
    5: (12, -9, 5, 10, 11),
    6: (-8, -15, 10, 5, 4),
    7: (-8, 4, 9, 13, 14),
    8: (8, 3, 2, -6, -14),
    9: (1, 6, 14, 15, -10),
    10: (1, -10, -11, 7, 2),
    11: (12, 13, -6, 2, 7),
    12: (12, 11, 15, 14, 13),
    13: (-1, -5, -4, -3, -2),
    14: (-1, -6, 13, 9, -5),
    15: (-8, -3, 7, -11, -15),
    16: (12, 7, -3, -4, -9),
    17: (-12, -11, -10, -5, 9),
    18: (8, -4, -5, -10, 15),
    19: (8, -14, -13, -9, -4),
    20: (-8, 14, 6, -2, -3),
    21: (-1, 10, -15, -14, -6),
    22: (-1, -2, -7, 11, 10),
    23: (-12, -7, -2, 6, -13),
    24: (-12, -13, -14, -15, -11),
}


def face_label(fid: int) -> str:
    return str(fid) if fid <= 12 else f"{fid - 12}bar"


# The branch-line hexagons of the double cover (lines alpha_1..5, then alpha'_1..5).
HEXAGONS: dict[str, tuple] = {
    "alpha1": (1, 5, 10, -1, -5, -10),
    "alpha2": (2, 1, 6, -2, -1, -6),
    "alpha3": (3, 2, 7, -3, -2, -7),
    "alpha4": (4, 3, 8, -4, -3, -8),
    "alpha5": (5, 4, 9, -5, -4, -9),
    "alpha1'": (10, 15, 11, -10, -15, -11),
    "alpha2'": (6, 13, 14, -6, -13, -14),
    "alpha3'": (7, 11, 12, -7, -11, -12),
    "alpha4'": (8, 14, 15, -8, -14, -15),
    "alpha5'": (9, 12, 13, -9, -12, -13),
}

# Integer conjugands g_i of the listed symmetric transforms gamma_i = P g_i P^-1.
GAMMA_CONJUGANDS: list[tuple] = [
    ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0),
     (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)),
    ((1, 0, 0, -1, 0, 0), (2, 0, -1, -1, 0, -1), (0, 0, 0, -1, 0, 0),
     (2, -1, 0, -1, -1, 0), (0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0)),
    ((-1, 0, 0, 1, 0, 1), (0, 0, 0, 0, 0, 1), (2, -1, -1, 0, -1, 0),
     (0, 0, 0, 1, 0, 0), (-2, 0, 1, 1, 0, 1), (-2, 1, 0, 1, 0, 1)),
    ((1, 0, 0, 0, 0, -1), (2, -1, 0, -1, 0, -1), (0, 0, 1, 0, 0, 0),
     (0, 0, 0, 1, 0, 0), (2, 0, -1, 0, -1, -1), (0, 0, 0, 0, 0, -1)),
    ((-1, 1, 0, 1, 0, 0), (-2, 1, 0, 1, 0, 1), (-2, 1, 0, 1, 1, 0),
     (0, 0, 0, 1, 0, 0), (2, 0, -1, 0, -1, -1), (0, 1, 0, 0, 0, 0)),
    ((1, -1, 0, 0, 0, 0), (0, -1, 0, 0, 0, 0), (2, -1, -1, 0, -1, 0),
     (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (2, -1, 0, -1, 0, -1)),
    ((-1, 0, 1, 0, 0, 1), (-2, 0, 1, 1, 0, 1), (0, 0, 1, 0, 0, 0),
     (2, -1, 0, -1, -1, 0), (0, 0, 0, 0, 0, 1), (-2, 0, 1, 0, 1, 1)),
    ((1, 0, 0, 0, -1, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0),
     (2, -1, 0, -1, -1, 0), (0, 0, 0, 0, -1, 0), (2, 0, -1, 0, -1, -1)),
    ((-1, 1, 0, 0, 1, 0), (0, 0, 0, 0, 1, 0), (-2, 1, 0, 1, 1, 0),
     (-2, 1, 1, 0, 1, 0), (0, 1, 0, 0, 0, 0), (2, 0, -1, -1, 0, -1)),
    ((1, 0, -1, 0, 0, 0), (0, 0, 0, 0, 0, 1), (2, -1, -1, 0, -1, 0),
     (0, 0, -1, 0, 0, 0), (2, 0, -1, -1, 0, -1), (0, 0, 0, 0, 1, 0)),
    ((-1, 0, 1, 0, 1, 0), (2, -1, 0, -1, 0, -1), (0, 0, 1, 0, 0, 0),
     (-2, 1, 1, 0, 1, 0), (-2, 0, 1, 0, 1, 1), (0, 0, 0, 0, 1, 0)),
    ((3, -1, -1, -1, -1, -1), (2, 0, -1, 0, -1, -1), (2, -1, -1, 0, -1, 0),
     (2, -1, 0, -1, -1, 0), (2, -1, 0, -1, 0, -1), (2, 0, -1, -1, 0, -1)),
]


def gamma_conjugand(i: int) -> MatRat:
    return MatRat.from_rows(GAMMA_CONJUGANDS[i - 1])


# ---------------------------------------------------------------- parameter maps

def _in_unit(a) -> bool:
    return 0 <= a <= 1


def uv_to_xy(u, v):
    """Square ``[0,1]^2`` onto the closed triangle ``0 <= y <= x <= 1``."""
    if not (_in_unit(u) and _in_unit(v)):
        raise OutOfDomain(f"(u, v) = ({u}, {v}) is outside the unit square")
    if u <= HALF:
        return 2 * u - u * v, u * v
    return 1 - v + u * v, -1 + 2 * u + v - u * v


def region_map(n: int, x, y):
    if n not in REGION_MAPS:
        raise OutOfDomain(f"no region {n}")
    if not (0 < y < x < 1):
        raise OutOfDomain(f"(x, y) = ({x}, {y}) is not inside 0 < y < x < 1")
    return REGION_MAPS[n](x, y)


def homogeneous_point(s, t) -> tuple:
    """Denominator-free form of ``[1, s, t/s, (1-s)/(1-t), 1-t, (s-t)/(s(1-t))]``."""
    return (s * (1 - t), s * s * (1 - t), t * (1 - t), s * (1 - s), s * (1 - t) ** 2, s - t)


# --------------------------------------------------------- symbolic face patches

_U, _V = sp.symbols("u v")


def _homogeneous_polys(sn, sd, tn, td) -> list:
    # p(s,t) with s = sn/sd, t = tn/td, multiplied through by sd^2 td^2
    return [
        sn * (td - tn) * sd * td,
        sn ** 2 * (td - tn) * td,
        tn * (td - tn) * sd ** 2,
        sn * (sd - sn) * td ** 2,
        sn * (td - tn) ** 2 * sd,
        (sn * td - tn * sd) * sd * td,
    ]


def _poly_to_dict(p: sp.Poly) -> dict:
    return {m: Fraction(int(c.p), int(c.q)) for m, c in p.terms() if c != 0}


@lru_cache(maxsize=None)
def face_polynomials(region: int) -> tuple:
    """Gcd-free polynomial vectors of the patch, one per half of the square.

    Returns ``(low, high)``; ``low`` is valid for ``u <= 1/2`` and ``high``
    for ``u >= 1/2``.  Each is a tuple of six ``{(i, j): coeff}`` dicts for
    ``coeff * u**i * v**j``.  The overall constant is chosen so that the two
    halves agree identically on ``u = 1/2`` and the patch value at
    ``(1/4, 1/2)`` is a canonical representative.
    """
    halves = []
    for x, y in ((2 * _U - _U * _V, _U * _V), (1 - _V + _U * _V, -1 + 2 * _U + _V - _U * _V)):
        s, t = REGION_MAPS[region](x, y)
        sn, sd = sp.fraction(sp.cancel(sp.together(s)))
        tn, td = sp.fraction(sp.cancel(sp.together(t)))
        polys = [sp.Poly(sp.expand(c), _U, _V, domain="QQ") for c in _homogeneous_polys(sn, sd, tn, td)]
        g = polys[0]
        for q in polys[1:]:
            g = sp.gcd(g, q)
        polys = [sp.Poly(sp.div(q, g)[0], _U, _V, domain="QQ") for q in polys]
        halves.append(polys)
    low, high = halves

    # make the two halves agree on the seam u = 1/2
    seam_low = [q.subs(_U, sp.Rational(1, 2)).as_expr() for q in low]
    seam_high = [q.subs(_U, sp.Rational(1, 2)).as_expr() for q in high]
    ratios = {sp.cancel(a / b) for a, b in zip(seam_low, seam_high) if b != 0}
    ratio = ratios.pop() if len(ratios) == 1 else None
    if ratio is None or not ratio.is_Rational:
        raise ArithmeticError(f"region {region}: halves differ on the seam by a non-constant factor")
    high = [q * ratio for q in high]

    low_d = [_poly_to_dict(q) for q in low]
    high_d = [_poly_to_dict(q) for q in high]

    # fix the overall constant: integer content 1, canonical sign at an interior point
    vals = [_eval_dict(d, Fraction(1, 4), HALF) for d in low_d]
    ref = canonical_ints(vals)
    lead = next(i for i, a in enumerate(ref) if a)
    scale = Fraction(ref[lead]) / vals[lead]
    low_d = [{m: c * scale for m, c in d.items()} for d in low_d]
    high_d = [{m: c * scale for m, c in d.items()} for d in high_d]
    return tuple(low_d), tuple(high_d)


def _eval_dict(d: dict, u, v):
    return sum((c * u ** i * v ** j for (i, j), c in d.items()), Fraction(0))


def _check_region(i: int):
    if i not in REGION_MAPS:
        raise OutOfDomain(f"no region {i}")


def face_vector(i: int, u, v) -> tuple:
    """Exact, sign-consistent homogeneous vector of patch ``i`` at ``(u, v)``."""
    _check_region(i)
    u, v = Fraction(u), Fraction(v)
    if not (_in_unit(u) and _in_unit(v)):
        raise OutOfDomain(f"(u, v) = ({u}, {v}) is outside the unit square")
    half = face_polynomials(i)[0 if u <= HALF else 1]
    return tuple(_eval_dict(d, u, v) for d in half)


def face_param(i: int, u, v) -> ProjVec:
    """The point ``f_i(u, v)`` of RP^5, defined on the whole closed square."""
    return ProjVec.of(face_vector(i, u, v))


@lru_cache(maxsize=None)
def _float_coeffs(i: int):
    out = []
    for half in face_polynomials(i):
        comps = []
        for d in half:
            mons = np.array(list(d.keys()), dtype=int).reshape(-1, 2)
            coef = np.array([float(c) for c in d.values()])
            comps.append((mons, coef))
        out.append(comps)
    return out


def face_vector_float(i: int, u, v) -> np.ndarray:
    """Vectorized float evaluation; returns shape ``(..., 6)``."""
    _check_region(i)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u, v = np.broadcast_arrays(u, v)
    if np.any((u < 0) | (u > 1) | (v < 0) | (v > 1)):
        raise OutOfDomain("(u, v) outside the unit square")
    low, high = _float_coeffs(i)
    out = np.empty(u.shape + (6,))
    upper = u > 0.5
    for half, mask in ((low, ~upper), (high, upper)):
        uu, vv = u[mask], v[mask]
        for k, (mons, coef) in enumerate(half):
            acc = np.zeros(uu.shape)
            for (a, b), c in zip(mons, coef):
                acc += c * uu ** a * vv ** b
            out[..., k][mask] = acc
    return out


# ------------------------------------------------------------------- vertices

def vertex_table() -> list[ProjVec]:
    """The fifteen vertices as canonical projective points."""
    return [ProjVec.of(VERTICES[k]) for k in range(1, 16)]


def signed_vertex(j: int) -> tuple:
    """Integer coordinates of the signed vertex ``j`` (negative ids are antipodes)."""
    base = VERTICES[abs(j)]
    return base if j > 0 else tuple(-a for a in base)


def identify_vertex(vec: Sequence) -> int:
    """Signed vertex id ``j`` with ``vec = c * signed_vertex(j)`` for some ``c > 0``."""
    target = canonical_ints(vec)
    for k, coords in VERTICES.items():
        if canonical_ints(coords) == target:
            # compare signs on a nonzero coordinate
            idx = next(n for n, a in enumerate(coords) if a)
            return k if (Fraction(vec[idx]) > 0) == (coords[idx] > 0) else -k
    raise LookupError(f"{vec} is not a vertex")


# ---------------------------------------------------------------- cell complexes

@dataclass
class CellComplex:
    """Surface given by oriented face cycles; edges are unordered vertex pairs."""

    vertices: list
    faces: list
    face_ids: list = field(default_factory=list)
    coords: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.face_ids:
            self.face_ids = list(range(1, len(self.faces) + 1))

    def edges(self) -> dict:
        """Map ``frozenset({a, b})`` to the list of ``(face index, a, b)`` uses."""
        uses = defaultdict(list)
        for n, cyc in enumerate(self.faces):
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                uses[frozenset((a, b))].append((n, a, b))
        return dict(uses)

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges()), len(self.faces)

    def vertex_face_degree(self) -> dict:
        deg = defaultdict(int)
        for cyc in self.faces:
            for a in set(cyc):
                deg[a] += 1
        return dict(deg)

    def is_connected(self) -> bool:
        if not self.faces:
            return len(self.vertices) <= 1
        adj = defaultdict(set)
        for uses in self.edges().values():
            for n, _, _ in uses:
                adj[n].update(m for m, _, _ in uses)
        seen = {0}
        queue = deque([0])
        while queue:
            n = queue.popleft()
            for m in adj[n] - seen:
                seen.add(m)
                queue.append(m)
        return len(seen) == len(self.faces)

    def shared_edges(self, a: int, b: int) -> list:
        """Edges shared by faces with ids ``a`` and ``b``."""
        ia, ib = self.face_ids.index(a), self.face_ids.index(b)
        return [tuple(sorted(e)) for e, uses in self.edges().items()
                if {ia, ib} <= {n for n, _, _ in uses}]


def build_complex(cover: str = "single") -> CellComplex:
    """``single``: 12 pentagons on vertices 1..15; ``double``: 24 signed pentagons."""
    if cover == "single":
        faces = [tuple(abs(a) for a in FACES[k]) for k in range(1, 13)]
        coords = {k: ProjVec.of(VERTICES[k]) for k in VERTICES}
        return CellComplex(list(range(1, 16)), faces, list(range(1, 13)), coords)
    if cover == "double":
        verts = [j for k in range(1, 16) for j in (k, -k)]
        coords = {j: signed_vertex(j) for j in verts}
        return CellComplex(verts, [FACES[k] for k in range(1, 25)], list(range(1, 25)), coords)
    raise ValueError(f"unknown cover {cover!r}")


def orientation(c: CellComplex) -> list | None:
    """Signs making every edge traversed once each way, or ``None`` if impossible.

    Propagates a choice across the face adjacency graph, one component at a time.
    """
    edges = c.edges()
    by_face = defaultdict(list)
    for uses in edges.values():
        (f, a, b), (g, a2, b2) = uses
        same_dir = (a, b) == (a2, b2)
        by_face[f].append((g, same_dir))
        by_face[g].append((f, same_dir))
    signs: list = [0] * len(c.faces)
    for start in range(len(c.faces)):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for g, same_dir in by_face[f]:
                want = -signs[f] if same_dir else signs[f]
                if signs[g] == 0:
                    signs[g] = want
                    queue.append(g)
                elif signs[g] != want:
                    return None
    return signs


def euler_and_genus(c: CellComplex) -> tuple[int, bool, int]:
    """``(chi, orientable, genus)`` if orientable, else ``(chi, False, crosscaps)``."""
    for e, uses in c.edges().items():
        if len(uses) != 2:
            raise NotClosedSurface(f"edge {sorted(e)} lies on {len(uses)} faces")
    v, e, f = c.counts()
    chi = v - e + f
    orientable = orientation(c) is not None
    return chi, orientable, (2 - chi) // 2 if orientable else 2 - chi


# ------------------------------------------------------- lift to R^6 and S^5

def _q_numpy() -> np.ndarray:
    return q_form().to_numpy()


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def lift_double(i: int, sign: int, u, v) -> np.ndarray:
    """``sign * f_i / sqrt(f_i^T Q f_i)``, a point of the genus-4 surface in R^6."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if _is_exact(u) and _is_exact(v):
        f = face_vector(i, u, v)
        norm2 = quadratic_value(q_form(), f)
        if norm2 <= 0:
            raise NonPositiveNorm(f"f^T Q f = {norm2} at region {i}, ({u}, {v})")
        return sign * np.array([float(a) for a in f]) / sqrt(norm2)
    f = face_vector_float(i, u, v)
    norm2 = np.einsum("...i,ij,...j->...", f, _q_numpy(), f)
    if np.any(norm2 <= 0):
        raise NonPositiveNorm(f"f^T Q f <= 0 in region {i}")
    return sign * f / np.sqrt(norm2)[..., None]


def symmetric_embedding(i: int, sign: int, u, v, P: np.ndarray | None = None) -> np.ndarray:
    """``P @ lift_double``: the patch on the unit sphere S^5."""
    if P is None:
        P = p_factor()
    return lift_double(i, sign, u, v) @ P.T


def gamma_transforms(P: np.ndarray | None = None) -> list[np.ndarray]:
    """``[gamma_1^+, ..., gamma_12^+, gamma_1^-, ..., gamma_12^-]`` as floats."""
    if P is None:
        P = p_factor()
    Pinv = np.linalg.inv(P)
    plus = [P @ gamma_conjugand(i).to_numpy() @ Pinv for i in range(1, 13)]
    return plus + [-g for g in plus]


def branch_hexagons() -> dict[str, tuple]:
    """The ten hexagons as listed; signs are only meaningful projectively."""
    return dict(HEXAGONS)


def branch_hexagon_cycles() -> dict[str, tuple]:
    """Each hexagon re-signed so that it is a closed edge path of the double cover.

    A listed cycle ``(a, b, c, -a, -b, -c)`` is a projective statement.  For
    the primed lines the listed signs do not follow edges of the face table,
    so the lift ``(a, +-b, +-c, ...)`` that does is searched for, keeping
    ``a`` and preferring the fewest sign changes.
    """
    edges = _double_complex().edges()
    out = {}
    for name, cyc in HEXAGONS.items():
        a, b, c = cyc[:3]
        found = None
        for sb, sc in sorted(((1, 1), (1, -1), (-1, 1), (-1, -1)), key=lambda t: t.count(-1)):
            trial = (a, sb * b, sc * c, -a, -sb * b, -sc * c)
            if all(frozenset(e) in edges for e in zip(trial, trial[1:] + trial[:1])):
                found = trial
                break
        if found is None:
            raise LookupError(f"hexagon {name} has no signed lift along double-cover edges")
        out[name] = found
    return out


# ------------------------------------------------- region <-> face correspondence

@dataclass(frozen=True)
class PatchFace:
    """Where the lift ``sign * f_region`` lands in the double-cover face table."""

    region: int
    sign: int
    face: int
    corners: tuple          # signed vertex ids at CORNERS, in square-boundary order
    same_orientation: bool  # square boundary order agrees with the face cycle


def _cyclic_equal(a: Sequence, b: Sequence) -> bool:
    n = len(a)
    return any(tuple(a[k:]) + tuple(a[:k]) == tuple(b) for k in range(n))


@lru_cache(maxsize=None)
def patch_faces() -> dict:
    """Match corners of every lifted patch against the signed face table.

    Returns ``{(region, sign): PatchFace}``.  Raises if some patch does not
    reproduce a face of the table.
    """
    out = {}
    for region in range(1, 13):
        base = tuple(identify_vertex(face_vector(region, cu, cv)) for cu, cv in CORNERS)
        for sign in (1, -1):
            corners = tuple(sign * j for j in base)
            match = None
            for fid, cyc in FACES.items():
                if set(cyc) == set(corners):
                    if _cyclic_equal(corners, cyc):
                        match = (fid, True)
                    elif _cyclic_equal(corners[::-1], cyc):
                        match = (fid, False)
                    break
            if match is None:
                raise LookupError(f"region {region} sign {sign}: corners {corners} match no face")
            out[region, sign] = PatchFace(region, sign, match[0], corners, match[1])
    return out


def face_patch(fid: int) -> PatchFace:
    for pf in patch_faces().values():
        if pf.face == fid:
            return pf
    raise LookupError(f"face {fid} not produced by any patch")


def region_of_face_single() -> dict[int, int]:
    """Projective face (1..12) reached by each region."""
    return {r: (pf.face - 1) % 12 + 1 for (r, s), pf in patch_faces().items() if s == 1}


def boundary_uv(edge: int, tau) -> tuple:
    """Point at fraction ``tau`` along pentagon edge ``edge`` (0..4) of the square.

    Edge ``m`` runs straight from ``CORNERS[m]`` to ``CORNERS[m+1]``.
    """
    (u0, v0), (u1, v1) = CORNERS[edge], CORNERS[(edge + 1) % 5]
    tau = np.asarray(tau, dtype=float)
    return float(u0) + (float(u1) - float(u0)) * tau, float(v0) + (float(v1) - float(v0)) * tau


# ---------------------------------------------------------------- seams

def patch_edge(pf: PatchFace, a: int, b: int) -> tuple[int, bool]:
    """Square edge index of the pentagon side ``{a, b}`` and whether it runs b -> a."""
    cs = pf.corners
    for m in range(5):
        pair = (cs[m], cs[(m + 1) % 5])
        if pair == (a, b):
            return m, False
        if pair == (b, a):
            return m, True
    raise LookupError(f"{a}-{b} is not a side of face {face_label(pf.face)}")


def _edge_curve(pf: PatchFace, a: int, b: int, tau, embed):
    m, rev = patch_edge(pf, a, b)
    tau = np.asarray(tau, dtype=float)
    return embed(pf.region, pf.sign, *boundary_uv(m, 1 - tau if rev else tau))


def _edge_angle(points: np.ndarray, a: int, b: int, P: np.ndarray) -> np.ndarray:
    """Angle of each point inside the plane spanned by the two signed end vertices."""
    basis = np.array([signed_vertex(a), signed_vertex(b)], dtype=float) @ P.T
    coef, *_ = np.linalg.lstsq(basis.T, points.T, rcond=None)
    return np.arctan2(coef[1], coef[0])


def seam_mismatch(fa: int, fb: int, samples: int = 33, P: np.ndarray | None = None,
                  embed=None) -> float:
    """Largest distance between matching boundary points of two glued faces.

    Adjacent patches trace their common edge at different speeds, so points
    are matched by their position along the edge (the angle inside the plane
    of the two end vertices), solved on the second patch by bisection.
    """
    if P is None:
        P = p_factor()
    if embed is None:
        def embed(i, s, u, v):
            return symmetric_embedding(i, s, u, v, P)
    shared = _double_complex().shared_edges(fa, fb)
    if not shared:
        raise LookupError(f"faces {face_label(fa)} and {face_label(fb)} are not adjacent")
    A, B = face_patch(fa), face_patch(fb)
    worst = 0.0
    for a, b in shared:
        tau = np.linspace(0.0, 1.0, samples)
        pa = _edge_curve(A, a, b, tau, embed)
        target = _edge_angle(pa, a, b, P)
        lo, hi = np.zeros(samples), np.ones(samples)
        ang_lo = _edge_angle(_edge_curve(B, a, b, lo, embed), a, b, P)
        increasing = _edge_angle(_edge_curve(B, a, b, np.ones(1), embed), a, b, P)[0] > ang_lo[0]
        for _ in range(52):
            mid = 0.5 * (lo + hi)
            ang = _edge_angle(_edge_curve(B, a, b, mid, embed), a, b, P)
            below = ang < target if increasing else ang > target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        pb = _edge_curve(B, a, b, 0.5 * (lo + hi), embed)
        worst = max(worst, float(np.abs(pa - pb).max()))
    return worst


@lru_cache(maxsize=None)
def _double_complex() -> CellComplex:
    return build_complex("double")


def glued_face_pairs() -> list[tuple[int, int]]:
    """Pairs of face ids of the double cover that share an edge, sorted."""
    pairs = set()
    for uses in _double_complex().edges().values():
        (f, _, _), (g, _, _) = uses
        ids = _double_complex().face_ids
        pairs.add(tuple(sorted((ids[f], ids[g]))))
    return sorted(pairs)


def max_seam_mismatch(samples: int = 33, P: np.ndarray | None = None) -> float:
    """Worst :func:`seam_mismatch` over every glued edge of the double cover."""
    if P is None:
        P = p_factor()
    return max(seam_mismatch(a, b, samples, P) for a, b in glued_face_pairs())


def edge_planarity(fid: int, P: np.ndarray | None = None, samples: int = 33) -> float:
    """Largest distance of the patch's boundary from the planes of its sides."""
    if P is None:
        P = p_factor()
    pf = face_patch(fid)
    cs = pf.corners
    worst = 0.0
    for m in range(5):
        a, b = cs[m], cs[(m + 1) % 5]
        pts = _edge_curve(pf, a, b, np.linspace(0, 1, samples),
                          lambda i, s, u, v: symmetric_embedding(i, s, u, v, P))
        basis = np.array([signed_vertex(a), signed_vertex(b)], dtype=float) @ P.T
        coef, *_ = np.linalg.lstsq(basis.T, pts.T, rcond=None)
        worst = max(worst, float(np.abs(pts - (basis.T @ coef).T).max()))
    return worst
