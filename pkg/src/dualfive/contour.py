"""Pochhammer phase surfaces and the numerical B4 Pochhammer contour.

A sheet is a copy of the integration polygon labelled by a bit vector ``p``:
bit ``j`` records whether the phase ``exp(2 pi i alpha_j)`` has been picked
up.  Crossing edge ``j`` flips bit ``j``, so edge ``j`` of sheet ``p`` is
glued to edge ``j`` of sheet ``p ^ e_j``.  Corner holes where edges ``i``
and ``j`` meet are filled by disks when the four flips close up.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .quadrature import QuadratureFailure, QuadratureSpec, gauss_legendre, integrate_01
from .tessellation import CellComplex

__all__ = [
    "QuadratureFailure",
    "PhaseLabel",
    "PhaseSurface",
    "PochhammerPath",
    "edge_phase_exponents",
    "build_phase_surface",
    "phase_complex",
    "corner_cycle_check",
    "corner_holes",
    "all_corner_pairs",
    "loop_report",
    "mutate_gluing",
    "pochhammer_b4",
    "pochhammer_path",
]


# Pentagon edges of the first region, in boundary order, and the exponent
# whose phase the integrand picks up when crossing each.  ``A`` and ``B``
# are the lines introduced by blowing up the two degenerate corners.
_EDGE_EXPONENTS = (
    ("A", 1),
    ("z2=0", 2),
    ("z1=1", 3),
    ("B", 4),
    ("z1-z2=0", 5),
)


def edge_phase_exponents() -> dict[str, int]:
    """Map each pentagon edge name to the index of the exponent it shifts."""
    return dict(_EDGE_EXPONENTS)


@dataclass(frozen=True, order=True)
class PhaseLabel:
    """Bit vector of accumulated phases; bit ``j-1`` belongs to ``alpha_j``."""

    bits: tuple

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"phase bits must be 0 or 1, got {self.bits}")

    @classmethod
    def from_int(cls, n: int, k: int) -> "PhaseLabel":
        return cls(tuple((n >> j) & 1 for j in range(k)))

    @property
    def k(self) -> int:
        return len(self.bits)

    @property
    def parity(self) -> int:
        """Orientation sign ``(-1)**sum(bits)``."""
        return -1 if sum(self.bits) % 2 else 1

    def flip(self, j: int) -> "PhaseLabel":
        """Flip the bit of exponent ``j`` (1-based)."""
        b = list(self.bits)
        b[j - 1] ^= 1
        return PhaseLabel(tuple(b))

    def exponent_sum(self, alpha: Sequence) -> complex:
        return sum(b * a for b, a in zip(self.bits, alpha))

    def __str__(self):
        return "".join(map(str, self.bits))


@dataclass
class PhaseSurface:
    """Sheets and their edge gluings.

    ``gluing`` maps ``(sheet, j)`` to the partner ``(sheet', j)``.  Corner
    ``c`` of a sheet (0-based) sits between edge ``c`` and edge ``c+1``
    (cyclically, 1-based edge labels), so edge ``j`` runs from corner
    ``j-1`` to corner ``j``.
    """

    k: int
    sheets: list
    gluing: dict = field(default_factory=dict)

    def partner(self, sheet: PhaseLabel, j: int) -> PhaseLabel:
        return self.gluing[(sheet, j)][0]

    def glued_pairs(self) -> list:
        seen, pairs = set(), []
        for a, b in self.gluing.items():
            if a not in seen:
                seen.update((a, b))
                pairs.append((a, b))
        return pairs

    def is_involution(self) -> bool:
        return all(self.gluing.get(b) == a and a != b for a, b in self.gluing.items())

    def corner_classes(self) -> dict:
        """Union-find of sheet corners under the edge gluings."""
        parent: dict = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for p in self.sheets:
            for c in range(self.k):
                find((p, c))
        for (p, j), (q, _) in self.gluing.items():
            for c in ((j - 2) % self.k, (j - 1) % self.k):
                union((p, c), (q, c))
        roots = sorted({find(x) for x in parent})
        index = {r: n for n, r in enumerate(roots)}
        return {x: index[find(x)] for x in parent}

    def counts(self) -> tuple[int, int, int]:
        """``(V, E, F)`` of the glued surface with corner disks filled."""
        return len(set(self.corner_classes().values())), len(self.glued_pairs()), len(self.sheets)

    def is_connected(self) -> bool:
        seen = {self.sheets[0]}
        stack = [self.sheets[0]]
        while stack:
            p = stack.pop()
            for j in range(1, self.k + 1):
                q = self.partner(p, j)
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return len(seen) == len(self.sheets)

    def parity_orientable(self) -> bool:
        """Every gluing joins sheets of opposite parity.

        Edge ``j`` is traversed corner ``j-1`` to corner ``j`` on both sides,
        so the two sheets induce opposite directions exactly when their
        orientation signs differ.
        """
        return all(a[0].parity != b[0].parity for a, b in self.glued_pairs())

    def orientable(self) -> bool:
        """Search for any consistent choice of sheet signs, not only parity."""
        sign = {}
        for start in self.sheets:
            if start in sign:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                p = stack.pop()
                for j in range(1, self.k + 1):
                    q = self.partner(p, j)
                    if q not in sign:
                        sign[q] = -sign[p]
                        stack.append(q)
                    elif sign[q] == sign[p]:
                        return False
        return True

    def euler_and_genus(self) -> tuple[int, bool, int]:
        """``(chi, orientable, genus or number of crosscaps)`` of the closed surface."""
        v, e, f = self.counts()
        chi = v - e + f
        ori = self.orientable()
        return chi, ori, (2 - chi) // 2 if ori else 2 - chi


def _all_labels(k: int) -> list[PhaseLabel]:
    return [PhaseLabel.from_int(n, k) for n in range(2 ** k)]


def _standard_gluing(k: int) -> dict:
    return {(p, j): (p.flip(j), j) for p in _all_labels(k) for j in range(1, k + 1)}


def build_phase_surface(k: int) -> tuple[PhaseSurface, CellComplex | None]:
    """All ``2**k`` sheets glued by ``p ~ p ^ e_j`` along edge ``j``.

    For ``k >= 3`` the sheets are ``k``-gons and the second return value is
    the closed surface as a :class:`CellComplex`: vertices are the filled
    corner holes and odd-parity sheets are listed with reversed boundary.
    For ``k = 2`` the sheets are the four straight segments of the B4
    commutator loop, there is no 2-cell structure and ``None`` is returned;
    see :func:`loop_report`.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    surface = PhaseSurface(k, _all_labels(k), _standard_gluing(k))
    if k == 2:
        return surface, None
    return surface, phase_complex(surface)


def phase_complex(surface: PhaseSurface) -> CellComplex:
    """The sheets as oriented polygons on the corner-class vertices."""
    classes = surface.corner_classes()
    faces = []
    for p in surface.sheets:
        cyc = [classes[(p, c)] for c in range(surface.k)]
        faces.append(tuple(cyc if p.parity > 0 else cyc[::-1]))
    verts = sorted(set(classes.values()))
    return CellComplex(verts, faces, list(range(1, len(faces) + 1)))


def loop_report(surface: PhaseSurface) -> dict:
    """1-complex summary for ``k = 2``: segments are edges, gluings are vertices.

    Each gluing of segment ends is one of the small circles about 0 or 1.
    """
    if surface.k != 2:
        raise ValueError("loop report is for k = 2")
    pairs = surface.glued_pairs()
    # walk the cycle starting from the home sheet, alternating the two flips
    start = surface.sheets[0]
    order, p, j = [start], start, 2
    while True:
        p = surface.partner(p, j)
        j = 3 - j
        if p == start:
            break
        order.append(p)
    v, e = len(pairs), len(surface.sheets)
    return {
        "V": v,
        "E": e,
        "chi": v - e,
        "cycles": 1 if len(order) == e else None,
        "sheet_order": [str(q) for q in order],
        "connected": surface.is_connected(),
    }


def corner_cycle_check(surface: PhaseSurface | int, i: int, j: int) -> bool:
    """True iff flipping across ``i, j, i, j`` returns every sheet to itself.

    That commutator closure is what lets the corner hole be filled by a disk.
    """
    if i == j:
        raise ValueError("corner needs two distinct edges")
    if isinstance(surface, int):
        surface = build_phase_surface(surface)[0]
    for p in surface.sheets:
        q = p
        for e in (i, j, i, j):
            q = surface.partner(q, e)
        if q != p:
            return False
    return True


def corner_holes(surface: PhaseSurface) -> list[tuple[int, int, frozenset]]:
    """The corner holes ``(i, j, sheets)`` between adjacent edges, one per coset.

    Sheets around a hole are the orbit of the alternating flips ``i, j``.
    """
    k = surface.k
    holes = []
    for c in range(k):
        i, j = c + 1, (c + 1) % k + 1
        seen = set()
        for p in surface.sheets:
            if p in seen:
                continue
            orbit, q, e = {p}, p, i
            for _ in range(4 * len(surface.sheets)):
                q = surface.partner(q, e)
                e = j if e == i else i
                if q == p and e == i:
                    break
                orbit.add(q)
            seen |= orbit
            holes.append((i, j, frozenset(orbit)))
    return holes


def all_corner_pairs(k: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, k + 1), 2))


def mutate_gluing(surface: PhaseSurface, j: int = 1, m: int | None = None) -> PhaseSurface:
    """Swap two edge-``j`` pairings so one sheet is glued to the wrong partner.

    ``(0, j)~(e_j, j)`` and ``(e_m, j)~(e_m + e_j, j)`` become
    ``(0, j)~(e_m + e_j, j)`` and ``(e_m, j)~(e_j, j)``.  The result is still
    an involution but joins sheets of equal parity.
    """
    k = surface.k
    if m is None:
        m = j % k + 1
    zero = PhaseLabel((0,) * k)
    a, b = zero, zero.flip(j)
    c, d = zero.flip(m), zero.flip(m).flip(j)
    glue = dict(surface.gluing)
    glue[(a, j)], glue[(d, j)] = (d, j), (a, j)
    glue[(c, j)], glue[(b, j)] = (b, j), (c, j)
    return PhaseSurface(k, list(surface.sheets), glue)


# ---------------------------------------------------------------------------
# B4 Pochhammer contour


@dataclass(frozen=True)
class PochhammerPath:
    """The eight pieces of the B4 commutator contour and their values.

    ``pieces`` is a tuple of ``(kind, phase, sign, value)`` in traversal
    order; ``value`` already includes phase and direction.
    """

    r: float
    alpha: tuple
    pieces: tuple

    @property
    def total(self) -> complex:
        segs = sum(v for kind, _, _, v in self.pieces if kind == "segment")
        circ = sum(v for kind, _, _, v in self.pieces if kind != "segment")
        return segs + circ

    @property
    def circle_total(self) -> complex:
        return sum(v for kind, _, _, v in self.pieces if kind != "segment")

    def final_phase(self) -> complex:
        """Phase after the last circle; equals 1 because the loop is a commutator."""
        a1, a2 = self.alpha
        net = 0
        for kind, _, _, _ in self.pieces:
            if kind == "circle1+":
                net += a2
            elif kind == "circle0+":
                net += a1
            elif kind == "circle1-":
                net -= a2
            elif kind == "circle0-":
                net -= a1
        return cmath.exp(2j * math.pi * net)


def _segment_integral(a1: complex, a2: complex, r: float, spec: QuadratureSpec) -> complex:
    # x = r + (1-2r) s, 1-x = r + (1-2r)(1-s)
    width = 1.0 - 2.0 * r

    def logf(s, sc):
        x = r + width * s
        xc = r + width * sc
        return (a1 - 1) * np.log(x) + (a2 - 1) * np.log(xc) + math.log(width)

    return integrate_01(logf, spec, log=True).value


def _circle_integral(a1: complex, a2: complex, r: float, center: int, turn: int, n: int) -> complex:
    """Integral over a full circle of radius ``r`` about ``center`` starting on [0, 1].

    The power with the branch point at ``center`` is continued along the
    circle explicitly; the other factor uses the principal branch.
    """
    t, w = gauss_legendre(n)
    phi = turn * 2 * math.pi * t
    if center == 0:
        z = r * np.exp(1j * phi)
        f = r ** (a1 - 1) * np.exp(1j * (a1 - 1) * phi) * np.exp((a2 - 1) * np.log(1 - z))
    else:
        # 1 - z = r exp(i phi), starting at z = 1 - r
        z = 1 - r * np.exp(1j * phi)
        f = np.exp((a1 - 1) * np.log(z)) * r ** (a2 - 1) * np.exp(1j * (a2 - 1) * phi)
    dz_dphi = 1j * (z - center)
    return complex(np.sum(w * f * dz_dphi) * turn * 2 * math.pi)


def pochhammer_path(alpha: Sequence, r: float = 1e-3, n: int = 64,
                    spec: QuadratureSpec | None = None) -> PochhammerPath:
    """Evaluate every piece of the commutator contour about 0 and 1.

    Traversal: ``[r, 1-r]`` with phase 1, circle about 1 counter-clockwise,
    back along the segment with phase ``e(alpha_2)``, circle about 0
    counter-clockwise, forward with ``e(alpha_1 + alpha_2)``, circle about 1
    clockwise, back with ``e(alpha_1)``, circle about 0 clockwise.
    """
    if not 0 < r < 0.5:
        raise ValueError("need 0 < r < 1/2")
    if n < 2:
        raise ValueError("need at least 2 circle nodes")
    a1, a2 = (complex(a) for a in alpha)
    if spec is None:
        spec = QuadratureSpec(level=10, abs_tol=1e-13, rel_tol=1e-13)
    seg = _segment_integral(a1, a2, r, spec)
    e1, e2 = cmath.exp(2j * math.pi * a1), cmath.exp(2j * math.pi * a2)

    pieces = []
    phase = 1 + 0j
    plan = (
        ("segment", 1, None),
        ("circle1+", None, (1, 1)),
        ("segment", -1, None),
        ("circle0+", None, (0, 1)),
        ("segment", 1, None),
        ("circle1-", None, (1, -1)),
        ("segment", -1, None),
        ("circle0-", None, (0, -1)),
    )
    for kind, sign, circ in plan:
        if kind == "segment":
            pieces.append((kind, phase, sign, phase * sign * seg))
            continue
        center, turn = circ
        # the circle starts at the current segment end with the current phase
        val = phase * _circle_integral(a1, a2, r, center, turn, n)
        pieces.append((kind, phase, turn, val))
        mult = e2 if center == 1 else e1
        phase = phase * mult if turn > 0 else phase / mult
    return PochhammerPath(r, (a1, a2), tuple(pieces))


def pochhammer_b4(alpha: Sequence, r: float = 1e-3, n: int = 64,
                  spec: QuadratureSpec | None = None) -> complex:
    """The B4 integrand integrated over the Pochhammer contour; entire in alpha."""
    return pochhammer_path(alpha, r, n, spec).total
