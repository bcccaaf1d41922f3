"""Self-check suites behind ``dualfive verify``."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import betafun, contour, crossratio, exactlin, meshout, tessellation

SUITES = ("group", "tessellation", "contour", "betafun", "mesh")


@dataclass
class Check:
    id: str
    desc: str
    status: str
    value: object
    tol: object


@dataclass
class VerifyReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def add(self, id: str, desc: str, ok: bool, value, tol=None):
        self.checks.append(Check(id, desc, "pass" if ok else "fail", value, tol))

    def measure(self, id: str, desc: str, value: float, tol: float):
        self.add(id, desc, bool(value <= tol), float(value), tol)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "checks": [asdict(c) for c in self.checks], "pass": self.passed}


def _group(rep: VerifyReport):
    G, Gx = exactlin.symmetry_group(), exactlin.extended_group()
    rep.add("group.order", "closure of X5, X2 has 120 elements", len(G) == 120, len(G), 120)
    rep.add("group.order_ext", "adding -I gives 240 elements", len(Gx) == 240, len(Gx), 240)
    Q = exactlin.q_form()
    rep.add("group.q_reference", "averaged form equals the reference matrix exactly",
            Q == exactlin.Q_REFERENCE, str(Q.rows == exactlin.Q_REFERENCE.rows), "exact")
    bad = sum(1 for g in G if g.T @ Q @ g != Q)
    rep.add("group.q_invariant", "g^T Q g = Q for every element", bad == 0, bad, 0)
    minors = exactlin.leading_minors(Q)
    rep.add("group.q_positive", "leading minors of Q are positive", all(m > 0 for m in minors),
            [str(m) for m in minors], "> 0")
    P = exactlin.p_factor()
    res = float(np.abs(P.T @ P - Q.to_numpy()).max())
    rep.measure("group.p_residual", "|P^T P - Q| for the triangular factor", res, 1e-12)
    rep.add("group.x2_involution", "X2 squares to the identity", exactlin.involution_check(exactlin.X2),
            True, "exact")


def _tessellation(rep: VerifyReport, points_per_face: int = 10):
    for cover, want in (("single", (15, 30, 12, -3, False, 5)), ("double", (30, 60, 24, -6, True, 4))):
        c = tessellation.build_complex(cover)
        got = c.counts() + tessellation.euler_and_genus(c)
        rep.add(f"tess.{cover}", f"{cover} cover (V,E,F,chi,orientable,genus|crosscaps)", got == want,
                list(got), list(want))
    degs = set(tessellation.build_complex("single").vertex_face_degree().values())
    rep.add("tess.degree", "every vertex of the single cover meets 4 faces", degs == {4}, sorted(degs), [4])
    try:
        pfs = tessellation.patch_faces()
        ok = len({pf.face for pf in pfs.values()}) == 24
        face1 = set(pfs[1, 1].corners) == {1, 2, 3, 4, 5}
    except LookupError as exc:
        ok, face1 = False, str(exc)
    rep.add("tess.corners", "patch corners reproduce all 24 signed faces", ok, ok, "exact")
    rep.add("tess.face1", "face 1 has corners v1..v5", face1 is True, face1, "exact")
    vt = tessellation.vertex_table()
    bad = sum(1 for v in vt if any(crossratio.projective_residuals(v)))
    rep.add("tess.vertices", "the 15 vertices lie on the variety", bad == 0 and len(vt) == 15, bad, 0)
    rng = random.Random(7)
    bad = 0
    for i in range(1, 13):
        for _ in range(points_per_face):
            u = Fraction(rng.randint(0, 97), 97)
            v = Fraction(rng.randint(0, 89), 89)
            bad += any(crossratio.projective_residuals(tessellation.face_param(i, u, v)))
    rep.add("tess.membership", "patch points satisfy the five quadrics exactly", bad == 0, bad, 0)
    ranks = set()
    for _ in range(20):
        s = Fraction(rng.randint(2, 50), rng.randint(51, 99))
        t = Fraction(rng.randint(2, 50), rng.randint(51, 99))
        if s == t:
            continue
        ranks.add(exactlin.rank_exact(crossratio.affine_jacobian(crossratio.five_from_params(s, t).values)))
    rep.add("tess.jacobian_rank", "Jacobian of the affine equations has rank 3", ranks == {3}, sorted(ranks), [3])


def _contour(rep: VerifyReport):
    s, c = contour.build_phase_surface(5)
    got = s.counts() + s.euler_and_genus()
    want = (40, 80, 32, -8, True, 5)
    rep.add("contour.k5", "phase surface (V,E,F,chi,orientable,genus)", got == want, list(got), list(want))
    rep.add("contour.complex", "cell complex agrees", tessellation.euler_and_genus(c) == (-8, True, 5),
            list(tessellation.euler_and_genus(c)), [-8, True, 5])
    rep.add("contour.connected", "phase surface is connected", s.is_connected(), s.is_connected(), True)
    rep.add("contour.parity", "every gluing joins opposite parities", s.parity_orientable(), True, True)
    holes = contour.corner_holes(s)
    closed = all(contour.corner_cycle_check(s, i, j) for i, j in contour.all_corner_pairs(5))
    rep.add("contour.holes", "corner holes between adjacent edges", len(holes) == 40, len(holes), 40)
    rep.add("contour.commutators", "all corner commutators close", closed, closed, True)
    m = contour.mutate_gluing(s)
    mutated_fails = (not all(contour.corner_cycle_check(m, i, j) for i, j in contour.all_corner_pairs(5))
                     and m.euler_and_genus() != (-8, True, 5))
    rep.add("contour.mutation", "a mis-glued surface is rejected", mutated_fails, list(m.euler_and_genus()), "!= [-8,true,5]")
    loop = contour.loop_report(contour.build_phase_surface(2)[0])
    rep.add("contour.k2", "B4 loop is one 4-segment cycle", (loop["V"], loop["E"], loop["cycles"]) == (4, 4, 1),
            [loop["V"], loop["E"], loop["chi"]], [4, 4, 0])
    v = contour.pochhammer_b4((0.5, 0.5))
    rep.measure("contour.poch_half", "Pochhammer (1/2,1/2) = 4 pi", abs(v - 4 * math.pi), 1e-7)
    rep.measure("contour.poch_11", "Pochhammer (1,1) vanishes", abs(contour.pochhammer_b4((1, 1))), 1e-8)
    rep.measure("contour.poch_sum0", "Pochhammer (1/2,-1/2) vanishes", abs(contour.pochhammer_b4((0.5, -0.5))), 1e-6)
    a = (0.3 + 0.2j, -0.7)
    diff = abs(contour.pochhammer_b4(a, r=1e-2) - contour.pochhammer_b4(a, r=1e-3))
    rep.measure("contour.deform", "result does not depend on the radius", diff, 1e-7)


def b4_grid() -> list[tuple]:
    """25 exponent pairs with real parts in [0.1, 4]."""
    re = (0.1, 0.5, 1.3, 2.7, 4.0)
    im = (0.0, 0.5, -1.0, 2.0, 0.25)
    return [(complex(re[i], im[j]), complex(re[(i + j) % 5], -im[i])) for i in range(5) for j in range(5)]


def b5_cyclic_tuples(count: int = 10, seed: int = 5) -> list[tuple]:
    rng = random.Random(seed)
    return [tuple(complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5)) for _ in range(5)) for _ in range(count)]


def _betafun(rep: VerifyReport):
    rep.measure("beta.gamma_half", "Gamma(1/2) = sqrt(pi)", abs(betafun.gamma_c(0.5) - math.sqrt(math.pi)), 1e-14)
    rep.measure("beta.gamma_5", "Gamma(5) = 24", abs(betafun.gamma_c(5) - 24), 1e-12)
    worst = max(abs(betafun.b4_quadrature(a).value - betafun.b4_gamma(a)) / (1 + abs(betafun.b4_gamma(a)))
                for a in b4_grid())
    rep.measure("beta.b4_grid", "quadrature matches the Gamma ratio on 25 pairs", worst, 1e-8)
    for alpha, want, name in (((1,) * 5, math.pi ** 2 / 6, "zeta2"), ((2, 1, 1, 1, 1), 1.0, "e1"),
                              ((1, 1, 2, 1, 1), 1.0, "e3")):
        rep.measure(f"beta.b5_{name}", f"B5{alpha} closed form", abs(betafun.b5_quadrature(alpha).value - want), 1e-8)
    worst = 0.0
    for alpha in b5_cyclic_tuples(4):
        a = betafun.b5_quadrature(alpha).value
        b = betafun.b5_quadrature(betafun.cyclic_shift(alpha, 2)).value
        worst = max(worst, abs(a - b))
    rep.measure("beta.b5_cyclic", "B5 is invariant under the index 5-cycle", worst, 1e-7)
    rep.measure("beta.product_half", "product factor at (1/2)^5 is 32",
                abs(betafun.product_factor((0.5,) * 5) - 32), 1e-12)
    ratio = contour.pochhammer_b4((0.3, 0.45)) / betafun.product_factor((0.3, 0.45))
    rep.measure("beta.poch_ratio", "contour / product factor = B4",
                abs(ratio - betafun.b4_gamma((0.3, 0.45))), 1e-7)


def _mesh(rep: VerifyReport):
    rng = np.random.default_rng(11)
    x3 = rng.normal(size=(1000, 3))
    x3 /= np.linalg.norm(x3, axis=1, keepdims=True)
    x6 = rng.normal(size=(1000, 6))
    x6 /= np.linalg.norm(x6, axis=1, keepdims=True)
    maps = (("v3", meshout.veronese3, x3), ("r21", lambda x: meshout.veronese6(x, "r21"), x6),
            ("r18", lambda x: meshout.veronese6(x, "r18"), x6))
    for name, f, x in maps:
        w = f(x)
        rep.measure(f"mesh.{name}_norm", f"{name} maps the unit sphere to the unit sphere",
                    float(np.abs(np.linalg.norm(w, axis=1) - 1).max()), 1e-12)
        rep.measure(f"mesh.{name}_even", f"{name} is antipode invariant", float(np.abs(w - f(-x)).max()), 1e-12)
    P = exactlin.p_factor()
    gam = tessellation.gamma_transforms(P)
    rep.measure("mesh.gamma_orth", "all 24 gamma transforms are orthogonal",
                max(float(np.abs(g.T @ g - np.eye(6)).max()) for g in gam), 1e-10)
    m = meshout.sample_surface("symmetric", 9, P)
    rep.measure("mesh.unit", "symmetric surface lies on S^5",
                float(np.abs(np.linalg.norm(m.vertices, axis=1) - 1).max()), 1e-12)
    rep.measure("mesh.seams", "glued edges agree at 33 samples", tessellation.max_seam_mismatch(33, P), 1e-9)


_RUNNERS: dict[str, Callable] = {
    "group": _group,
    "tessellation": _tessellation,
    "contour": _contour,
    "betafun": _betafun,
    "mesh": _mesh,
}


def run_suite(name: str) -> VerifyReport:
    if name == "all":
        rep = VerifyReport("all")
        for s in SUITES:
            rep.checks += run_suite(s).checks
        return rep
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    rep = VerifyReport(name)
    try:
        _RUNNERS[name](rep)
    except Exception as exc:  # a crash is reported as a failed check, not a traceback
        rep.add(f"{name}.error", "suite raised an exception", False, f"{type(exc).__name__}: {exc}", None)
    return rep
