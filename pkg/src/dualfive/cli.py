"""Command-line interface: ``dualfive eval|group|surface|contour|verify``."""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import betafun, contour, exactlin, meshout, verify
from .quadrature import QuadratureFailure, QuadratureSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_COMPLEX_RE = re.compile(r"^[0-9eE.+\-i]+$")


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``re+imi``, ``imi`` or ``re-imi`` (no spaces)."""
    if not text or not _COMPLEX_RE.match(text):
        raise UsageError(f"bad complex number {text!r}; use re+imi, e.g. 0.5+0.25i")
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"bad complex number {text!r}; use re+imi, e.g. 0.5+0.25i") from None


def parse_alpha(text: str, k: int) -> tuple:
    parts = text.split(",")
    if len(parts) != k:
        raise UsageError(f"--alpha needs {k} comma-separated entries, got {len(parts)}")
    return tuple(parse_complex(p) for p in parts)


def parse_axes(text: str) -> tuple:
    try:
        return tuple(int(a) for a in text.split(","))
    except ValueError:
        raise meshout.BadAxes(f"bad axes {text!r}; use three 1-based indices like 1,2,3") from None


def _emit(args, record: dict, text: str):
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _fmt_c(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.15g}"
    return f"{z.real:.15g}{z.imag:+.15g}i"


def cmd_eval(args) -> int:
    if args.function == "b4":
        alpha = parse_alpha(args.alpha, 2)
        est = None
        if args.method == "gamma":
            value = betafun.b4_gamma(alpha)
        elif args.method == "quad":
            res = betafun.b4_quadrature(alpha, QuadratureSpec(abs_tol=args.tol, rel_tol=args.tol))
            value, est = res.value, res.est_error
        elif args.method == "pochhammer":
            if not 0 < args.r < 0.5:
                raise UsageError("--r must satisfy 0 < r < 1/2")
            path = contour.pochhammer_path(alpha, r=args.r)
            value = path.total
            # deformation check doubles as an error estimate
            est = abs(value - contour.pochhammer_b4(alpha, r=min(0.49, 10 * args.r)))
        else:
            raise UsageError(f"method {args.method!r} is not available for b4")
    else:
        alpha = parse_alpha(args.alpha, 5)
        if args.method != "quad":
            raise UsageError("b5 supports only --method quad")
        res = betafun.b5_quadrature(alpha, QuadratureSpec(level=7, abs_tol=args.tol, rel_tol=args.tol))
        value, est = res.value, res.est_error
    record = {"value_re": value.real, "value_im": value.imag, "method": args.method, "est_error": est}
    text = f"{args.function}({','.join(_fmt_c(a) for a in alpha)}) = {_fmt_c(value)}  [method={args.method}"
    text += f", est_error={est:.2e}]" if est is not None else "]"
    _emit(args, record, text)
    return EXIT_OK


def _int_rows(m: exactlin.MatRat) -> list:
    return [[int(a) if a.denominator == 1 else str(a) for a in r] for r in m.rows]


def cmd_group(args) -> int:
    G, Gx = exactlin.symmetry_group(), exactlin.extended_group()
    record = {"order": len(G), "order_extended": len(Gx)}
    lines = [f"order(G)={len(G)} order(G~)={len(Gx)}"]
    if args.dump == "elements":
        record["elements"] = [_int_rows(g) for g in G]
        for n, g in enumerate(G, start=1):
            lines += [f"# element {n}", str(g)]
    elif args.dump == "q":
        Q = exactlin.q_form()
        if args.scaled:
            Q = Q.scale(1 / exactlin.Q_SCALE)
        record["q"] = _int_rows(Q)
        record["q_scale"] = "70 Q" if args.scaled else "Q"
        lines += ["Q =" if not args.scaled else "70 Q =", str(Q)]
    elif args.dump == "p":
        P = exactlin.p_factor()
        res = float(np.abs(P.T @ P - exactlin.q_form().to_numpy()).max())
        record["p"] = P.tolist()
        record["p_residual"] = res
        with np.printoptions(precision=12, suppress=True, linewidth=120):
            lines += ["P =", str(P), f"max |P^T P - Q| = {res:.3e}"]
    _emit(args, record, "\n".join(lines))
    return EXIT_OK


def cmd_surface(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    axes = parse_axes(args.project)
    mesh = meshout.sample_surface(args.target, args.n)
    mesh3 = meshout.project(mesh, axes)
    meshout.write_mesh(mesh3, args.format, args.out)
    record = {"target": args.target, "vertices": len(mesh3.vertices), "faces": len(mesh3.faces),
              "polylines": len(mesh3.polylines), "groups": len(set(mesh3.tags)),
              "source_dim": mesh.dim, "axes": list(axes), "path": str(args.out)}
    text = (f"wrote {args.out}: {record['vertices']} vertices, {record['faces']} faces, "
            f"{record['groups']} groups, {record['polylines']} polylines "
            f"(R^{mesh.dim} projected to axes {','.join(map(str, axes))})")
    _emit(args, record, text)
    return EXIT_OK


def cmd_contour(args) -> int:
    surface, _ = contour.build_phase_surface(args.k)
    if args.k == 2:
        rep = contour.loop_report(surface)
        record = {"k": 2, "V": rep["V"], "E": rep["E"], "chi": rep["chi"], "cycles": rep["cycles"],
                  "connected": rep["connected"], "sheets": rep["sheet_order"]}
        text = (f"k=2 loop: V={rep['V']} E={rep['E']} chi={rep['chi']} cycles={rep['cycles']} "
                f"connected={rep['connected']} sheets={' -> '.join(rep['sheet_order'])}")
    else:
        v, e, f = surface.counts()
        chi, ori, g = surface.euler_and_genus()
        holes = len(contour.corner_holes(surface))
        record = {"k": args.k, "V": v, "E": e, "F": f, "chi": chi, "orientable": ori,
                  "genus" if ori else "crosscaps": g, "connected": surface.is_connected(),
                  "corner_holes": holes}
        kind = f"genus={g}" if ori else f"crosscaps={g}"
        text = (f"V={v} E={e} F={f} χ={chi} {'orientable' if ori else 'non-orientable'} {kind} "
                f"connected={surface.is_connected()} corner_holes={holes}")
    _emit(args, record, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify.run_suite(args.suite)
    if args.json:
        print(json.dumps(rep.to_dict(), sort_keys=True, default=str))
    else:
        for c in rep.checks:
            print(f"[{c.status.upper():4s}] {c.id:22s} {c.desc}  value={c.value} tol={c.tol}")
        print(f"suite {rep.suite}: {'PASS' if rep.passed else 'FAIL'} "
              f"({sum(c.status == 'pass' for c in rep.checks)}/{len(rep.checks)})")
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualfive", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate B4 or B5")
    p.add_argument("function", choices=("b4", "b5"))
    p.add_argument("--alpha", required=True, help="comma-separated exponents, complex as re+imi")
    p.add_argument("--method", default=None, choices=("gamma", "quad", "pochhammer"))
    p.add_argument("--r", type=float, default=1e-3, help="Pochhammer loop radius")
    p.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("group", help="symmetry group orders and invariant form")
    p.add_argument("--dump", choices=("elements", "q", "p"))
    p.add_argument("--scaled", action="store_true", help="with --dump q, print 70 Q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("surface", help="sample a surface and write a mesh")
    p.add_argument("--target", required=True, choices=meshout.TARGETS)
    p.add_argument("--n", type=int, default=17)
    p.add_argument("--project", default="1,2,3", help="three 1-based axes")
    p.add_argument("--format", default="obj", choices=("obj", "ply"))
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("contour", help="Pochhammer phase surface report")
    p.add_argument("--k", type=int, default=5, choices=(2, 3, 4, 5))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument("--suite", default="all", choices=("all",) + verify.SUITES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


_DOMAIN_ERRORS = (UsageError, betafun.DomainError, betafun.PoleDetected, betafun.PoleAtNonPositiveInteger,
                  betafun.BranchLocus, meshout.BadAxes, meshout.NotUnit)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval" and args.method is None:
        args.method = "gamma" if args.function == "b4" else "quad"
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except meshout.IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
