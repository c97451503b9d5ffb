"""Command-line front end.

stdout carries the machine-readable payload only (JSON, or CSV for
``geodesic``); human diagnostics go to stderr. Exit status 1 means invalid
input, 2 means a numerical tolerance could not be met.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from .config import use_tolerances
from .errors import ToleranceError, UlogError, ValidationError
from .geodesy import diameter, distance, geodesic_point, minimizing_geodesics, Geodesic
from .groups import parse_group_spec, require_member
from .io import matrix_to_json, read_matrix
from .linalg import dagger, frob_norm, herm_eig, mat_exp_skew
from .plog import component_of, plog_in_group, plog_structure
from .svd import svd_decompose
from .verify import SUITES, run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are validation failures
        raise ValidationError(message)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ULOG_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise ValidationError(f"ULOG_SEED must be an integer, got {env!r}") from exc


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ValidationError(f"{args.verb} requires {', '.join(missing)}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", help="unitary:<n> | special-orthogonal:<n> | compact-symplectic:<n> | "
                                        "quaternion-unitary:<n> | centralizer:<file> | twisted:<file>")
    common.add_argument("--input", help="matrix JSON file")
    common.add_argument("--p0", help="start point (matrix JSON file)")
    common.add_argument("--p1", help="end point (matrix JSON file)")
    common.add_argument("--seed", type=int, default=None, help="PRNG seed (falls back to $ULOG_SEED, then 0)")
    common.add_argument("--samples", type=int, default=20, help="number of trials or samples")
    common.add_argument("--out", help="write the payload here instead of stdout")
    common.add_argument("--tol-unitary", type=float, default=None, help="unitarity tolerance (default 1e-8, times sqrt(n))")
    common.add_argument("--tol-angle", type=float, default=None, help="eigen-angle clustering tolerance (default 1e-7)")

    p = _Parser(prog="ulog", description="Principal logarithms, geodesics and diameters in SVD-closed unitary groups.")
    sub = p.add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    sub.required = True
    sub.add_parser("decompose", parents=[common], help="SVD-system of --input")
    sub.add_parser("plog", parents=[common], help="canonical principal logarithm of --input in --group")
    sub.add_parser("structure", parents=[common], help="component census of the logarithm set of --input")
    sub.add_parser("distance", parents=[common], help="distance between --p0 and --p1")
    sub.add_parser("diameter", parents=[common], help="diameter of --group")
    g = sub.add_parser("geodesic", parents=[common], help="CSV points of a minimizing geodesic from --p0 to --p1")
    g.add_argument("--steps", type=int, default=11, help="number of points, t evenly spaced in [0, 1]")
    g.add_argument("--random", action="store_true", help="sample a minimizing geodesic (uses --seed) instead of the canonical one")
    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    return p


def _json(obj) -> str:
    return json.dumps(obj, allow_nan=False) + "\n"


def geodesic_csv(g: Geodesic, steps: int) -> str:
    if steps < 2:
        raise ValidationError("--steps must be at least 2")
    n = g.base.shape[0]
    header = ["t"]
    for i in range(n):
        for j in range(n):
            header += [f"entry_re_{i}_{j}", f"entry_im_{i}_{j}"]
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for t in np.linspace(0.0, 1.0, steps):
        P = geodesic_point(g, float(t))
        row = [t] + [x for z in P.ravel() for x in (z.real, z.imag)]
        buf.write(",".join(f"{float(x):.17g}" for x in row) + "\n")
    return buf.getvalue()


def _dispatch(args) -> tuple[str, int]:
    verb = args.verb
    if verb == "decompose":
        _need(args, "input")
        return _json(svd_decompose(read_matrix(args.input)).to_json()), 0
    if verb == "verify":
        _need(args, "group")
        rep = run_suite(args.suite, parse_group_spec(args.group), args.samples, _seed(args))
        print(rep.table(), file=sys.stderr)
        return _json(rep.to_json()), 0 if rep.passed else 2
    _need(args, "group")
    G = parse_group_spec(args.group)
    if verb == "diameter":
        return _json(diameter(G)), 0
    if verb in ("plog", "structure"):
        _need(args, "input")
        M = read_matrix(args.input)
        if verb == "structure":
            return _json(plog_structure(G, M).to_json()), 0
        el = plog_in_group(G, M)
        L = el.L
        diag = {
            "norm": el.norm,
            "exp_residual": frob_norm(mat_exp_skew(L) - M),
            "max_abs_eigenvalue": float(np.max(np.abs(herm_eig(1j * L).values))),
            "component": list(component_of(G, M, L)),
        }
        print(f"plog: norm {diag['norm']:.17g}, exp residual {diag['exp_residual']:.3e}", file=sys.stderr)
        return _json({"L": matrix_to_json(L), "diagnostics": diag}), 0
    _need(args, "p0", "p1")
    P0, P1 = read_matrix(args.p0), read_matrix(args.p1)
    if verb == "distance":
        return _json(distance(G, P0, P1)), 0
    if verb == "geodesic":
        require_member(G, P0, "P0")
        require_member(G, P1, "P1")
        if args.random:
            _, sampler = minimizing_geodesics(G, P0, P1)
            (g,) = sampler(1, _seed(args))
        else:
            g = Geodesic(P0, plog_in_group(G, dagger(P0) @ P1).L)
        return geodesic_csv(g, args.steps), 0
    raise ValidationError(f"unknown verb {verb!r}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        overrides = {}
        if args.tol_unitary is not None:
            overrides["unitary"] = args.tol_unitary
        if args.tol_angle is not None:
            overrides["angle"] = args.tol_angle
        with use_tolerances(**overrides):
            payload, status = _dispatch(args)
    except (ValidationError, ToleranceError) as exc:
        status = 1 if isinstance(exc, ValidationError) else 2
        kind = "validation" if status == 1 else "tolerance"
        print(f"ulog: {kind} error: {exc}", file=sys.stderr)
        sys.stdout.write(_json({"error": str(exc), "kind": kind}))
        return status
    except UlogError as exc:  # pragma: no cover - all concrete errors are handled above
        print(f"ulog: error: {exc}", file=sys.stderr)
        sys.stdout.write(_json({"error": str(exc), "kind": "error"}))
        return 1
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
