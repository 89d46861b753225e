"""Command-line interface: spectra, eigencurve samples, chart grids, perturbation rows, verification.

Output is CSV (first line ``# schema=<version>``, then a header) or JSON with
the same rows.  Reals are written with 17 significant digits so every double
round-trips exactly.  Exit codes: 0 ok, 1 verification failure, 2 usage
error, 3 numerical failure; errors go to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import verify
from .eigencurves import EigencurveId, evaluate, prufer_value
from .geometry import Parity, chart, make_ellipsoid, metric
from .numerics import SolverError
from .spectrum import enumerate_spectrum
from .sphere_perturbation import (
    closed_form_l2,
    lambda_sphere,
    perturbation_derivative_fd,
    perturbation_derivative_quadrature,
)

SCHEMA_VERSION = "1"
BACKEND_AGREEMENT = 1e-6

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _real(x: float | None) -> str:
    if x is None:
        return ""
    text = format(float(x), ".17g")
    # keep reals recognizable as reals ("3.0", not "3")
    return text if any(ch in text for ch in ".eni") else text + ".0"


def _json_value(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        if not math.isfinite(v):
            return json.dumps(str(v))
        return _real(v)
    return json.dumps(str(v))


def render(command: str, parameters: dict, columns: Sequence[str], rows: list[tuple], fmt: str) -> str:
    if fmt == "json":
        params = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in parameters.items())
        body = ",\n".join(
            "    {" + ", ".join(f"{json.dumps(c)}: {_json_value(v)}" for c, v in zip(columns, row)) + "}"
            for row in rows
        )
        rows_text = "[\n" + body + "\n  ]" if rows else "[]"
        return (
            "{\n"
            f'  "schema_version": {json.dumps(SCHEMA_VERSION)},\n'
            f'  "command": {json.dumps(command)},\n'
            f'  "parameters": {{{params}}},\n'
            f'  "rows": {rows_text}\n'
            "}\n"
        )
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMA_VERSION}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_real(v) if isinstance(v, (float, np.floating)) or v is None else v for v in row])
    return buf.getvalue()


def _ellipsoid(args):
    return make_ellipsoid(args.a, args.b, args.c)


def _parities(text: str) -> list[Parity]:
    return list(Parity.all()) if text == "all" else [Parity.parse(text)]


def cmd_spectrum(args) -> tuple[dict, list[str], list[tuple]]:
    e = _ellipsoid(args)
    params = {"a": e.a, "b": e.b, "c": e.c, "lambda_max": args.lambda_max, "parity": args.parity,
              "N": args.N, "backend": args.backend}
    columns = ["m", "n", "parity", "lambda", "h", "ell", "residual_galerkin", "residual_prufer"]
    if args.lambda_max <= 0:
        return params, columns, []
    entries = enumerate_spectrum(e, args.lambda_max, args.N, args.backend, _parities(args.parity))
    rows = [
        (x.m, x.n, str(x.parity), x.lam, x.h, x.sphere_label, x.residual_galerkin, x.residual_prufer)
        for x in entries
    ]
    return params, columns, rows


def cmd_eigencurve(args):
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    if args.lambda_max < args.lambda_min:
        raise UsageError("--lambda-max must be >= --lambda-min")
    e = _ellipsoid(args)
    curve = EigencurveId(args.family, args.index, Parity.parse(args.parity))
    params = {"a": e.a, "b": e.b, "c": e.c, "parity": args.parity, "family": args.family,
              "index": args.index, "lambda_min": args.lambda_min, "lambda_max": args.lambda_max,
              "samples": args.samples, "N": args.N, "backend": args.backend}
    rows = []
    for lam in np.linspace(args.lambda_min, args.lambda_max, args.samples):
        lam = float(lam)
        if args.backend in ("galerkin", "both"):
            g = evaluate(e, curve, lam, "galerkin", args.N)
            rows.append((lam, g.value, "galerkin", g.residual))
        if args.backend == "prufer":
            p = evaluate(e, curve, lam, "prufer", args.N)
            rows.append((lam, p.value, "prufer", p.residual))
        elif args.backend == "both":
            value, residual = prufer_value(e, curve, lam, guess=g.value)
            if abs(value - g.value) > BACKEND_AGREEMENT:
                raise SolverError(f"backends disagree by {abs(value - g.value):.3e} at lam={lam!r}")
            rows.append((lam, value, "prufer", residual))
    return params, ["lambda", "value", "backend", "residual"], rows


def cmd_perturb(args):
    if not 0.0 < args.k2 < 1.0:
        raise UsageError("--k2 must lie in (0, 1)")
    if not 0.0 < args.eps_step <= 1e-2:
        raise UsageError("--eps-step must lie in (0, 1e-2]")
    if args.m < 0 or args.n < 0:
        raise UsageError("--m and --n must be >= 0")
    parity = Parity.parse(args.parity)
    k = math.sqrt(args.k2)
    quad = perturbation_derivative_quadrature(k, args.m, args.n, parity)
    fd = perturbation_derivative_fd(k, args.m, args.n, parity, args.eps_step, args.N)
    closed = None
    if parity.weight == 0 and (args.m, args.n) in ((0, 1), (1, 0)):
        closed = closed_form_l2(k, args.m, args.n)
    row = (
        args.k2, args.m, args.n, str(parity), float(lambda_sphere(args.m, args.n, parity)),
        quad, fd, closed, abs(quad - fd),
        None if closed is None else abs(quad - closed),
        None if closed is None else abs(fd - closed),
    )
    columns = ["k2", "m", "n", "parity", "lambda_sphere", "derivative_quadrature",
               "derivative_finite_difference", "closed_form", "diff_quad_fd",
               "diff_quad_closed", "diff_fd_closed"]
    params = {"k2": args.k2, "m": args.m, "n": args.n, "parity": args.parity,
              "eps_step": args.eps_step, "N": args.N}
    return params, columns, [row]


def cmd_grid(args):
    if args.ns < 2 or args.nt < 2:
        raise UsageError("--ns and --nt must be >= 2")
    e = _ellipsoid(args)
    rows = []
    for s in np.linspace(0.0, e.K_prime, args.ns):
        for t in np.linspace(0.0, e.K, args.nt):
            p = chart(e, float(s), float(t))
            g1, g2 = metric(e, float(s), float(t))
            rows.append((p.s, p.t, p.x, p.y, p.z, float(g1), float(g2)))
    params = {"a": e.a, "b": e.b, "c": e.c, "ns": args.ns, "nt": args.nt}
    return params, ["s", "t", "x", "y", "z", "g1", "g2"], rows


def cmd_verify(args):
    checks = verify.run(args.level)
    rows = [(c.criterion, c.name, c.passed, c.measured, c.tolerance, c.seconds, c.detail) for c in checks]
    for c in checks:
        print(verify.format_line(c), file=sys.stderr)
    columns = ["criterion", "name", "passed", "measured", "tolerance", "seconds", "detail"]
    return {"level": args.level}, columns, rows


def _add_axes(p):
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)


def _add_common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellipsoid-spectra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="enumerate eigenvalues up to --lambda-max")
    _add_axes(p)
    p.add_argument("--lambda-max", type=float, default=10.0)
    p.add_argument("--parity", default="all", help="'all' or three bits such as 010")
    p.add_argument("--N", type=int, default=32)
    p.add_argument("--backend", choices=("galerkin", "prufer", "both"), default="both")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("eigencurve", help="sample H_m or h_n on a uniform lambda grid")
    _add_axes(p)
    p.add_argument("--parity", default="000")
    p.add_argument("--family", choices=("H", "h"), required=True)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--lambda-min", type=float, default=0.0)
    p.add_argument("--lambda-max", type=float, default=6.0)
    p.add_argument("--samples", type=int, default=61)
    p.add_argument("--N", type=int, default=32)
    p.add_argument("--backend", choices=("galerkin", "prufer", "both"), default="both")
    _add_common(p)
    p.set_defaults(func=cmd_eigencurve)

    p = sub.add_parser("perturb", help="first-order eigenvalue change off the unit sphere")
    p.add_argument("--k2", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parity", default="000")
    p.add_argument("--eps-step", type=float, default=1e-3)
    p.add_argument("--N", type=int, default=32)
    _add_common(p)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("grid", help="chart points and metric on an (s, t) grid")
    _add_axes(p)
    p.add_argument("--ns", type=int, default=9)
    p.add_argument("--nt", type=int, default=9)
    _add_common(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("level", nargs="?", choices=("quick", "full"), default="quick")
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": {"kind": kind, "message": message, "exit_code": code}}) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "N", 32) < 4:
            raise UsageError("--N must be >= 4")
        params, columns, rows = args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except ValueError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except SolverError as exc:
        return _fail("numerical", str(exc), EXIT_NUMERIC)
    sys.stdout.write(render(args.command, params, columns, rows, args.format))
    if args.command == "verify" and not all(r[2] for r in rows):
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
