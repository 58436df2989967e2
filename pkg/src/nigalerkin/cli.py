"""Command-line driver for the collocation / Galerkin comparison.

Exit codes: 0 success, 2 some run did not converge, 3 invalid configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .circuit import CircuitProblem, linear_variant
from .experiment import DEFAULT_TOLS, METHODS, ExperimentRecord, run_table
from .quadrature import QuadratureError

COLUMNS = [
    "method", "degree", "eps_tol", "quad_points", "iterations", "solver_evals",
    "rmse", "residual_norm", "final_increment_norm", "wall_time_s",
]
EXIT_OK, EXIT_NOT_CONVERGED, EXIT_CONFIG = 0, 2, 3


class ConfigError(ValueError):
    pass


def parse_degrees(text: str) -> list[int]:
    try:
        degrees = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"bad --degree {text!r}") from None
    if not degrees or any(m < 0 for m in degrees):
        raise ConfigError(f"bad --degree {text!r}")
    return degrees


def parse_tol(text: str | None, degrees: list[int]) -> dict[int, float]:
    """A single value applies to every degree; otherwise ``m:tol,m:tol``."""
    if text is None:
        missing = [m for m in degrees if m not in DEFAULT_TOLS]
        if missing:
            raise ConfigError(f"no default tolerance for degrees {missing}; pass --tol")
        return {m: DEFAULT_TOLS[m] for m in degrees}
    try:
        if ":" not in text:
            tols = {m: float(text) for m in degrees}
        else:
            tols = {}
            for item in text.split(","):
                m, t = item.split(":")
                tols[int(m)] = float(t)
    except ValueError:
        raise ConfigError(f"bad --tol {text!r}") from None
    if any(not t > 0 for t in tols.values()):
        raise ConfigError("tolerances must be positive")
    missing = [m for m in degrees if m not in tols]
    if missing:
        raise ConfigError(f"--tol gives no value for degrees {missing}")
    return tols


def _fmt(value):
    return repr(value) if isinstance(value, float) else value


def to_csv(records: list[ExperimentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in records:
        row = r.row()
        writer.writerow([_fmt(row[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(records: list[ExperimentRecord]) -> str:
    return json.dumps([{c: r.row()[c] for c in COLUMNS} for r in records], indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nigalerkin", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--method", choices=["galerkin", "collocation", "both"], default="both")
    ap.add_argument("--degree", default="2,3,4,5", help="total degree m or comma list")
    ap.add_argument("--tol", default=None, help="eps_tol, or schedule like 2:1e-6,3:1e-7")
    ap.add_argument("--quad-points", default="auto", help="points per dimension, or 'auto' (m+1)")
    ap.add_argument("--exact-quadrature", action="store_true", help="use 2m+1 points per dimension")
    ap.add_argument("--mc-samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--max-iter", type=int, default=200)
    ap.add_argument("--problem", choices=["circuit", "circuit-linear"], default="circuit")
    ap.add_argument("--conductance", type=float, default=100.0,
                    help="scale of the circuit stiffness matrix K = conductance * L")
    ap.add_argument("--workers", type=int, default=1, help="threads for per-point solver calls")
    ap.add_argument("--output", default=None, help="write here instead of stdout")
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        degrees = parse_degrees(args.degree)
        tols = parse_tol(args.tol, degrees)
        if args.exact_quadrature:
            quad = lambda m: 2 * m + 1  # noqa: E731
        elif args.quad_points == "auto":
            quad = None
        else:
            try:
                quad = int(args.quad_points)
            except ValueError:
                raise ConfigError(f"bad --quad-points {args.quad_points!r}") from None
            if quad < 1:
                raise ConfigError("--quad-points must be >= 1")
        if args.mc_samples < 1 or args.max_iter < 1 or not 0 <= args.seed < 2**64:
            raise ConfigError("--mc-samples and --max-iter must be >= 1, --seed a u64")
        if not args.conductance > 0:
            raise ConfigError("--conductance must be positive")
        problem = CircuitProblem(conductance=args.conductance)
        if args.problem == "circuit-linear":
            problem = linear_variant(problem)
        methods = METHODS if args.method == "both" else (args.method,)
        records = run_table(problem, degrees, tols, methods, seed=args.seed, n_samples=args.mc_samples,
                            quad_points=quad, max_iter=args.max_iter, workers=args.workers)
    except (ConfigError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        # under-resolved rules and similar configuration problems surface as ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED

    text = to_csv(records) if args.format == "csv" else to_json(records)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not all(r.converged for r in records):
        print("warning: at least one run did not converge", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
