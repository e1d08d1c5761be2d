"""Command-line front end.

Exit status: 0 on success, 1 on invalid input, 2 when a solver fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .bloch import InvalidAxisError, InvalidStateError
from .certify import CertificationRangeError, sweep_and_fit
from .classical import (
    MAX_N_F,
    ResourceLimitError,
    audit_bounds,
    majority_encoding_value,
    max_F_deterministic,
    max_K_deterministic,
)
from .lp import LPError
from .optimizer import OptimizerConfig, seesaw_maximize
from .rac import f_from_k, success_probability, temporal_to_rac
from .strategy_io import (
    StrategyFileError,
    fit_csv,
    read_strategy,
    read_sweep_csv,
    sweep_csv,
    write_strategy,
)
from .svg import CurveSpec, write as write_svg
from .temporal import InvalidScenarioError, correlation_table, evaluate_K

SEED_ENV = "TEMPORAL_RAC_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if not 0 <= seed < 2**64:
        raise UsageError(f"{SEED_ENV}={raw!r} is outside 0..2^64-1")
    return seed


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_evaluate(args) -> int:
    strategy = read_strategy(args.file)
    table = correlation_table(strategy).values
    print("C_ij (rows i = Alice setting, columns j = Bob setting)")
    for i, row in enumerate(table, start=1):
        print(f"  {i:>3}: " + " ".join(f"{v: .6f}" for v in row))
    k = evaluate_K(strategy)
    print(f"K {k:.6f}")
    print(f"F {success_probability(temporal_to_rac(strategy)):.6f}")
    return 0


def cmd_optimize(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    config = OptimizerConfig(args.n, restarts=args.restarts, seed=seed)
    report = seesaw_maximize(config)
    print(f"n {args.n}")
    print(f"seed {seed}")
    print(f"best_K {report.best_K:.6f}")
    print(f"F {f_from_k(args.n, report.best_K):.6f}")
    print(f"restart {report.restart_index}")
    print(f"sweeps {report.sweeps_used}")
    if report.perturbations:
        print(f"perturbations {report.perturbations}")
    if args.out:
        write_strategy(report.strategy, args.out)
    if args.restart_csv:
        Path(args.restart_csv).write_text(report.restart_csv(), encoding="utf-8")
    return 0


def cmd_classical_bound(args) -> int:
    k, assignment = max_K_deterministic(args.n)
    print(f"K_max {k:.6f}")
    print("alice " + " ".join(f"{v:+d}" for v in assignment.alice_values))
    print("bob " + " ".join(f"{v:+d}" for v in assignment.bob_values))
    if args.n <= MAX_N_F:
        f, _ = max_F_deterministic(args.n)
        print(f"F_max {f:.6f}")
    else:
        print(f"F_lower_bound {majority_encoding_value(args.n):.6f} (majority encoding; "
              f"exhaustive search limited to n <= {MAX_N_F})")
    return 0


def cmd_certify(args) -> int:
    if args.steps < 2:
        raise UsageError(f"--steps must be >= 2, got {args.steps}")
    if not args.k_max > args.k_min:
        raise UsageError(f"--k-max ({args.k_max}) must exceed --k-min ({args.k_min})")
    grid = np.linspace(args.k_min, args.k_max, args.steps)
    results, fit = sweep_and_fit(args.n, grid, arrow=not args.no_arrow_constraints, geq=args.geq_k)
    _emit(sweep_csv(results), args.out)
    if args.fit_out:
        Path(args.fit_out).write_text(fit_csv(fit), encoding="utf-8")
    return 0


def cmd_audit(args) -> int:
    report = audit_bounds(args.n)
    _emit(report.to_csv() if args.csv else report.to_text() + "\n", args.out)
    return 0


def cmd_plot(args) -> int:
    k, h = read_sweep_csv(args.csv)
    spec = CurveSpec(k, h, x_label="K", y_label="H_min (bits)", title=args.title or "")
    write_svg(spec, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="temporal-rac", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    e = sub.add_parser("evaluate", help="correlators, K and F of a strategy file")
    e.add_argument("file")
    e.set_defaults(func=cmd_evaluate)

    o = sub.add_parser("optimize", help="seesaw maximisation of K")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--restarts", type=int, default=100)
    o.add_argument("--seed", type=int, default=None)
    o.add_argument("--out", help="write the best strategy file here")
    o.add_argument("--restart-csv", help="write per-restart K values here")
    o.set_defaults(func=cmd_optimize)

    c = sub.add_parser("classical-bound", help="exhaustive deterministic bounds")
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_classical_bound)

    r = sub.add_parser("certify", help="LP sweep of the guessing probability")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k-min", type=float, required=True)
    r.add_argument("--k-max", type=float, required=True)
    r.add_argument("--steps", type=int, required=True)
    r.add_argument("--no-arrow-constraints", action="store_true")
    r.add_argument("--geq-k", action="store_true")
    r.add_argument("--out", help="write the sweep CSV here instead of stdout")
    r.add_argument("--fit-out", help="write the fit summary CSV here")
    r.set_defaults(func=cmd_certify)

    a = sub.add_parser("audit", help="compare quoted classical bounds with exhaustive search")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--csv", action="store_true")
    a.add_argument("--out")
    a.set_defaults(func=cmd_audit)

    g = sub.add_parser("plot", help="render a sweep CSV as SVG")
    g.add_argument("csv")
    g.add_argument("--out", required=True)
    g.add_argument("--title")
    g.set_defaults(func=cmd_plot)
    return p


VALIDATION_ERRORS = (
    UsageError,
    StrategyFileError,
    InvalidAxisError,
    InvalidStateError,
    InvalidScenarioError,
    CertificationRangeError,
    ResourceLimitError,
    ValueError,
)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except LPError as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return 2
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
