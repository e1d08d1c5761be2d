"""Strategy files and sweep CSVs.

A strategy file is a UTF-8 JSON object with the keys ``n``, ``input_state``,
``alice`` and ``bob``; every number is written with 17 significant digits so
a write/read cycle reproduces the floats exactly.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .bloch import InvalidAxisError, InvalidStateError
from .certify import CertificationResult, FitSummary
from .temporal import InvalidScenarioError, TemporalStrategy, make_strategy

SWEEP_HEADER = ["k", "p_star", "min_entropy", "cell_i", "cell_j", "cell_a", "cell_b"]
FIT_HEADER = ["n", "alpha_fit", "beta_fit", "alpha_paper", "beta_paper", "max_residual"]


class StrategyFileError(ValueError):
    """Malformed or invalid strategy file."""


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _vec(v) -> str:
    return "[" + ", ".join(_num(c) for c in v) + "]"


def dumps_strategy(strategy: TemporalStrategy) -> str:
    alice = ",\n    ".join(_vec(v) for v in strategy.alice_axes)
    bob = ",\n    ".join(_vec(v) for v in strategy.bob_axes)
    return (
        "{\n"
        f'  "n": {strategy.n},\n'
        f'  "input_state": {_vec(strategy.input_state)},\n'
        f'  "alice": [\n    {alice}\n  ],\n'
        f'  "bob": [\n    {bob}\n  ]\n'
        "}\n"
    )


def loads_strategy(text: str, source: str = "<string>") -> TemporalStrategy:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StrategyFileError(f"{source}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise StrategyFileError(f"{source}: top level must be an object")
    missing = [k for k in ("n", "alice", "bob") if k not in data]
    if missing:
        raise StrategyFileError(f"{source}: missing field(s) {', '.join(missing)}")
    unknown = sorted(set(data) - {"n", "input_state", "alice", "bob"})
    if unknown:
        raise StrategyFileError(f"{source}: unknown field(s) {', '.join(unknown)}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise StrategyFileError(f"{source}: field n must be an integer, got {n!r}")
    try:
        alice = np.asarray(data["alice"], dtype=float)
        bob = np.asarray(data["bob"], dtype=float)
        state = np.asarray(data.get("input_state", [0.0, 0.0, 0.0]), dtype=float)
    except (TypeError, ValueError) as exc:
        raise StrategyFileError(f"{source}: non-numeric vector entries ({exc})") from exc
    for name, arr in (("alice", alice), ("bob", bob)):
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise StrategyFileError(f"{source}: field {name} must be a list of 3-vectors")
    if state.shape != (3,):
        raise StrategyFileError(f"{source}: field input_state must be a 3-vector")
    try:
        return make_strategy(n, alice, bob, state)
    except (InvalidAxisError, InvalidStateError, InvalidScenarioError) as exc:
        raise StrategyFileError(f"{source}: {exc}") from exc


def write_strategy(strategy: TemporalStrategy, path) -> None:
    Path(path).write_text(dumps_strategy(strategy), encoding="utf-8")


def read_strategy(path) -> TemporalStrategy:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StrategyFileError(f"{path}: cannot read ({exc.strerror})") from exc
    return loads_strategy(text, str(path))


def sweep_csv(results: list[CertificationResult]) -> str:
    """Sweep rows; cell_i and cell_j are 1-based setting indices, cell_a/cell_b outcome bits."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for r in results:
        i, j, a, b = r.cell
        w.writerow([f"{r.k_value:.6f}", f"{r.p_star:.6f}", f"{r.min_entropy:.6f}", i + 1, j + 1, a, b])
    return buf.getvalue()


def fit_csv(fit: FitSummary) -> str:
    def opt(v):
        return "" if v is None else f"{v:.6f}"

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIT_HEADER)
    w.writerow([fit.n, f"{fit.alpha_fit:.6f}", f"{fit.beta_fit:.6f}", opt(fit.alpha_quoted),
                opt(fit.beta_quoted), f"{fit.max_residual:.6e}"])
    return buf.getvalue()


def read_sweep_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """(k, min_entropy) columns of a sweep CSV."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"k", "min_entropy"} <= set(reader.fieldnames):
                raise StrategyFileError(f"{path}: expected columns k and min_entropy")
            rows = list(reader)
    except OSError as exc:
        raise StrategyFileError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        k = np.array([float(r["k"]) for r in rows])
        h = np.array([float(r["min_entropy"]) for r in rows])
    except (TypeError, ValueError) as exc:
        raise StrategyFileError(f"{path}: non-numeric value ({exc})") from exc
    return k, h
