"""Seesaw ascent for the largest qubit value of K.

With the maximally mixed input K is bilinear in the two sets of axes, so the
best Alice axis for fixed Bob axes is the normalised signed resultant of
Bob's axes, and vice versa. Alternating these exact best responses never
decreases K; random restarts take care of the symmetric saddle points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .rac import f_from_k, success_probability, temporal_to_rac
from .temporal import (
    TemporalStrategy,
    _check_n,
    evaluate_K,
    make_strategy,
    random_unit_vectors,
    signs_array,
)


@dataclass(frozen=True)
class OptimizerConfig:
    n: int
    restarts: int = 100
    tolerance: float = 1e-10
    max_sweeps: int = 10_000
    seed: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be >= 1, got {self.max_sweeps}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True)
class RestartOutcome:
    k: float
    sweeps: int
    perturbations: int
    trace: np.ndarray = field(repr=False)
    alice: np.ndarray = field(repr=False)
    bob: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class OptimumReport:
    best_K: float
    strategy: TemporalStrategy
    sweeps_used: int
    restart_index: int
    per_restart_K: tuple[float, ...]
    perturbations: int = 0

    def restart_csv(self) -> str:
        lines = ["restart,K"]
        lines += [f"{i},{k:.6f}" for i, k in enumerate(self.per_restart_K)]
        return "\n".join(lines) + "\n"


def run_restart(n: int, rng: np.random.Generator, tolerance: float = 1e-10,
                max_sweeps: int = 10_000) -> RestartOutcome:
    signs = signs_array(n)
    bob = random_unit_vectors(rng, n)
    alice = random_unit_vectors(rng, signs.shape[0])
    a, b, trace, sweeps, perturbed = kernels.seesaw_run(signs, alice, bob, tolerance, max_sweeps)
    return RestartOutcome(float(trace[-1]), int(sweeps), int(perturbed), trace, a, b)


def seesaw_maximize(config: OptimizerConfig) -> OptimumReport:
    n = config.n
    # one child stream per restart, so restarts are independent of each other
    seeds = np.random.SeedSequence(config.seed).spawn(config.restarts)
    outcomes = [
        run_restart(n, np.random.default_rng(s), config.tolerance, config.max_sweeps)
        for s in seeds
    ]
    ks = [o.k for o in outcomes]
    best = int(np.argmax(ks))
    win = outcomes[best]
    strategy = make_strategy(n, win.alice, win.bob)
    return OptimumReport(
        best_K=evaluate_K(strategy),
        strategy=strategy,
        sweeps_used=win.sweeps,
        restart_index=best,
        per_restart_K=tuple(ks),
        perturbations=sum(o.perturbations for o in outcomes),
    )


@dataclass(frozen=True)
class ConjectureCheck:
    n: int
    best_K: float
    success_probability: float
    predicted: float
    discrepancy: float
    holds: bool


def conjecture_check(n: int, config: OptimizerConfig | None = None,
                     tol: float = 1e-9) -> ConjectureCheck:
    """Reuse the optimal measurement axes as RAC encodings and decodings."""
    n = _check_n(n)
    if n not in (2, 3, 4):
        raise ValueError(f"conjecture check covers n in {{2, 3, 4}}, got {n}")
    report = seesaw_maximize(config or OptimizerConfig(n))
    f = success_probability(temporal_to_rac(report.strategy))
    predicted = f_from_k(n, report.best_K)
    gap = abs(f - predicted)
    return ConjectureCheck(n, report.best_K, f, predicted, gap, gap <= tol)
