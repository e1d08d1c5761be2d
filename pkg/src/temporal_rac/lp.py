"""Dense two-phase simplex with Bland's pivot rule.

Problems are in standard form: maximise c.x subject to A x = b, x >= 0.
Phase one runs once per constraint set; any number of objectives can then be
maximised from the cached feasible basis, which is how the certifier solves
one LP per table cell without repeating the feasibility search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

FEAS_TOL = 1e-9
MAX_ITER = 100_000


class LPError(RuntimeError):
    """Solver failure. ``status`` is one of infeasible, unbounded, iteration_limit, numerical."""

    def __init__(self, status: str, message: str, diagnostics: dict | None = None):
        super().__init__(f"{status}: {message}")
        self.status = status
        self.diagnostics = diagnostics or {}


class InfeasibleError(LPError):
    def __init__(self, message, diagnostics=None):
        super().__init__("infeasible", message, diagnostics)


@dataclass(frozen=True)
class LPSolution:
    x: np.ndarray
    objective: float
    duals: np.ndarray
    dual_objective: float
    duality_gap: float
    dual_infeasibility: float
    primal_residual: float
    iterations: int


class StandardFormLP:
    def __init__(self, A, b, tol: float = FEAS_TOL, max_iter: int = MAX_ITER):
        A = np.array(A, dtype=float)
        b = np.array(b, dtype=float)
        if A.ndim != 2 or b.shape != (A.shape[0],):
            raise ValueError(f"shape mismatch: A {A.shape}, b {b.shape}")
        self.A = A
        self.b = b
        self.tol = tol
        self.max_iter = max_iter
        self.phase_one_iterations = 0
        self._tableau = None
        self._basis = None
        self._rows = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    def _phase_one(self):
        if self._tableau is not None:
            return
        m, nvar = self.A.shape
        flip = np.where(self.b < 0, -1.0, 1.0)
        A = self.A * flip[:, None]
        b = self.b * flip
        tab = np.zeros((m + 1, nvar + m + 1))
        tab[:m, :nvar] = A
        tab[:m, nvar:nvar + m] = np.eye(m)
        tab[:m, -1] = b
        # minimise the artificial sum, i.e. maximise its negative
        tab[m, :nvar] = -A.sum(axis=0)
        tab[m, -1] = -b.sum()
        basis = np.arange(nvar, nvar + m, dtype=np.int64)
        active = np.ones(nvar + m, dtype=np.bool_)

        status, iters = kernels.bland_iterate(tab, basis, active, self.tol, self.max_iter)
        self.phase_one_iterations = iters
        if status == 2:
            raise LPError("iteration_limit", f"phase one stopped after {iters} pivots")
        infeas = -tab[m, -1]
        if infeas > self.tol * max(1.0, np.abs(b).max(initial=0.0)):
            raise InfeasibleError(
                f"constraints cannot be met (artificial sum {infeas:.3e})",
                {"artificial_sum": float(infeas)})

        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if basis[r] < nvar:
                continue
            row = tab[r, :nvar]
            candidates = np.flatnonzero(np.abs(row) > self.tol)
            if candidates.size:
                col = int(candidates[np.argmax(np.abs(row[candidates]))])
                kernels.pivot(tab, r, col)
                basis[r] = col
            else:
                keep[r] = False  # linearly dependent on the other rows

        rows = np.flatnonzero(keep)  # tableau rows, not a subset of original rows
        self._tableau = np.ascontiguousarray(
            np.vstack([tab[rows][:, list(range(nvar)) + [nvar + m]], np.zeros((1, nvar + 1))]))
        self._basis = basis[rows].copy()
        self._rows = rows

    def rank(self) -> int:
        """Number of independent constraints found by phase one."""
        self._phase_one()
        return int(self._rows.size)

    def maximize(self, c) -> LPSolution:
        c = np.asarray(c, dtype=float)
        m, nvar = self.A.shape
        if c.shape != (nvar,):
            raise ValueError(f"objective has shape {c.shape}, expected ({nvar},)")
        self._phase_one()
        tab = self._tableau.copy()
        basis = self._basis.copy()
        k = tab.shape[0] - 1
        cb = c[basis]
        tab[k, :nvar] = cb @ tab[:k, :nvar] - c
        tab[k, -1] = cb @ tab[:k, -1]
        active = np.ones(nvar, dtype=np.bool_)
        status, iters = kernels.bland_iterate(tab, basis, active, self.tol, self.max_iter)
        if status == 1:
            raise LPError("unbounded", "objective grows without bound")
        if status == 2:
            raise LPError("iteration_limit", f"phase two stopped after {iters} pivots")

        x = np.zeros(nvar)
        x[basis] = tab[:k, -1]
        x[x < 0] = 0.0
        objective = float(c @ x)

        # Tableau rows are combinations of all original rows, so the duals are
        # solved against the full (possibly rank-deficient) system.
        duals, *_ = np.linalg.lstsq(self.A[:, basis].T, c[basis], rcond=None)
        dual_objective = float(self.b @ duals)
        dual_infeas = float(max(0.0, np.max(c - self.A.T @ duals, initial=0.0)))
        residual = float(np.max(np.abs(self.A @ x - self.b), initial=0.0))
        if residual > 1e3 * self.tol:
            raise LPError("numerical", f"primal residual {residual:.3e} after solve",
                          {"residual": residual, "iterations": iters})
        return LPSolution(
            x=x,
            objective=objective,
            duals=duals,
            dual_objective=dual_objective,
            duality_gap=abs(objective - dual_objective),
            dual_infeasibility=dual_infeas,
            primal_residual=residual,
            iterations=self.phase_one_iterations + iters,
        )


def linprog_max(c, A_eq, b_eq, tol: float = FEAS_TOL) -> LPSolution:
    """One-shot convenience wrapper."""
    return StandardFormLP(A_eq, b_eq, tol=tol).maximize(c)
