"""Min-entropy certification by linear programming over NSIT tables.

For a target value of K the feasible set is every table P(a, b | A_i, B_j)
that is normalised, nonnegative, has Bob's marginals independent of Alice's
setting (no signalling in time) and, unless disabled, Alice's marginals
independent of Bob's later setting. The largest single cell probability over
that set bounds the guessing probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import max_K_deterministic
from .lp import InfeasibleError, LPError, StandardFormLP
from .temporal import _check_n, nosignaling_max, signs_array

RANGE_TOL = 1e-9
TABLE_TOL = 1e-9

# Lines P* <= beta + alpha K quoted for n = 2, 3, 4.
QUOTED_LINES = {2: (-1 / 4, 3 / 2), 3: (-1 / 16, 5 / 4), 4: (-1 / 48, 7 / 6)}


class CertificationRangeError(ValueError):
    """Requested K lies outside the range where certification is defined."""


def cell_index(n: int, i: int, j: int, a: int, b: int) -> int:
    return ((i * n + j) * 2 + a) * 2 + b


def cell_of(n: int, index: int) -> tuple[int, int, int, int]:
    rest, b = divmod(index, 2)
    rest, a = divmod(rest, 2)
    i, j = divmod(rest, n)
    return i, j, a, b


@dataclass(frozen=True)
class JointTable:
    n: int
    probabilities: np.ndarray = field(repr=False)  # [i, j, a, b]

    @property
    def alice_marginals(self) -> np.ndarray:
        return self.probabilities.sum(axis=3)  # [i, j, a]

    @property
    def bob_marginals(self) -> np.ndarray:
        return self.probabilities.sum(axis=2)  # [i, j, b]

    def k_value(self) -> float:
        parity = np.array([[1.0, -1.0], [-1.0, 1.0]])
        corr = np.einsum("ijab,ab->ij", self.probabilities, parity)
        return float(np.sum(signs_array(self.n) * corr))

    def violations(self, k_target: float | None = None) -> dict[str, float]:
        """Largest violation of each LP constraint family."""
        p = self.probabilities
        bob = self.bob_marginals
        alice = self.alice_marginals
        out = {
            "nonnegativity": float(max(0.0, -p.min())),
            "normalization": float(np.abs(p.sum(axis=(2, 3)) - 1.0).max()),
            "nsit": float(np.abs(bob - bob[:1]).max()),
            "arrow_of_time": float(np.abs(alice - alice[:, :1]).max()),
        }
        if k_target is not None:
            out["k_equality"] = abs(self.k_value() - k_target)
        return out


@dataclass(frozen=True)
class LPDescription:
    n: int
    k_target: float
    A_eq: np.ndarray = field(repr=False)
    b_eq: np.ndarray = field(repr=False)
    row_kinds: tuple[str, ...] = field(repr=False)
    n_cells: int = 0
    arrow: bool = True
    geq: bool = False

    @property
    def n_variables(self) -> int:
        return self.A_eq.shape[1]

    def count(self, kind: str) -> int:
        return sum(1 for r in self.row_kinds if r == kind)


def k_coefficients(n: int) -> np.ndarray:
    """Coefficient of every cell in K: sign(i, j) (-1)^(a xor b)."""
    signs = signs_array(n)
    parity = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return (signs[:, :, None, None] * parity[None, None]).reshape(-1)


def build_lp(n: int, k_target: float, arrow: bool = True, geq: bool = False) -> LPDescription:
    n = _check_n(n)
    ns = nosignaling_max(n)
    if abs(k_target) > ns + RANGE_TOL:
        raise InfeasibleError(f"K={k_target} exceeds the no-signalling maximum {ns}")
    m = 1 << (n - 1)
    cells = 4 * m * n
    rows = []
    kinds = []
    rhs = []

    def new_row():
        return np.zeros(cells + (1 if geq else 0))

    for i in range(m):
        for j in range(n):
            r = new_row()
            for a in (0, 1):
                for b in (0, 1):
                    r[cell_index(n, i, j, a, b)] = 1.0
            rows.append(r), kinds.append("normalization"), rhs.append(1.0)
    for i in range(1, m):
        for j in range(n):
            for b in (0, 1):
                r = new_row()
                for a in (0, 1):
                    r[cell_index(n, i, j, a, b)] += 1.0
                    r[cell_index(n, 0, j, a, b)] -= 1.0
                rows.append(r), kinds.append("nsit"), rhs.append(0.0)
    if arrow:
        for i in range(m):
            for j in range(1, n):
                for a in (0, 1):
                    r = new_row()
                    for b in (0, 1):
                        r[cell_index(n, i, j, a, b)] += 1.0
                        r[cell_index(n, i, 0, a, b)] -= 1.0
                    rows.append(r), kinds.append("arrow_of_time"), rhs.append(0.0)
    r = new_row()
    r[:cells] = k_coefficients(n)
    if geq:
        r[cells] = -1.0  # surplus: K - s = k_target
    rows.append(r), kinds.append("k_value"), rhs.append(float(k_target))
    return LPDescription(n, float(k_target), np.array(rows), np.array(rhs), tuple(kinds),
                         cells, arrow, geq)


@dataclass(frozen=True)
class CertificationResult:
    n: int
    k_value: float
    p_star: float
    min_entropy: float
    table: JointTable
    cell: tuple[int, int, int, int]
    duality_gap: float
    conditional: bool = False
    skipped_cells: tuple[tuple[int, int, int, int], ...] = ()


def _classical_max(n: int) -> float:
    return max_K_deterministic(n)[0]


def _check_range(n: int, k: float, strict_lower: bool = False) -> None:
    low = _classical_max(n)
    high = nosignaling_max(n)
    if strict_lower and not k > low + RANGE_TOL:
        raise CertificationRangeError(
            f"K={k} must exceed the classical maximum {low:g} for n={n}")
    if k < low - RANGE_TOL or k > high + RANGE_TOL:
        raise CertificationRangeError(
            f"K={k} outside certifiable range [{low:g}, {high:g}] for n={n}")


def _min_entropy(p: float) -> float:
    return -math.log2(p) if p < 1.0 else 0.0


def certify(n: int, k_target: float, arrow: bool = True, geq: bool = False) -> CertificationResult:
    """Maximise each cell probability separately; P* is the largest of them."""
    n = _check_n(n)
    _check_range(n, k_target)
    desc = build_lp(n, k_target, arrow=arrow, geq=geq)
    problem = StandardFormLP(desc.A_eq, desc.b_eq)
    best = None
    best_cell = -1
    gap = 0.0
    for idx in range(desc.n_cells):
        c = np.zeros(desc.n_variables)
        c[idx] = 1.0
        sol = problem.maximize(c)
        gap = max(gap, sol.duality_gap)
        if best is None or sol.objective > best.objective + 1e-12:
            best = sol
            best_cell = idx
    p_star = min(1.0, best.objective)
    table = best.x[:desc.n_cells].reshape(1 << (n - 1), n, 2, 2)
    return CertificationResult(n, float(k_target), p_star, _min_entropy(p_star),
                               JointTable(n, table), cell_of(n, best_cell), gap)


def certify_conditional(n: int, k_target: float, arrow: bool = True,
                        geq: bool = False) -> CertificationResult:
    """Largest P(b | a, A_i, B_j) = P(a, b | A_i, B_j) / P(a | A_i, B_j) over the feasible set.

    Each ratio is linearised with the Charnes-Cooper substitution y = t p,
    t >= 0: maximise y_cell subject to A y - b t = 0 and P(a | A_i, B_j)[y] = 1.
    Cells whose denominator cannot be made positive are skipped.
    """
    n = _check_n(n)
    _check_range(n, k_target, strict_lower=True)
    desc = build_lp(n, k_target, arrow=arrow, geq=geq)
    A = np.hstack([desc.A_eq, -desc.b_eq[:, None]])
    nv = A.shape[1]
    m = 1 << (n - 1)
    best_val = -1.0
    best_cell = None
    best_table = None
    gap = 0.0
    skipped = []
    for i in range(m):
        for j in range(n):
            for a in (0, 1):
                denom = np.zeros(nv)
                denom[cell_index(n, i, j, a, 0)] = 1.0
                denom[cell_index(n, i, j, a, 1)] = 1.0
                problem = StandardFormLP(np.vstack([A, denom]), np.append(np.zeros(A.shape[0]), 1.0))
                for b in (0, 1):
                    c = np.zeros(nv)
                    c[cell_index(n, i, j, a, b)] = 1.0
                    try:
                        sol = problem.maximize(c)
                    except InfeasibleError:
                        skipped.append((i, j, a, b))
                        continue
                    gap = max(gap, sol.duality_gap)
                    if sol.objective > best_val + 1e-12:
                        best_val = sol.objective
                        best_cell = (i, j, a, b)
                        t = sol.x[-1]
                        best_table = sol.x[:desc.n_cells] / t
    if best_cell is None:
        raise LPError("infeasible", "no cell has a positive conditioning probability")
    p_star = min(1.0, best_val)
    table = JointTable(n, best_table.reshape(m, n, 2, 2))
    return CertificationResult(n, float(k_target), p_star, _min_entropy(p_star), table,
                               best_cell, gap, conditional=True, skipped_cells=tuple(skipped))


@dataclass(frozen=True)
class FitSummary:
    n: int
    alpha_fit: float
    beta_fit: float
    alpha_quoted: float | None
    beta_quoted: float | None
    max_residual: float
    alpha_anchor: float
    beta_anchor: float


def anchor_line(n: int) -> tuple[float, float]:
    """(alpha, beta) of the line through (classical max, 1) and (NS max, 1/2)."""
    low = _classical_max(n)
    high = nosignaling_max(n)
    alpha = -0.5 / (high - low)
    return alpha, 1.0 - alpha * low


def sweep_and_fit(n: int, k_grid, arrow: bool = True,
                  geq: bool = False) -> tuple[list[CertificationResult], FitSummary]:
    n = _check_n(n)
    ks = np.asarray(list(k_grid), dtype=float)
    if ks.size < 2:
        raise ValueError("need at least two grid points to fit a line")
    results = [certify(n, float(k), arrow=arrow, geq=geq) for k in ks]
    ps = np.array([r.p_star for r in results])
    design = np.column_stack([ks, np.ones_like(ks)])
    (alpha, beta), *_ = np.linalg.lstsq(design, ps, rcond=None)
    residual = float(np.max(np.abs(design @ np.array([alpha, beta]) - ps)))
    quoted = QUOTED_LINES.get(n, (None, None))
    a_anchor, b_anchor = anchor_line(n)
    return results, FitSummary(n, float(alpha), float(beta), quoted[0], quoted[1], residual,
                               a_anchor, b_anchor)
