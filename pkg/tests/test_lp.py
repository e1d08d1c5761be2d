import numpy as np
import pytest
from scipy.optimize import linprog

from temporal_rac.lp import InfeasibleError, LPError, StandardFormLP, linprog_max


def _random_feasible(rng, m, nvar):
    A = rng.normal(size=(m, nvar))
    x0 = rng.uniform(0.1, 1.0, size=nvar)
    b = A @ x0
    # box the feasible set so the objective stays bounded
    A = np.vstack([A, np.ones(nvar)])
    b = np.append(b, x0.sum())
    return A, b


@pytest.mark.parametrize("trial", range(25))
def test_matches_scipy_on_random_problems(trial):
    rng = np.random.default_rng(1000 + trial)
    m, nvar = int(rng.integers(1, 6)), int(rng.integers(6, 14))
    A, b = _random_feasible(rng, m, nvar)
    c = rng.normal(size=nvar)
    ref = linprog(-c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    assert ref.status == 0
    sol = linprog_max(c, A, b)
    assert sol.objective == pytest.approx(-ref.fun, abs=1e-8)
    assert sol.duality_gap < 1e-9
    assert sol.dual_infeasibility < 1e-9
    assert sol.primal_residual < 1e-9
    assert np.all(sol.x >= 0)


def test_small_textbook_problem():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, with slacks
    A = [[1, 1, 1, 0], [1, 3, 0, 1]]
    sol = linprog_max([3, 2, 0, 0], A, [4, 6])
    assert sol.objective == pytest.approx(12.0)
    assert sol.x[:2] == pytest.approx([4.0, 0.0])


def test_redundant_rows_are_dropped():
    A = np.array([[1.0, 1.0, 1.0], [2.0, 2.0, 2.0], [1.0, 0.0, -1.0]])
    b = np.array([1.0, 2.0, 0.0])
    lp = StandardFormLP(A, b)
    assert lp.rank() == 2
    sol = lp.maximize(np.array([1.0, 0.0, 0.0]))
    assert sol.objective == pytest.approx(0.5)
    assert sol.duality_gap < 1e-9


def test_negative_rhs_rows():
    sol = linprog_max([-1.0, -1.0], [[-1.0, -1.0]], [-2.0])
    assert sol.objective == pytest.approx(-2.0)


def test_infeasible():
    with pytest.raises(InfeasibleError) as info:
        linprog_max([1.0, 0.0], [[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])
    assert info.value.status == "infeasible"


def test_unbounded():
    with pytest.raises(LPError) as info:
        linprog_max([1.0, 0.0], [[1.0, -1.0]], [0.0])
    assert info.value.status == "unbounded"


def test_iteration_limit():
    rng = np.random.default_rng(3)
    A, b = _random_feasible(rng, 4, 10)
    with pytest.raises(LPError) as info:
        StandardFormLP(A, b, max_iter=1).maximize(rng.normal(size=10))
    assert info.value.status == "iteration_limit"


def test_phase_one_reused_across_objectives():
    rng = np.random.default_rng(5)
    A, b = _random_feasible(rng, 3, 8)
    lp = StandardFormLP(A, b)
    for _ in range(5):
        c = rng.normal(size=8)
        ref = linprog(-c, A_eq=A, b_eq=b, method="highs")
        assert lp.maximize(c).objective == pytest.approx(-ref.fun, abs=1e-8)


def test_shape_checks():
    with pytest.raises(ValueError):
        StandardFormLP(np.ones((2, 3)), np.ones(3))
    with pytest.raises(ValueError):
        StandardFormLP(np.ones((2, 3)), np.ones(2)).maximize(np.ones(2))


def test_degenerate_problem_terminates():
    # Klee-Minty style cube in three dimensions, written with slacks
    A = np.array([[1, 0, 0, 1, 0, 0], [4, 1, 0, 0, 1, 0], [8, 4, 1, 0, 0, 1]], float)
    b = np.array([5.0, 25.0, 125.0])
    sol = linprog_max([4, 2, 1, 0, 0, 0], A, b)
    assert sol.objective == pytest.approx(125.0)
