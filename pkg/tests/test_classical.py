import numpy as np
import pytest

from temporal_rac import classical
from temporal_rac.classical import (
    FULL_ENUMERATION_N,
    ResourceLimitError,
    audit_bounds,
    deterministic_k_closed_form,
    majority_encoding_value,
    max_F_deterministic,
    max_K_deterministic,
)
from temporal_rac.optimizer import OptimizerConfig, seesaw_maximize
from temporal_rac.temporal import make_strategy, evaluate_K, nosignaling_max, signs_array

from . import oracles


@pytest.mark.parametrize("n, expected", [(2, 2.0), (3, 6.0), (4, 12.0)])
def test_max_k_examples(n, expected):
    value, assignment = max_K_deterministic(n)
    assert value == expected
    assert float(np.sum(signs_array(n) * assignment.correlators())) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_max_k_against_full_vertex_enumeration(n):
    assert max_K_deterministic(n)[0] == oracles.k_all_vertices(n, signs_array(n))


def test_n3_maximiser_and_tie_break():
    _, a = max_K_deterministic(3)
    assert a.bob_values == (1, 1, 1)
    assert a.alice_values == (1, 1, 1, -1)


@pytest.mark.parametrize("n", range(2, 13))
def test_every_bob_assignment_scores_the_same(n):
    from temporal_rac import kernels

    values = kernels.deterministic_k_values(signs_array(n))
    assert np.all(values == values[0])
    assert values[0] == deterministic_k_closed_form(n)


def test_reduced_path_beyond_enumeration():
    n = FULL_ENUMERATION_N + 1
    value, a = max_K_deterministic(n)
    assert value == deterministic_k_closed_form(n)
    assert a.bob_values == (1,) * n


def test_max_k_flip_symmetry():
    for n in (2, 3, 4, 5):
        value, a = max_K_deterministic(n)
        flipped = -np.outer(a.alice_values, a.bob_values) * -1
        assert float(np.sum(signs_array(n) * flipped)) == value


def test_max_k_range():
    with pytest.raises(ResourceLimitError):
        max_K_deterministic(21)


@pytest.mark.parametrize("n, expected", [(2, 0.75), (3, 0.75)])
def test_max_f_examples(n, expected):
    value, strat = max_F_deterministic(n)
    assert value == expected
    assert strat.success_probability() == expected
    assert oracles.rac_deterministic(n) == expected


def test_max_f_n3_majority():
    assert majority_encoding_value(3) == pytest.approx((2 * 1 + 6 * (2 / 3)) / 8)


def test_max_f_n4():
    value, strat = max_F_deterministic(4)
    assert strat.success_probability() == value
    assert value == majority_encoding_value(4) == 0.6875
    assert value > 0.625


def test_max_f_range():
    with pytest.raises(ResourceLimitError):
        max_F_deterministic(5)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bridge_between_oracles(n):
    k, _ = max_K_deterministic(n)
    f, _ = max_F_deterministic(n)
    assert abs(k - n * 2 ** n * (f - 0.5)) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_deterministic_tables_are_nsit(n):
    _, a = max_K_deterministic(n)
    table = a.joint_table()
    bob = table.sum(axis=2)
    alice = table.sum(axis=3)
    assert np.array_equal(bob, np.broadcast_to(bob[:1], bob.shape))
    assert np.array_equal(alice, np.broadcast_to(alice[:, :1], alice.shape))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_deterministic_value_is_quantum_achievable(n):
    value, a = max_K_deterministic(n)
    z = np.array([0.0, 0.0, 1.0])
    strat = make_strategy(n, np.outer(a.alice_values, z), np.outer(a.bob_values, z))
    assert evaluate_K(strat) == pytest.approx(value, abs=1e-12)
    assert seesaw_maximize(OptimizerConfig(n, restarts=10, seed=0)).best_K >= value
    assert value <= nosignaling_max(n)


def test_audit_n2_consistent():
    r = audit_bounds(2)
    assert r.row("classical_K").quoted_value == 2 and r.row("classical_K").computed_value == 2
    assert r.row("classical_F").quoted_value == 0.75 and r.row("classical_F").computed_value == 0.75
    assert r.row("classical_K").flag == "match"
    assert r.row("bridge_K_from_F").flag == "consistent"


def test_audit_n3_reports_both():
    r = audit_bounds(3)
    assert r.row("classical_K").quoted_value == 4
    assert r.row("classical_K").computed_value == 6
    assert r.row("classical_F").quoted_value == pytest.approx(2 / 3)
    assert r.row("classical_F").computed_value == 0.75
    assert r.row("classical_K").flag == "DISCREPANCY"
    assert abs(r.row("bridge_K_from_F").delta) < 1e-9


def test_audit_csv_format():
    text = audit_bounds(2).to_csv().splitlines()
    assert text[0] == "quantity,paper_value,computed_value,delta,flag"
    assert text[1] == "classical_K,2.000000,2.000000,0.000000,match"


def test_audit_large_n_has_no_f_oracle():
    r = audit_bounds(6)
    assert r.row("classical_F").computed_value is None
    assert r.row("classical_K").computed_value == deterministic_k_closed_form(6)
    with pytest.raises(KeyError):
        r.row("bridge_K_from_F")


def test_quoted_constants():
    assert classical.quoted_classical_k(4) == 8
    assert classical.quoted_classical_f(4) == 0.625
