import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from temporal_rac.bloch import (
    BlochVector,
    InvalidAxisError,
    InvalidStateError,
    NullEventError,
    Projector,
    outcome_probability,
    post_measurement_state,
    projector_overlap,
)

from . import oracles

S2 = 1 / np.sqrt(2)


def unit_vectors():
    return st.tuples(*[st.floats(-1, 1, allow_nan=False)] * 3).filter(
        lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: np.asarray(v) / np.linalg.norm(v))


def states():
    return st.tuples(unit_vectors(), st.floats(0, 1)).map(lambda t: t[0] * t[1])


@pytest.mark.parametrize("state, axis, outcome, expected", [
    ((0, 0, 0), (0.6, 0.0, 0.8), 0, 0.5),
    ((0, 0, 1), (0, 0, 1), 0, 1.0),
    ((0, 0, 0.5), (0, 0, 1), 1, 0.25),
])
def test_outcome_probability_examples(state, axis, outcome, expected):
    assert outcome_probability(state, Projector(BlochVector.of(axis), outcome)) == pytest.approx(expected, abs=1e-15)


def test_outcome_probability_matches_born_rule(rng):
    for _ in range(200):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        state = rng.standard_normal(3)
        state *= rng.uniform() / np.linalg.norm(state)
        for o in (0, 1):
            p = Projector(BlochVector.of(axis), o)
            assert outcome_probability(state, p) == pytest.approx(oracles.born(state, oracles.proj(axis, o)), abs=1e-12)


@pytest.mark.parametrize("state, axis, outcome, expected", [
    ((0, 0, 0), (1, 0, 0), 0, (1, 0, 0)),
    ((0, 0, 0), (1, 0, 0), 1, (-1, 0, 0)),
    ((0, 0, 1), (S2, 0, S2), 0, (S2, 0, S2)),
])
def test_post_measurement_examples(state, axis, outcome, expected):
    got = post_measurement_state(state, Projector(BlochVector.of(axis), outcome))
    assert np.allclose(got.array, expected, atol=1e-12)
    # Lüders update written out with matrices
    assert np.allclose(oracles.luders(state, oracles.proj(axis, outcome)), expected, atol=1e-12)


def test_post_measurement_matches_luders(rng):
    for _ in range(100):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        state = rng.standard_normal(3)
        state *= rng.uniform() / np.linalg.norm(state)
        for o in (0, 1):
            p = Projector(BlochVector.of(axis), o)
            if outcome_probability(state, p) > 1e-9:
                assert np.allclose(post_measurement_state(state, p).array,
                                   oracles.luders(state, oracles.proj(axis, o)), atol=1e-9)


def test_null_event_is_rejected():
    with pytest.raises(NullEventError):
        post_measurement_state((0, 0, 1), Projector(BlochVector(0, 0, 1), 1))


@pytest.mark.parametrize("p_axis, q_axis, po, qo, expected", [
    ((0, 0, 1), (0, 0, 1), 0, 0, 1.0),
    ((1, 0, 0), (0, 1, 0), 0, 1, 0.5),
    ((1, 0, 0), (0, 0, 1), 1, 1, 0.5),
    ((1, 0, 0), (S2, S2, 0), 0, 0, 0.5 * (1 + S2)),
])
def test_projector_overlap_examples(p_axis, q_axis, po, qo, expected):
    p = Projector(BlochVector.of(p_axis), po)
    q = Projector(BlochVector.of(q_axis), qo)
    assert projector_overlap(p, q) == pytest.approx(expected, abs=1e-12)
    trace = np.real(np.trace(oracles.proj(p_axis, po) @ oracles.proj(q_axis, qo)))
    assert projector_overlap(p, q) == pytest.approx(trace, abs=1e-12)


def test_overlap_45_degrees_value():
    p = Projector(BlochVector(1, 0, 0), 0)
    q = Projector(BlochVector(S2, 0, S2), 0)
    assert projector_overlap(p, q) == pytest.approx(0.85355, abs=5e-6)


@pytest.mark.parametrize("axis", [(1, 1, 0), (0, 0, 0), (0, 0, 1 + 2e-9)])
def test_non_unit_axis_rejected(axis):
    with pytest.raises(InvalidAxisError):
        Projector(BlochVector.of(axis), 0)


def test_axis_within_tolerance_accepted():
    Projector(BlochVector(0, 0, 1 + 5e-10), 0)


def test_state_outside_ball_rejected():
    with pytest.raises(InvalidStateError):
        outcome_probability((0, 0, 1.01), Projector(BlochVector(0, 0, 1), 0))


def test_bad_outcome_rejected():
    with pytest.raises(ValueError):
        Projector(BlochVector(0, 0, 1), 2)


@settings(max_examples=200, deadline=None)
@given(states(), unit_vectors())
def test_outcomes_sum_to_one(state, axis):
    ax = BlochVector.of(axis)
    total = outcome_probability(state, Projector(ax, 0)) + outcome_probability(state, Projector(ax, 1))
    assert total == pytest.approx(1.0, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(unit_vectors(), unit_vectors())
def test_overlap_symmetric_and_sums_to_two(u, v):
    pu = [Projector(BlochVector.of(u), o) for o in (0, 1)]
    pv = [Projector(BlochVector.of(v), o) for o in (0, 1)]
    assert projector_overlap(pu[0], pv[1]) == projector_overlap(pv[1], pu[0])
    assert sum(projector_overlap(a, b) for a in pu for b in pv) == pytest.approx(2.0, abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(states(), unit_vectors(), st.sampled_from([0, 1]))
def test_post_measurement_idempotent(state, axis, outcome):
    p = Projector(BlochVector.of(axis), outcome)
    if outcome_probability(state, p) < 1e-12:
        return
    after = post_measurement_state(state, p)
    assert outcome_probability(after, p) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(post_measurement_state(after, p).array, after.array)
