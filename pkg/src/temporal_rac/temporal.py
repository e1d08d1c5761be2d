"""Two-time correlators and the signed sum K for the n -> 1 temporal scenario.

Alice measures one of 2^(n-1) axes on the input state, Bob then measures one
of n axes on the post-measurement state. Row i of the sign pattern belongs to
the n-bit string with a leading 0 whose remaining bits spell i-1 in binary;
the sign of term (i, j) is +1 exactly when bit j of that string is 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bloch import (
    ZERO,
    BlochVector,
    Projector,
    VectorLike,
    as_array,
    check_axes,
    check_state,
    outcome_probability,
    post_measurement_state,
)


class InvalidScenarioError(ValueError):
    """Unsupported number of bits or malformed strategy shape."""


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise InvalidScenarioError(f"n must be an integer >= 2, got {n!r}")
    return int(n)


@lru_cache(maxsize=None)
def _signs(n: int) -> np.ndarray:
    rows = 1 << (n - 1)
    codes = np.arange(rows)[:, None]
    shifts = np.arange(n - 1, -1, -1)[None, :]
    bits = (codes >> shifts) & 1  # leading bit is always 0
    out = 1 - 2 * bits
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SignMatrix:
    n: int
    entries: np.ndarray = field(repr=False)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij):
        return int(self.entries[ij])


def sign_matrix(n: int) -> SignMatrix:
    n = _check_n(n)
    return SignMatrix(n, _signs(n))


def signs_array(n: int) -> np.ndarray:
    """The raw (2^(n-1), n) array of +/-1 as float64."""
    return _signs(_check_n(n)).astype(np.float64)


def row_string(n: int, i: int) -> str:
    """Preparation string (leading bit 0) of zero-based row ``i``."""
    return format(i, f"0{n}b")


def nosignaling_max(n: int) -> float:
    n = _check_n(n)
    return float(n * (1 << (n - 1)))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TemporalStrategy:
    n: int
    alice_axes: np.ndarray
    bob_axes: np.ndarray
    input_state: np.ndarray = field(default_factory=lambda: ZERO.array)

    def __post_init__(self):
        n = _check_n(self.n)
        alice = check_axes(self.alice_axes)
        bob = check_axes(self.bob_axes)
        if alice.shape[0] != 1 << (n - 1):
            raise InvalidScenarioError(
                f"n={n} needs {1 << (n - 1)} Alice axes, got {alice.shape[0]}")
        if bob.shape[0] != n:
            raise InvalidScenarioError(f"n={n} needs {n} Bob axes, got {bob.shape[0]}")
        state = check_state(self.input_state)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "alice_axes", _frozen(alice))
        object.__setattr__(self, "bob_axes", _frozen(bob))
        object.__setattr__(self, "input_state", _frozen(state))

    def __eq__(self, other):
        if not isinstance(other, TemporalStrategy):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.alice_axes, other.alice_axes)
                and np.array_equal(self.bob_axes, other.bob_axes)
                and np.array_equal(self.input_state, other.input_state))

    __hash__ = None


@dataclass(frozen=True)
class CorrelationTable:
    n: int
    values: np.ndarray = field(repr=False)


def two_time_correlator(input_state: VectorLike, alice_axis: VectorLike,
                        bob_axis: VectorLike) -> float:
    """Sum of (-1)^(a xor b) P(a, b) over the four sequential outcomes."""
    state = BlochVector.of(input_state)
    total = 0.0
    for a in (0, 1):
        pa = Projector(BlochVector.of(alice_axis), a)
        p_first = outcome_probability(state, pa)
        if p_first == 0.0:
            continue
        after = post_measurement_state(state, pa)
        for b in (0, 1):
            pb = Projector(BlochVector.of(bob_axis), b)
            total += (-1) ** (a ^ b) * p_first * outcome_probability(after, pb)
    return total


def joint_probabilities(strategy: TemporalStrategy) -> np.ndarray:
    """P(a, b | A_i, B_j) as an array indexed [i, j, a, b].

    Vectorised form of the sequential rule: P(a) from the input state, then
    Bob's outcome on Alice's eigenstate (-1)^a â_i.
    """
    a_dir = strategy.alice_axes
    b_dir = strategy.bob_axes
    sgn = np.array([1.0, -1.0])
    p_a = 0.5 * (1.0 + sgn[None, :] * (a_dir @ strategy.input_state)[:, None])  # (m, 2)
    dots = a_dir @ b_dir.T  # (m, n)
    cond = 0.5 * (1.0 + sgn[None, None, :, None] * sgn[None, None, None, :] * dots[:, :, None, None])
    return p_a[:, None, :, None] * cond


def correlation_table(strategy: TemporalStrategy) -> CorrelationTable:
    joint = joint_probabilities(strategy)
    parity = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return CorrelationTable(strategy.n, np.einsum("ijab,ab->ij", joint, parity))


def correlation_table_by_outcomes(strategy: TemporalStrategy) -> CorrelationTable:
    """Same table, one scalar correlator at a time through the Bloch primitives."""
    m, n = strategy.alice_axes.shape[0], strategy.n
    values = np.empty((m, n))
    for i in range(m):
        for j in range(n):
            values[i, j] = two_time_correlator(
                strategy.input_state, strategy.alice_axes[i], strategy.bob_axes[j])
    return CorrelationTable(n, values)


def evaluate_K(strategy: TemporalStrategy) -> float:
    table = correlation_table(strategy)
    return float(np.sum(signs_array(strategy.n) * table.values))


def k_from_axes(n: int, alice: np.ndarray, bob: np.ndarray) -> float:
    """Closed form with the maximally mixed input: sum of sign(i,j) â_i . b̂_j."""
    return float(np.sum(signs_array(n) * (np.asarray(alice) @ np.asarray(bob).T)))


def make_strategy(n: int, alice, bob, input_state=None) -> TemporalStrategy:
    state = ZERO.array if input_state is None else as_array(input_state)
    return TemporalStrategy(n, np.asarray(alice, dtype=float), np.asarray(bob, dtype=float), state)


def random_unit_vectors(rng: np.random.Generator, count: int) -> np.ndarray:
    v = rng.standard_normal((count, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def random_strategy(n: int, rng: np.random.Generator, input_state=None) -> TemporalStrategy:
    return make_strategy(n, random_unit_vectors(rng, 1 << (n - 1)),
                         random_unit_vectors(rng, n), input_state)
