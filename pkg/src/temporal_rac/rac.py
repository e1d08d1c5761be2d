"""n -> 1 random access codes with qubit encodings.

An input string and its bitwise complement share one encoding axis with
opposite signs, so only the 2^(n-1) strings with a leading 0 carry an axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochVector, Projector, check_axes, overlaps, projector_overlap
from .temporal import (
    InvalidScenarioError,
    TemporalStrategy,
    _check_n,
    _frozen,
    make_strategy,
    random_unit_vectors,
)


@dataclass(frozen=True, eq=False)
class RacStrategy:
    n: int
    encodings: np.ndarray  # row i: axis of the leading-0 string encoding i in binary
    decodings: np.ndarray

    def __post_init__(self):
        n = _check_n(self.n)
        enc = check_axes(self.encodings)
        dec = check_axes(self.decodings)
        if enc.shape[0] != 1 << (n - 1):
            raise InvalidScenarioError(
                f"n={n} needs {1 << (n - 1)} encoding axes, got {enc.shape[0]}")
        if dec.shape[0] != n:
            raise InvalidScenarioError(f"n={n} needs {n} decoding axes, got {dec.shape[0]}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "encodings", _frozen(enc))
        object.__setattr__(self, "decodings", _frozen(dec))

    def encoding_for(self, bits: str) -> np.ndarray:
        """Bloch vector of the state that encodes the bit string ``bits``."""
        if len(bits) != self.n or set(bits) - {"0", "1"}:
            raise ValueError(f"expected an {self.n}-bit string, got {bits!r}")
        code = int(bits, 2)
        half = 1 << (self.n - 1)
        if code < half:
            return self.encodings[code].copy()
        return -self.encodings[(1 << self.n) - 1 - code]

    def __eq__(self, other):
        if not isinstance(other, RacStrategy):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.encodings, other.encodings)
                and np.array_equal(self.decodings, other.decodings))

    __hash__ = None


def encoded_states(strategy: RacStrategy) -> np.ndarray:
    """Bloch vectors of all 2^n encoded states, indexed by the input string as an integer."""
    half = strategy.encodings
    return np.concatenate([half, -half[::-1]])


def success_probability(strategy: RacStrategy) -> float:
    """Average probability that Bob's outcome equals the requested bit.

    Each term is Tr[rho_x B_y^{x_y}], the overlap of the encoded state with
    the decoding projector for the correct bit.
    """
    n = strategy.n
    codes = np.arange(1 << n)
    bits = (codes[:, None] >> np.arange(n - 1, -1, -1)) & 1
    states = encoded_states(strategy)
    guess = (1 - 2 * bits)[:, :, None] * strategy.decodings[None, :, :]
    return float(overlaps(states[:, None, :], guess).mean())


def success_probability_by_terms(strategy: RacStrategy) -> float:
    """Term-by-term sum over every input string and question, through ``Projector``."""
    n = strategy.n
    total = 0.0
    for code in range(1 << n):
        bits = format(code, f"0{n}b")
        state = Projector(BlochVector.of(strategy.encoding_for(bits)), 0)
        for y in range(n):
            guess = Projector(BlochVector.of(strategy.decodings[y]), int(bits[y]))
            total += projector_overlap(state, guess)
    return total / (n * (1 << n))


def k_from_f(n: int, f: float) -> float:
    n = _check_n(n)
    return n * (1 << n) * f - n * (1 << (n - 1))


def f_from_k(n: int, k: float) -> float:
    n = _check_n(n)
    return 0.5 + k / (n * (1 << n))


def rac_to_temporal(strategy: RacStrategy) -> TemporalStrategy:
    """Alice measures along the encoding axes on the maximally mixed state."""
    return make_strategy(strategy.n, strategy.encodings, strategy.decodings)


def temporal_to_rac(strategy: TemporalStrategy) -> RacStrategy:
    return RacStrategy(strategy.n, strategy.alice_axes, strategy.bob_axes)


def random_rac_strategy(n: int, rng: np.random.Generator) -> RacStrategy:
    n = _check_n(n)
    return RacStrategy(n, random_unit_vectors(rng, 1 << (n - 1)), random_unit_vectors(rng, n))


def reference_strategy(n: int) -> RacStrategy:
    """Known optimal qubit encodings for n = 2 and n = 3."""
    if n == 2:
        s = 1 / np.sqrt(2)
        return RacStrategy(2, [[s, s, 0], [s, -s, 0]], np.eye(3)[:2])
    if n == 3:
        s = 1 / np.sqrt(3)
        enc = s * np.array([[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]], dtype=float)
        return RacStrategy(3, enc, np.eye(3))
    raise ValueError(f"no tabulated strategy for n={n}")
