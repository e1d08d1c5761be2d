"""Qubit algebra in the Bloch picture.

States and projective measurement axes are real 3-vectors. For a qubit every
quantity needed here (outcome probabilities, Lüders updates, traces of
projector products) reduces to a dot product, so no complex matrices appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

AXIS_TOL = 1e-9
STATE_TOL = 1e-12


class InvalidAxisError(ValueError):
    """A measurement axis is not a unit vector."""


class InvalidStateError(ValueError):
    """A state vector lies outside the Bloch ball."""


class NullEventError(ValueError):
    """Conditioning on an outcome that has probability zero."""


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    @classmethod
    def of(cls, v: "VectorLike") -> "BlochVector":
        if isinstance(v, BlochVector):
            return v
        arr = np.asarray(v, dtype=float)
        if arr.shape != (3,):
            raise ValueError(f"expected 3 components, got shape {arr.shape}")
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def norm(self) -> float:
        return float(np.linalg.norm(self.array))

    def __neg__(self) -> "BlochVector":
        return BlochVector(-self.x, -self.y, -self.z)


VectorLike = Union[BlochVector, Sequence[float], np.ndarray]

ZERO = BlochVector(0.0, 0.0, 0.0)


def as_array(v: VectorLike) -> np.ndarray:
    if isinstance(v, BlochVector):
        return v.array
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected 3 components, got shape {arr.shape}")
    return arr


def check_axis(v: VectorLike) -> np.ndarray:
    arr = as_array(v)
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > AXIS_TOL:
        raise InvalidAxisError(f"measurement axis {arr.tolist()} has norm {norm!r}, expected 1")
    return arr


def check_state(v: VectorLike) -> np.ndarray:
    arr = as_array(v)
    norm = float(np.linalg.norm(arr))
    if norm > 1.0 + STATE_TOL:
        raise InvalidStateError(f"state {arr.tolist()} has norm {norm!r} > 1")
    return arr


def check_axes(vectors) -> np.ndarray:
    """Validate a stack of axes and return it as an (k, 3) float array."""
    arr = np.asarray([as_array(v) for v in vectors], dtype=float).reshape(-1, 3)
    norms = np.linalg.norm(arr, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > AXIS_TOL)
    if bad.size:
        i = int(bad[0])
        raise InvalidAxisError(f"axis #{i} {arr[i].tolist()} has norm {norms[i]!r}, expected 1")
    return arr


@dataclass(frozen=True)
class Projector:
    """Outcome ``outcome`` of the projective measurement along ``axis``."""

    axis: BlochVector
    outcome: int

    def __post_init__(self):
        if self.outcome not in (0, 1):
            raise ValueError(f"outcome must be 0 or 1, got {self.outcome!r}")
        object.__setattr__(self, "axis", BlochVector.of(self.axis))
        check_axis(self.axis)

    @property
    def direction(self) -> np.ndarray:
        """Effective Bloch direction: the axis, flipped for outcome 1."""
        return (1 - 2 * self.outcome) * self.axis.array


def outcome_probability(state: VectorLike, p: Projector) -> float:
    s = check_state(state)
    value = 0.5 * (1.0 + float(p.direction @ s))
    return min(1.0, max(0.0, value))


def post_measurement_state(state: VectorLike, p: Projector) -> BlochVector:
    """Lüders update of a qubit: a rank-one projector leaves its own eigenstate."""
    prob = outcome_probability(state, p)
    if prob <= 0.0:
        raise NullEventError(f"outcome {p.outcome} along {p.axis} has zero probability on {state}")
    return BlochVector.of(p.direction)


def projector_overlap(p: Projector, q: Projector) -> float:
    """Tr[P Q] for two rank-one qubit projectors."""
    return 0.5 * (1.0 + float(p.direction @ q.direction))


def overlaps(directions_p: np.ndarray, directions_q: np.ndarray) -> np.ndarray:
    """Batched ``projector_overlap`` on effective directions, broadcasting over leading axes."""
    return 0.5 * (1.0 + np.sum(directions_p * directions_q, axis=-1))


def density_matrix(state: VectorLike) -> np.ndarray:
    """2x2 density matrix of a Bloch vector. Used only as an independent cross-check."""
    x, y, z = as_array(state)
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


def projector_matrix(p: Projector) -> np.ndarray:
    return density_matrix(p.direction)
