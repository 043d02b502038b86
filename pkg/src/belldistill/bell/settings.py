"""Two-setting measurement configurations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import SettingsValidationError
from ..core.tolerances import DEFAULT_TOLERANCES
from ..qubits.algebra import pauli_observable
from ..qubits.states import ComplexMatrix, UnitVector3


@dataclass(frozen=True, slots=True, eq=False)
class MeasurementSettings:
    """Directions (n_i, n'_i) for every qubit i, stored as an (N, 2, 3) array.

    ``directions[i, 0]`` defines O_i^1 = sigma(n_i) and ``directions[i, 1]``
    defines O_i^2 = sigma(n'_i).
    """

    directions: NDArray[np.float64]

    def __init__(self, directions: ArrayLike) -> None:
        data = np.array(directions, dtype=float, copy=True)
        if data.ndim != 3 or data.shape[1:] != (2, 3) or data.shape[0] < 1:
            raise SettingsValidationError(f"settings must have shape (N, 2, 3), got {data.shape}")
        norms = np.linalg.norm(data, axis=2)
        bad = np.argwhere(~(np.abs(norms**2 - 1.0) <= DEFAULT_TOLERANCES.norm))
        if bad.size:
            qubit, setting = bad[0]
            raise SettingsValidationError(
                f"direction {setting + 1} of qubit {qubit} is not a unit vector "
                f"(norm {norms[qubit, setting]!r})"
            )
        data.setflags(write=False)
        object.__setattr__(self, "directions", data)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[UnitVector3, UnitVector3]]) -> "MeasurementSettings":
        return cls([[first.as_array(), second.as_array()] for first, second in pairs])

    @classmethod
    def uniform(cls, n_qubits: int, first: ArrayLike, second: ArrayLike) -> "MeasurementSettings":
        """Same pair of directions on every qubit."""
        pair = np.array([first, second], dtype=float)
        return cls(np.broadcast_to(pair, (n_qubits, 2, 3)))

    @classmethod
    def random(cls, n_qubits: int, rng: np.random.Generator) -> "MeasurementSettings":
        """Independent directions uniform on the sphere (normalized Gaussian triples)."""
        raw = rng.standard_normal((n_qubits, 2, 3))
        return cls(raw / np.linalg.norm(raw, axis=2, keepdims=True))

    @property
    def n_qubits(self) -> int:
        return int(self.directions.shape[0])

    @property
    def pairs(self) -> tuple[tuple[UnitVector3, UnitVector3], ...]:
        return tuple(
            (UnitVector3.from_array(first), UnitVector3.from_array(second))
            for first, second in self.directions
        )

    def observables(self) -> list[tuple[ComplexMatrix, ComplexMatrix]]:
        """(O_i^1, O_i^2) for every qubit."""
        return [(pauli_observable(first), pauli_observable(second)) for first, second in self.directions]

    def swapped(self) -> "MeasurementSettings":
        """Interchange n_i and n'_i on every qubit."""
        return MeasurementSettings(self.directions[:, ::-1, :])

    def negated(self, qubit: int) -> "MeasurementSettings":
        """Flip both directions of one qubit, which flips the sign of any correlation functional."""
        data = self.directions.copy()
        data[qubit] = -data[qubit]
        return MeasurementSettings(data)

    def without(self, qubit: int) -> "MeasurementSettings":
        """Drop one qubit; the others keep their relative order."""
        if self.n_qubits < 2:
            raise SettingsValidationError("cannot drop the only qubit")
        return MeasurementSettings(np.delete(self.directions, qubit, axis=0))

    def with_direction(self, qubit: int, setting: int, direction: ArrayLike) -> "MeasurementSettings":
        data = self.directions.copy()
        data[qubit, setting] = np.asarray(direction, dtype=float)
        return MeasurementSettings(data)

    def to_lists(self) -> list[list[list[float]]]:
        return self.directions.tolist()
