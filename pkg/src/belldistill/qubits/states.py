"""Validated value types for N-qubit states, directions and cuts.

Qubit 0 is the most significant bit of a basis index and the leftmost tensor
factor everywhere in the package.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import DimensionMismatchError, SettingsValidationError, StateValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances

_LOGGER = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]

# dense matrices up to dim 1024
MAX_QUBITS = 10


def qubit_count(dim: int) -> int:
    """Return N for a dimension 2^N, rejecting anything else."""
    if dim < 2 or dim & (dim - 1):
        raise DimensionMismatchError(f"dimension {dim} is not a power of two >= 2")
    return dim.bit_length() - 1


def _frozen(array: ArrayLike) -> ComplexMatrix:
    data = np.array(array, dtype=np.complex128, copy=True)
    data.setflags(write=False)
    return data


@dataclass(frozen=True, slots=True)
class UnitVector3:
    """Real unit 3-vector of direction cosines."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm_sq = self.x * self.x + self.y * self.y + self.z * self.z
        if not abs(norm_sq - 1.0) <= DEFAULT_TOLERANCES.norm:
            raise SettingsValidationError(
                f"direction ({self.x}, {self.y}, {self.z}) has squared norm {norm_sq!r}"
            )

    @classmethod
    def from_array(cls, values: ArrayLike, *, normalize: bool = False) -> "UnitVector3":
        """Build from any length-3 sequence, optionally normalizing first."""
        vec = np.asarray(values, dtype=float).reshape(-1)
        if vec.shape != (3,):
            raise SettingsValidationError(f"direction needs 3 components, got {vec.shape[0]}")
        if normalize:
            norm = float(np.linalg.norm(vec))
            if norm == 0.0:
                raise SettingsValidationError("cannot normalize the zero vector")
            vec = vec / norm
        return cls(float(vec[0]), float(vec[1]), float(vec[2]))

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True, slots=True, eq=False)
class PureState:
    """Normalized state vector on N qubits."""

    amplitudes: ComplexMatrix

    def __init__(self, amplitudes: ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
        vec = _frozen(np.asarray(amplitudes).reshape(-1))
        qubit_count(vec.shape[0])
        norm_sq = float(np.vdot(vec, vec).real)
        if not abs(norm_sq - 1.0) <= tolerances.norm:
            raise StateValidationError(f"state vector has squared norm {norm_sq!r}")
        object.__setattr__(self, "amplitudes", vec)

    @property
    def n_qubits(self) -> int:
        return qubit_count(self.amplitudes.shape[0])

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    def projector(self) -> "DensityMatrix":
        """Return |psi><psi| as a density matrix."""
        return DensityMatrix.unchecked(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, slots=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix on N qubits.

    The constructor runs every invariant check and fails loudly; use
    :meth:`unchecked` for intermediate results produced by trusted code.
    """

    matrix: ComplexMatrix

    def __init__(self, matrix: ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
        data = _frozen(matrix)
        validate_density_matrix(data, tolerances)
        object.__setattr__(self, "matrix", data)

    @classmethod
    def unchecked(cls, matrix: ArrayLike) -> "DensityMatrix":
        """Wrap a matrix without validation."""
        instance = object.__new__(cls)
        object.__setattr__(instance, "matrix", _frozen(matrix))
        return instance

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityMatrix":
        dim = 2**n_qubits
        return cls.unchecked(np.eye(dim) / dim)

    @property
    def n_qubits(self) -> int:
        return qubit_count(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def validated(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "DensityMatrix":
        """Run the invariant checks on an unchecked instance."""
        validate_density_matrix(self.matrix, tolerances)
        return self


def validate_density_matrix(matrix: ComplexMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
    """Check shape, Hermiticity, trace and positivity; report offending indices."""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise StateValidationError(f"density matrix must be square, got shape {matrix.shape}")
    qubit_count(matrix.shape[0])
    if not np.all(np.isfinite(matrix)):
        row, col = np.argwhere(~np.isfinite(matrix))[0]
        raise StateValidationError(f"non-finite entry at row {row}, column {col}")

    deviation = np.abs(matrix - matrix.conj().T)
    worst = float(deviation.max())
    if worst > tolerances.herm:
        row, col = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
        raise StateValidationError(
            f"matrix is not Hermitian: |rho[{row},{col}] - conj(rho[{col},{row}])| = {worst:.3e}"
        )

    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > tolerances.trace:
        raise StateValidationError(f"trace is {trace.real:.12g}{trace.imag:+.3e}j, expected 1")

    lowest = float(np.linalg.eigvalsh(matrix)[0])
    if lowest < -tolerances.psd:
        raise StateValidationError(f"matrix is not positive semidefinite: min eigenvalue {lowest:.3e}")
    _LOGGER.debug("Validated %dx%d density matrix", matrix.shape[0], matrix.shape[1])


@dataclass(frozen=True, slots=True)
class Bipartition:
    """Cut of the qubits into side A and its complement, with qubit 0 in A."""

    n_qubits: int
    side_a: frozenset[int]

    def __post_init__(self) -> None:
        if self.n_qubits < 2:
            raise DimensionMismatchError("a bipartition needs at least two qubits")
        if not 1 <= len(self.side_a) <= self.n_qubits - 1:
            raise StateValidationError(f"side A must be a proper nonempty subset, got {sorted(self.side_a)}")
        if any(q < 0 or q >= self.n_qubits for q in self.side_a):
            raise StateValidationError(f"qubit index out of range in {sorted(self.side_a)}")
        if 0 not in self.side_a:
            raise StateValidationError("canonical bipartitions keep qubit 0 on side A")

    @classmethod
    def canonical(cls, n_qubits: int, qubits: Iterable[int]) -> "Bipartition":
        """Build the canonical cut, replacing side A by its complement when needed."""
        side = frozenset(qubits)
        if 0 not in side:
            side = frozenset(range(n_qubits)) - side
        return cls(n_qubits, side)

    @classmethod
    def from_mask(cls, n_qubits: int, mask: int) -> "Bipartition":
        """Bit i of ``mask`` set means qubit i is on side A."""
        return cls.canonical(n_qubits, (q for q in range(n_qubits) if mask >> q & 1))

    @classmethod
    def all_canonical(cls, n_qubits: int) -> Iterator["Bipartition"]:
        """Yield the 2^(N-1) - 1 canonical cuts in increasing mask order."""
        full = (1 << n_qubits) - 1
        for mask in range(1, full, 2):
            yield cls.from_mask(n_qubits, mask)

    @property
    def mask(self) -> int:
        return sum(1 << q for q in self.side_a)

    @property
    def side_b(self) -> frozenset[int]:
        return frozenset(range(self.n_qubits)) - self.side_a

    def label(self) -> str:
        return f"{sorted(self.side_a)}|{sorted(self.side_b)}"
