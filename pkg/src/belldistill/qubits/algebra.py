"""Dense linear algebra over the N-qubit Hilbert space."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from ..core.errors import DimensionMismatchError, StateValidationError, ValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from .states import Bipartition, ComplexMatrix, DensityMatrix, PureState, UnitVector3, qubit_count

_LOGGER = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
for _matrix in (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, PAULIS):
    _matrix.setflags(write=False)


def _as_matrix(value: DensityMatrix | ArrayLike) -> ComplexMatrix:
    if isinstance(value, DensityMatrix):
        return value.matrix
    return np.asarray(value, dtype=np.complex128)


def kron(factors: Sequence[ArrayLike]) -> ComplexMatrix:
    """Tensor product with ``factors[0]`` as the leftmost (most significant) factor."""
    if not factors:
        raise ValidationError("kron needs at least one factor")
    matrices = [np.asarray(f, dtype=np.complex128) for f in factors]
    for index, matrix in enumerate(matrices):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"factor {index} is not square: shape {matrix.shape}")
    return reduce(np.kron, matrices)


def pauli_observable(direction: UnitVector3 | ArrayLike) -> ComplexMatrix:
    """Return sigma(n) = n_x sigma_x + n_y sigma_y + n_z sigma_z."""
    if not isinstance(direction, UnitVector3):
        direction = UnitVector3.from_array(direction)
    return np.tensordot(direction.as_array(), PAULIS, axes=1)


def check_hermitian(h: ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ComplexMatrix:
    matrix = np.asarray(h, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {matrix.shape}")
    deviation = float(np.abs(matrix - matrix.conj().T).max())
    if deviation > tolerances.herm:
        raise ValidationError(f"matrix is not Hermitian (max deviation {deviation:.3e})")
    return matrix


def min_eigenvalue(h: DensityMatrix | ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    matrix = check_hermitian(_as_matrix(h), tolerances)
    lowest = scipy.linalg.eigh(matrix, eigvals_only=True, subset_by_index=[0, 0])
    return float(lowest[0])


def max_eigenvalue(h: DensityMatrix | ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    matrix = check_hermitian(_as_matrix(h), tolerances)
    top = matrix.shape[0] - 1
    highest = scipy.linalg.eigh(matrix, eigvals_only=True, subset_by_index=[top, top])
    return float(highest[0])


def partial_transpose(rho: DensityMatrix | ArrayLike, cut: Bipartition) -> ComplexMatrix:
    """Transpose the indices of every qubit on side A of ``cut``."""
    matrix = _as_matrix(rho)
    n_qubits = qubit_count(matrix.shape[0])
    if cut.n_qubits != n_qubits:
        raise DimensionMismatchError(
            f"cut is for {cut.n_qubits} qubits but the state has {n_qubits}"
        )
    tensor = matrix.reshape((2,) * (2 * n_qubits))
    axes = list(range(2 * n_qubits))
    for qubit in cut.side_a:
        axes[qubit], axes[n_qubits + qubit] = axes[n_qubits + qubit], axes[qubit]
    return tensor.transpose(axes).reshape(matrix.shape)


def _split_qubit(matrix: ComplexMatrix, k: int) -> NDArray[np.complex128]:
    """Reshape to (2, rest, 2, rest) with qubit k's row and column indices first."""
    n_qubits = qubit_count(matrix.shape[0])
    tensor = matrix.reshape((2,) * (2 * n_qubits))
    rows = [k] + [q for q in range(n_qubits) if q != k]
    cols = [n_qubits + q for q in rows]
    rest = 2 ** (n_qubits - 1)
    return tensor.transpose(rows + cols).reshape(2, rest, 2, rest)


def partial_trace(rho: DensityMatrix | ArrayLike, k: int) -> ComplexMatrix:
    """Trace out qubit k; the remaining qubits keep their relative order."""
    matrix = _as_matrix(rho)
    n_qubits = qubit_count(matrix.shape[0])
    if n_qubits < 2:
        raise DimensionMismatchError("cannot trace out the only qubit")
    if not 0 <= k < n_qubits:
        raise ValidationError(f"qubit index {k} out of range for {n_qubits} qubits")
    return np.einsum("axay->xy", _split_qubit(matrix, k))


@dataclass(frozen=True, slots=True)
class MeasurementOutcome:
    """One branch of a projective qubit measurement."""

    sign: int
    probability: float
    state: DensityMatrix | None


def conditional_operator(
    rho: DensityMatrix | ArrayLike, k: int, projector: ArrayLike
) -> ComplexMatrix:
    """Return Tr_k[(P on qubit k) rho], the unnormalized post-measurement state."""
    blocks = _split_qubit(_as_matrix(rho), k)
    return np.einsum("ba,axby->xy", np.asarray(projector), blocks)


def measure_qubit(
    rho: DensityMatrix,
    k: int,
    direction: UnitVector3 | ArrayLike,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[MeasurementOutcome, MeasurementOutcome]:
    """Measure sigma(m) on qubit k and trace it out.

    Outcomes are ordered (+1, -1). A branch whose probability is at most
    ``tolerances.prob`` carries no state.
    """
    n_qubits = rho.n_qubits
    if n_qubits < 2:
        raise DimensionMismatchError("measuring needs at least two qubits")
    if not 0 <= k < n_qubits:
        raise ValidationError(f"qubit index {k} out of range for {n_qubits} qubits")
    observable = pauli_observable(direction)

    outcomes = []
    for sign in (1, -1):
        projector = (IDENTITY + sign * observable) / 2
        unnormalized = conditional_operator(rho, k, projector)
        probability = float(np.trace(unnormalized).real)
        if probability <= tolerances.prob:
            _LOGGER.debug("Outcome %+d on qubit %d has negligible probability", sign, k)
            outcomes.append(MeasurementOutcome(sign, max(probability, 0.0), None))
            continue
        conditional = unnormalized / probability
        conditional = (conditional + conditional.conj().T) / 2
        outcomes.append(MeasurementOutcome(sign, probability, DensityMatrix.unchecked(conditional)))
    return outcomes[0], outcomes[1]


def overlap(rho: DensityMatrix, psi: PureState) -> float:
    """Return <psi|rho|psi>."""
    if rho.dim != psi.dim:
        raise DimensionMismatchError(f"state dimension {rho.dim} vs vector dimension {psi.dim}")
    return float(np.vdot(psi.amplitudes, rho.matrix @ psi.amplitudes).real)


def expectation(rho: DensityMatrix, operator: ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Return Re Tr(rho O), refusing a non-negligible imaginary part."""
    matrix = np.asarray(operator, dtype=np.complex128)
    if matrix.shape != rho.matrix.shape:
        raise DimensionMismatchError(f"operator shape {matrix.shape} vs state shape {rho.matrix.shape}")
    value = complex(np.einsum("ij,ji->", rho.matrix, matrix))
    if abs(value.imag) > tolerances.eig:
        raise StateValidationError(f"expectation value has imaginary part {value.imag:.3e}")
    return value.real


def correlation_tensor(rho: DensityMatrix | ArrayLike) -> NDArray[np.float64]:
    """Return T[a_0, ..., a_{N-1}] = Tr(rho sigma_{a_0} x ... x sigma_{a_{N-1}}).

    Axis k runs over (x, y, z) for qubit k. Any two-setting correlation
    functional is a multilinear contraction of this tensor with the
    measurement directions.
    """
    matrix = _as_matrix(rho)
    n_qubits = qubit_count(matrix.shape[0])
    tensor: NDArray[np.complex128] = matrix.reshape((2,) * (2 * n_qubits))
    for remaining in range(n_qubits, 0, -1):
        # row axis 0 and column axis `remaining` belong to the next qubit
        tensor = np.tensordot(tensor, PAULIS, axes=([0, remaining], [2, 1]))
    return np.ascontiguousarray(tensor.real)


def apply_local_unitaries(rho: DensityMatrix, unitaries: Sequence[ArrayLike]) -> DensityMatrix:
    """Conjugate rho by U_0 x ... x U_{N-1}."""
    if len(unitaries) != rho.n_qubits:
        raise DimensionMismatchError(f"need {rho.n_qubits} unitaries, got {len(unitaries)}")
    total = kron(unitaries)
    rotated = total @ rho.matrix @ total.conj().T
    return DensityMatrix.unchecked((rotated + rotated.conj().T) / 2)
