"""Bell operators B_N = sum_x c(x) O_0^{x_0} x ... x O_{N-1}^{x_{N-1}}."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import DimensionMismatchError, SpecValidationError, StateValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..qubits.algebra import correlation_tensor
from ..qubits.states import ComplexMatrix, DensityMatrix
from .family import BellFamily, WWZBSpec, mbk_coefficient_pair
from .settings import MeasurementSettings

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class BellOperator:
    """Hermitian, traceless Bell operator together with its provenance."""

    matrix: ComplexMatrix
    family: BellFamily
    settings: MeasurementSettings
    coefficients: NDArray[np.float64]
    spec: WWZBSpec | None = None
    auxiliary: ComplexMatrix | None = None

    @property
    def n_qubits(self) -> int:
        return self.settings.n_qubits

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def check(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "BellOperator":
        """Assert Hermiticity and tracelessness."""
        deviation = float(np.abs(self.matrix - self.matrix.conj().T).max())
        if deviation > tolerances.herm:
            raise SpecValidationError(f"Bell operator is not Hermitian (deviation {deviation:.3e})")
        trace = abs(complex(np.trace(self.matrix)))
        if trace > tolerances.eig:
            raise SpecValidationError(f"Bell operator is not traceless (|trace| = {trace:.3e})")
        return self


def _readonly(matrix: ComplexMatrix) -> ComplexMatrix:
    matrix.setflags(write=False)
    return matrix


def _mbk_pair(settings: MeasurementSettings) -> tuple[ComplexMatrix, ComplexMatrix]:
    observables = settings.observables()
    first, second = observables[-1]
    primary, swapped = first, second
    for first, second in reversed(observables[:-1]):
        total = first + second
        difference = first - second
        primary, swapped = (
            (np.kron(total, primary) + np.kron(difference, swapped)) / 2,
            (np.kron(total, swapped) - np.kron(difference, primary)) / 2,
        )
    return primary, swapped


def mbk_operator(settings: MeasurementSettings, n_qubits: int | None = None) -> BellOperator:
    """Build M_N by the MBK recursion; M'_N is kept as ``auxiliary``.

    M_N = 1/2 [(sigma(n) + sigma(n')) x M_{N-1} + (sigma(n) - sigma(n')) x M'_{N-1}]
    where the new factor is the leftmost qubit and M_1 = sigma(n) sits on
    qubit N-1. M'_N interchanges every n_i with n'_i.
    """
    if n_qubits is not None and n_qubits != settings.n_qubits:
        raise DimensionMismatchError(f"settings cover {settings.n_qubits} qubits, expected {n_qubits}")
    primary, swapped = _mbk_pair(settings)
    coefficients, _ = mbk_coefficient_pair(settings.n_qubits)
    _LOGGER.debug("Built MBK operator on %d qubit(s)", settings.n_qubits)
    return BellOperator(
        matrix=_readonly(primary),
        family=BellFamily.MBK,
        settings=settings,
        coefficients=coefficients,
        spec=None,
        auxiliary=_readonly(swapped),
    )


def assemble_operator(coefficients: NDArray[np.float64], settings: MeasurementSettings) -> ComplexMatrix:
    """Explicit coefficient-weighted sum of tensor products of observables."""
    if coefficients.ndim != settings.n_qubits:
        raise DimensionMismatchError(
            f"coefficient table has {coefficients.ndim} axes but settings cover {settings.n_qubits} qubits"
        )
    observables = settings.observables()

    def build(table: NDArray[np.float64], qubit: int) -> ComplexMatrix | None:
        first, second = observables[qubit]
        if qubit == len(observables) - 1:
            if not np.any(table):
                return None
            return table[0] * first + table[1] * second
        total: ComplexMatrix | None = None
        for index, observable in enumerate((first, second)):
            branch = build(table[index], qubit + 1)
            if branch is None:
                continue
            term = np.kron(observable, branch)
            total = term if total is None else total + term
        return total

    dim = 2**settings.n_qubits
    result = build(np.asarray(coefficients, dtype=float), 0)
    return np.zeros((dim, dim), dtype=np.complex128) if result is None else result


def wwzb_operator(
    spec: WWZBSpec,
    settings: MeasurementSettings,
    *,
    exhaustive_limit: int = 4,
) -> BellOperator:
    """Build B_N for a WWZB family member; certified exhaustively when N is small."""
    if spec.n_qubits != settings.n_qubits:
        raise DimensionMismatchError(
            f"family member has N={spec.n_qubits} but settings cover {settings.n_qubits} qubits"
        )
    if spec.n_qubits <= exhaustive_limit:
        from .classical import certify_spec

        certify_spec(spec, exhaustive_limit=exhaustive_limit)
    coefficients = spec.coefficients
    matrix = assemble_operator(coefficients, settings)
    _LOGGER.debug("Built WWZB operator '%s' on %d qubit(s)", spec.name, spec.n_qubits)
    return BellOperator(
        matrix=_readonly(matrix),
        family=BellFamily.WWZB,
        settings=settings,
        coefficients=coefficients,
        spec=spec,
    )


def bell_value(rho: DensityMatrix, operator: BellOperator, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Return Tr(rho B)."""
    if rho.dim != operator.dim:
        raise DimensionMismatchError(f"state has dimension {rho.dim}, operator {operator.dim}")
    value = complex(np.einsum("ij,ji->", rho.matrix, operator.matrix))
    if abs(value.imag) > tolerances.eig:
        raise StateValidationError(f"Bell value has imaginary part {value.imag:.3e}")
    return value.real


def correlators_from_tensor(
    tensor: NDArray[np.float64], settings: MeasurementSettings
) -> NDArray[np.float64]:
    """E(x) = <O_0^{x_0} x ... x O_{N-1}^{x_{N-1}}> from a correlation tensor."""
    if tensor.ndim != settings.n_qubits:
        raise DimensionMismatchError(
            f"correlation tensor has {tensor.ndim} axes, settings cover {settings.n_qubits} qubits"
        )
    result = tensor
    for qubit in range(settings.n_qubits):
        result = np.tensordot(result, settings.directions[qubit], axes=([0], [1]))
    return result


def correlators(rho: DensityMatrix, settings: MeasurementSettings) -> NDArray[np.float64]:
    """Table of correlation expectation values E(j_1, ..., j_N)."""
    return correlators_from_tensor(correlation_tensor(rho), settings)


def functional_value(coefficients: ArrayLike, table: NDArray[np.float64]) -> float:
    """I_N(c) = sum_x c(x) E(x)."""
    return float(np.sum(np.asarray(coefficients, dtype=float) * table))
