"""Dense qubit algebra: states, Pauli observables, partial transposes."""

from .algebra import (
    IDENTITY,
    PAULIS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    MeasurementOutcome,
    apply_local_unitaries,
    correlation_tensor,
    expectation,
    kron,
    max_eigenvalue,
    measure_qubit,
    min_eigenvalue,
    overlap,
    partial_trace,
    partial_transpose,
    pauli_observable,
)
from .ghz import ghz_basis_vector, ghz_state
from .states import Bipartition, ComplexMatrix, DensityMatrix, PureState, UnitVector3

__all__ = [
    "IDENTITY",
    "PAULIS",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "Bipartition",
    "ComplexMatrix",
    "DensityMatrix",
    "MeasurementOutcome",
    "PureState",
    "UnitVector3",
    "apply_local_unitaries",
    "correlation_tensor",
    "expectation",
    "ghz_basis_vector",
    "ghz_state",
    "kron",
    "max_eigenvalue",
    "measure_qubit",
    "min_eigenvalue",
    "overlap",
    "partial_trace",
    "partial_transpose",
    "pauli_observable",
]
