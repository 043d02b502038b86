"""Depolarization onto the GHZ-diagonal (Dur-Cirac) family.

Basis vectors |Psi_j^+-> = (|0, j> +- |1, complement(j)>)/sqrt(2) with j an
(N-1)-bit integer, qubit 1 most significant. The channel keeps lambda_0^+-
and replaces each pair j != 0 by the average lambda_j on both signs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..core.errors import DimensionMismatchError, StateValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..qubits.ghz import ghz_pair_indices
from ..qubits.states import Bipartition, DensityMatrix

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class GHZDiagonalState:
    """Parameters lambda_0^+, lambda_0^- and lambda_j (j = 1 .. 2^(N-1) - 1)."""

    n_qubits: int
    lambda_0_plus: float
    lambda_0_minus: float
    lambdas: NDArray[np.float64]

    def __post_init__(self) -> None:
        expected = 2 ** (self.n_qubits - 1) - 1
        values = np.array(self.lambdas, dtype=float, copy=True).reshape(-1)
        if values.shape[0] != expected:
            raise DimensionMismatchError(f"expected {expected} lambda_j values, got {values.shape[0]}")
        values.setflags(write=False)
        object.__setattr__(self, "lambdas", values)

    def validate(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> "GHZDiagonalState":
        lowest = min(self.lambda_0_plus, self.lambda_0_minus, float(self.lambdas.min(initial=np.inf)))
        if lowest < -tolerances.psd:
            raise StateValidationError(f"negative GHZ-diagonal weight {lowest:.3e}")
        total = self.lambda_0_plus + self.lambda_0_minus + 2 * float(self.lambdas.sum())
        if abs(total - 1.0) > tolerances.trace:
            raise StateValidationError(f"GHZ-diagonal weights sum to {total!r}")
        return self

    def lambda_j(self, j: int) -> float:
        """lambda_j for an (N-1)-bit integer j != 0."""
        if not 1 <= j < 2 ** (self.n_qubits - 1):
            raise StateValidationError(f"j={j} outside 1..{2 ** (self.n_qubits - 1) - 1}")
        return float(self.lambdas[j - 1])

    def to_density_matrix(self) -> DensityMatrix:
        dim = 2**self.n_qubits
        matrix = np.zeros((dim, dim), dtype=np.complex128)
        low, high = ghz_pair_indices(self.n_qubits, 0)
        matrix[low, low] = matrix[high, high] = (self.lambda_0_plus + self.lambda_0_minus) / 2
        matrix[low, high] = matrix[high, low] = (self.lambda_0_plus - self.lambda_0_minus) / 2
        for j, weight in enumerate(self.lambdas, start=1):
            low, high = ghz_pair_indices(self.n_qubits, j)
            matrix[low, low] = matrix[high, high] = weight
        return DensityMatrix.unchecked(matrix)

    @staticmethod
    def cut_index(cut: Bipartition) -> int:
        """j whose bits mark the qubits on the far side from qubit 0."""
        rest = cut.n_qubits - 1
        return sum(1 << (rest - q) for q in cut.side_b)

    def cut_min_eigenvalue(self, cut: Bipartition) -> float:
        """Smallest eigenvalue of the partial transpose across ``cut``.

        The GHZ coherence (lambda_0^+ - lambda_0^-)/2 moves into the 2x2
        block spanned by |0, j_A> and |1, complement(j_A)>, whose diagonal is
        lambda_{j_A}; every other entry stays on the non-negative diagonal.
        """
        if cut.n_qubits != self.n_qubits:
            raise DimensionMismatchError(f"cut is for {cut.n_qubits} qubits, state has {self.n_qubits}")
        coherence = abs(self.lambda_0_plus - self.lambda_0_minus) / 2
        block = self.lambda_j(self.cut_index(cut)) - coherence
        diagonal = min(
            (self.lambda_0_plus + self.lambda_0_minus) / 2,
            float(self.lambdas.min(initial=np.inf)),
        )
        return min(block, diagonal)

    def cut_margin(self, cut: Bipartition) -> float:
        """|lambda_0^+ - lambda_0^-| - 2 lambda_{j_A}; positive means NPPT."""
        return abs(self.lambda_0_plus - self.lambda_0_minus) - 2 * self.lambda_j(self.cut_index(cut))

    def is_fully_distillable(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
        """Every bipartite cut NPPT, which for this family means full distillability."""
        return all(self.cut_margin(cut) > tolerances.psd for cut in Bipartition.all_canonical(self.n_qubits))


def ghz_diagonal_parameters(rho: DensityMatrix) -> GHZDiagonalState:
    """Read lambda_0^+- and the sign-averaged lambda_j off the GHZ-basis diagonal."""
    n_qubits = rho.n_qubits
    if n_qubits < 2:
        raise DimensionMismatchError("GHZ-diagonal form needs at least two qubits")
    matrix = rho.matrix
    pairs = 2 ** (n_qubits - 1)
    plus = np.empty(pairs)
    minus = np.empty(pairs)
    for j in range(pairs):
        low, high = ghz_pair_indices(n_qubits, j)
        mean = (matrix[low, low].real + matrix[high, high].real) / 2
        coherence = matrix[low, high].real
        plus[j] = mean + coherence
        minus[j] = mean - coherence
    return GHZDiagonalState(
        n_qubits=n_qubits,
        lambda_0_plus=float(plus[0]),
        lambda_0_minus=float(minus[0]),
        lambdas=(plus[1:] + minus[1:]) / 2,
    )


def depolarize_ghz_diagonal(
    rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> tuple[GHZDiagonalState, DensityMatrix]:
    """Project rho onto the GHZ-diagonal family, keeping lambda_0^+- exactly."""
    parameters = ghz_diagonal_parameters(rho).validate(tolerances)
    output = parameters.to_density_matrix().validated(tolerances)
    _LOGGER.debug(
        "Depolarized %d-qubit state: lambda_0^+ = %.12g, lambda_0^- = %.12g",
        rho.n_qubits, parameters.lambda_0_plus, parameters.lambda_0_minus,
    )
    return parameters, output
