"""Local-variable bounds by exhaustive enumeration of deterministic strategies."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ClassicalBoundLimitError, SpecValidationError
from .family import WWZBSpec, coefficient_tensor
from .operators import BellOperator

_LOGGER = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_LIMIT = 4
_CERTIFICATE_TOL = 1e-12

CoefficientSource = Union[WWZBSpec, BellOperator, ArrayLike]


@dataclass(frozen=True, slots=True)
class LVStrategy:
    """Deterministic outcomes a_i^1, a_i^2 in {-1, +1} for every qubit.

    Bitmask encoding: bit 2i set means a_i^1 = -1, bit 2i+1 set means a_i^2 = -1.
    """

    outcomes: tuple[tuple[int, int], ...]

    @classmethod
    def from_mask(cls, n_qubits: int, mask: int) -> "LVStrategy":
        return cls(
            tuple(
                (-1 if mask >> (2 * i) & 1 else 1, -1 if mask >> (2 * i + 1) & 1 else 1)
                for i in range(n_qubits)
            )
        )

    @property
    def mask(self) -> int:
        value = 0
        for i, (first, second) in enumerate(self.outcomes):
            value |= (first < 0) << (2 * i) | (second < 0) << (2 * i + 1)
        return value


def _coefficients_of(source: CoefficientSource) -> NDArray[np.float64]:
    if isinstance(source, WWZBSpec):
        return source.coefficients
    if isinstance(source, BellOperator):
        return source.coefficients
    return coefficient_tensor(source)


def _strategy_signs(n_qubits: int) -> NDArray[np.float64]:
    """All 4^N strategies as a (4^N, N, 2) array of +/-1, row index = bitmask."""
    masks = np.arange(4**n_qubits, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(2 * n_qubits)) & 1
    return (1 - 2 * bits).reshape(-1, n_qubits, 2).astype(float)


def _strategy_values(coefficients: NDArray[np.float64]) -> NDArray[np.float64]:
    n_qubits = coefficients.ndim
    signs = _strategy_signs(n_qubits)
    values = np.broadcast_to(coefficients, (signs.shape[0],) + coefficients.shape)
    for qubit in range(n_qubits):
        # contract the leading remaining qubit axis with that qubit's outcome pair
        values = np.einsum("sa...,sa->s...", values, signs[:, qubit, :])
    return values


def classical_optimum(
    source: CoefficientSource,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> tuple[float, LVStrategy]:
    """Maximize sum_x c(x) prod_i a_i^{x_i} over all deterministic strategies."""
    coefficients = _coefficients_of(source)
    n_qubits = coefficients.ndim
    if n_qubits > exhaustive_limit:
        raise ClassicalBoundLimitError(
            f"exhaustive enumeration refused for N={n_qubits} (limit {exhaustive_limit})"
        )
    values = _strategy_values(coefficients)
    best = int(np.argmax(values))
    _LOGGER.debug("Enumerated %d strategies for N=%d, bound %.15g", values.shape[0], n_qubits, values[best])
    return float(values[best]), LVStrategy.from_mask(n_qubits, best)


def classical_bound(
    source: CoefficientSource,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> float:
    """Local-variable bound of a correlation functional."""
    value, _ = classical_optimum(source, exhaustive_limit=exhaustive_limit)
    return value


def certify_spec(spec: WWZBSpec, *, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> float:
    """Check that a family member's local-variable bound is exactly one."""
    bound = classical_bound(spec, exhaustive_limit=exhaustive_limit)
    if abs(bound - 1.0) > _CERTIFICATE_TOL:
        raise SpecValidationError(f"'{spec.name}' has classical bound {bound!r}, expected 1")
    return bound
