"""See-saw maximization of Tr(rho B) over measurement settings.

For fixed settings on every other direction, Tr(rho B) is an affine function
v . n of a single direction n, so each coordinate step is solved exactly by
n = v / |v|. All evaluations go through the correlation tensor of rho, which
keeps a sweep at O(N 3^N) instead of rebuilding 2^N x 2^N operators.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np
from numpy.typing import NDArray

from ..core.concurrency import parallel_map
from ..core.errors import DimensionMismatchError, ValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..qubits.algebra import correlation_tensor
from ..qubits.ghz import ghz_state
from ..qubits.states import DensityMatrix
from .family import BellFamily, WWZBSpec, mbk_coefficient_pair
from .operators import BellOperator, correlators_from_tensor, mbk_operator, wwzb_operator
from .settings import MeasurementSettings

_LOGGER = logging.getLogger(__name__)

DEFAULT_RESTARTS = 32
DEFAULT_MAX_SWEEPS = 500

FamilyChoice = Union[BellFamily, WWZBSpec]


@dataclass(frozen=True, slots=True)
class RestartOutcome:
    """Converged see-saw run from one random initialization."""

    index: int
    value: float
    directions: NDArray[np.float64]
    history: tuple[float, ...]
    sweeps: int
    degenerate_updates: int
    converged: bool


@dataclass(frozen=True, slots=True)
class OptimizationResult:
    """Best see-saw result over all restarts."""

    value: float
    settings: MeasurementSettings
    family: FamilyChoice
    restart_index: int
    history: tuple[float, ...]
    sweeps: int
    degenerate_updates: int
    restart_values: tuple[float, ...] = field(default_factory=tuple)

    def operator(self, exhaustive_limit: int = 4) -> BellOperator:
        """Bell operator at the optimized settings."""
        return build_operator(self.family, self.settings, exhaustive_limit=exhaustive_limit)


def family_coefficients(family: FamilyChoice, n_qubits: int) -> NDArray[np.float64]:
    if isinstance(family, WWZBSpec):
        if family.n_qubits != n_qubits:
            raise DimensionMismatchError(f"family member has N={family.n_qubits}, state has N={n_qubits}")
        return family.coefficients
    if family is BellFamily.MBK:
        return mbk_coefficient_pair(n_qubits)[0]
    raise ValidationError(f"a WWZB family member is required, got {family!r}")


def build_operator(
    family: FamilyChoice, settings: MeasurementSettings, *, exhaustive_limit: int = 4
) -> BellOperator:
    if isinstance(family, WWZBSpec):
        return wwzb_operator(family, settings, exhaustive_limit=exhaustive_limit)
    return mbk_operator(settings)


class SeeSawObjective:
    """Tr(rho B) as a multilinear function of the 2N directions."""

    def __init__(self, tensor: NDArray[np.float64], coefficients: NDArray[np.float64]) -> None:
        if tensor.ndim != coefficients.ndim:
            raise DimensionMismatchError("correlation tensor and coefficient table disagree on N")
        self._tensor = tensor
        self._coefficients = coefficients
        self._n_qubits = tensor.ndim

    def value(self, directions: NDArray[np.float64]) -> float:
        table = self._tensor
        for qubit in range(self._n_qubits):
            table = np.tensordot(table, directions[qubit], axes=([0], [1]))
        return float(np.sum(self._coefficients * table))

    def gradient(self, directions: NDArray[np.float64], qubit: int, setting: int) -> NDArray[np.float64]:
        """Vector v with Tr(rho B) = v . n + const in direction (qubit, setting)."""
        partial = self._tensor
        for index in range(self._n_qubits):
            matrix = np.eye(3) if index == qubit else directions[index]
            partial = np.tensordot(partial, matrix, axes=([0], [1]))
        weights = np.take(self._coefficients, setting, axis=qubit)
        free = np.moveaxis(partial, qubit, 0).reshape(3, -1)
        return free @ weights.reshape(-1)


def seesaw(
    objective: SeeSawObjective,
    initial: NDArray[np.float64],
    *,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    index: int = 0,
) -> RestartOutcome:
    """Coordinate ascent: qubit 0 to N-1, setting 1 then 2, until a sweep gains < tol_opt."""
    directions = np.array(initial, dtype=float, copy=True)
    n_qubits = directions.shape[0]
    current = objective.value(directions)
    history = [current]
    degenerate = 0
    converged = False
    sweeps = 0

    for sweeps in range(1, max_sweeps + 1):
        for qubit in range(n_qubits):
            for setting in (0, 1):
                gradient = objective.gradient(directions, qubit, setting)
                norm = float(np.linalg.norm(gradient))
                if norm <= tolerances.grad:
                    degenerate += 1
                    continue
                directions[qubit, setting] = gradient / norm
        updated = objective.value(directions)
        history.append(updated)
        if updated < current - tolerances.opt:
            _LOGGER.warning(
                "See-saw restart %d decreased from %.15g to %.15g at sweep %d",
                index, current, updated, sweeps,
            )
        gain = updated - current
        current = updated
        if gain < tolerances.opt:
            converged = True
            break

    if not converged:
        _LOGGER.warning("See-saw restart %d hit the sweep limit (%d)", index, max_sweeps)
    if degenerate:
        _LOGGER.debug("See-saw restart %d skipped %d degenerate update(s)", index, degenerate)
    return RestartOutcome(
        index=index,
        value=current,
        directions=directions,
        history=tuple(history),
        sweeps=sweeps,
        degenerate_updates=degenerate,
        converged=converged,
    )


def restart_generators(seed: int, restarts: int) -> list[np.random.Generator]:
    """Per-restart generators derived from one seed, independent of scheduling."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(restarts)]


def merge_restarts(outcomes: list[RestartOutcome]) -> RestartOutcome:
    """Max-reduction; ties go to the lowest restart index."""
    return max(sorted(outcomes, key=lambda item: item.index), key=lambda item: item.value)


def optimize_settings(
    rho: DensityMatrix,
    family: FamilyChoice = BellFamily.MBK,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    *,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    max_workers: int = 1,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> OptimizationResult:
    """Maximize Tr(rho B) over settings for a fixed family member."""
    if restarts < 1:
        raise ValidationError("restarts must be at least 1")
    n_qubits = rho.n_qubits
    objective = SeeSawObjective(correlation_tensor(rho), family_coefficients(family, n_qubits))
    generators = restart_generators(seed, restarts)
    _LOGGER.debug("Starting see-saw: N=%d, restarts=%d, seed=%d", n_qubits, restarts, seed)

    def run(index: int) -> RestartOutcome:
        initial = MeasurementSettings.random(n_qubits, generators[index]).directions
        return seesaw(objective, initial, max_sweeps=max_sweeps, tolerances=tolerances, index=index)

    outcomes = parallel_map(run, range(restarts), max_workers=max_workers)
    best = merge_restarts(outcomes)
    _LOGGER.info(
        "See-saw finished: best value %.12g from restart %d (%d sweep(s))",
        best.value, best.index, best.sweeps,
    )
    return OptimizationResult(
        value=best.value,
        settings=MeasurementSettings(best.directions),
        family=family,
        restart_index=best.index,
        history=best.history,
        sweeps=best.sweeps,
        degenerate_updates=best.degenerate_updates,
        restart_values=tuple(item.value for item in outcomes),
    )


def settings_value(rho: DensityMatrix, family: FamilyChoice, settings: MeasurementSettings) -> float:
    """Tr(rho B) for given settings, evaluated through correlators."""
    table = correlators_from_tensor(correlation_tensor(rho), settings)
    return float(np.sum(family_coefficients(family, rho.n_qubits) * table))


@lru_cache(maxsize=None)
def ghz_optimal_settings(n_qubits: int, restarts: int = DEFAULT_RESTARTS, seed: int = 0) -> MeasurementSettings:
    """MBK settings maximizing the GHZ violation, computed once per argument set."""
    if n_qubits < 2:
        raise DimensionMismatchError(f"MBK settings need at least two qubits, got {n_qubits}")
    result = optimize_settings(ghz_state(n_qubits).projector(), BellFamily.MBK, restarts, seed)
    _LOGGER.info("Cached ghz-optimal MBK settings for N=%d (value %.12g)", n_qubits, result.value)
    return result.settings
