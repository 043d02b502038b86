"""Measurement reduction of an N-qubit MBK violation to N-1 qubits.

Measuring qubit k of rho along m with outcome s leaves a conditional state on
the remaining qubits. Writing a = (n + n')/2 and b = (n - n')/2 for the two
directions of qubit k, the MBK operator splits as

    B_N = sigma(a) (x) M_{N-1} + sigma(b) (x) M'_{N-1}

(qubit k in its own slot, the rest in order), so the conditional functional
is beta_+ M + beta_- M' with beta_+ = s (m . a) and beta_- = s (m . b). Its
local-variable bound is |beta_+| + |beta_-|, and the best of the four vertices
+-M, +-M' is at least the normalized combination. Measuring along a/|a| or
b/|b| already reaches v/sqrt(2); the search below only improves on that.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from ..bell.classical import DEFAULT_EXHAUSTIVE_LIMIT, classical_bound
from ..bell.family import BellFamily, mbk_coefficient_pair
from ..bell.operators import BellOperator, bell_value, mbk_operator
from ..bell.settings import MeasurementSettings
from ..core.concurrency import parallel_map
from ..core.errors import DimensionMismatchError, ReductionGuaranteeError, ValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..qubits.algebra import PAULIS, conditional_operator, expectation, measure_qubit, partial_trace
from ..qubits.states import DensityMatrix, UnitVector3

_LOGGER = logging.getLogger(__name__)

DEFAULT_SEARCH_STARTS = 64

# (sign, use M') for the four vertices +M, -M, +M', -M'
_VERTICES: tuple[tuple[int, bool], ...] = ((1, False), (-1, False), (1, True), (-1, True))
_VERTEX_LABELS = {(1, False): "+M", (-1, False): "-M", (1, True): "+M'", (-1, True): "-M'"}


@dataclass(frozen=True, slots=True, eq=False)
class ReductionResult:
    """One measurement step: the conditional state and its certified operator."""

    qubit: int
    direction: UnitVector3
    outcome: int
    probability: float
    state: DensityMatrix
    operator: BellOperator
    input_value: float
    achieved_value: float
    vertex: str
    beta_plus: float
    beta_minus: float
    normalization: float
    combination_value: float

    @property
    def ratio(self) -> float:
        """achieved / input; at least 1/sqrt(2) whenever the input violates."""
        if self.input_value == 0.0:
            return math.inf if self.achieved_value > 0 else 1.0
        return self.achieved_value / self.input_value

    @property
    def guaranteed_value(self) -> float:
        return self.input_value / math.sqrt(2)


class _ConditionalValues:
    """Closed-form conditional values of M and M' for any measurement direction.

    With r the Bloch vector of qubit k, g0(V) = Tr(rho_rest V) and
    G_alpha(V) = Tr(rho sigma_alpha (x) V), outcome s has probability
    (1 + s m.r)/2 and conditional value (g0 + s m.G) / (1 + s m.r).
    """

    def __init__(
        self,
        rho: DensityMatrix,
        qubit: int,
        primary: NDArray[np.complex128],
        swapped: NDArray[np.complex128],
        tolerances: Tolerances,
    ) -> None:
        reduced = partial_trace(rho, qubit)
        weighted = [conditional_operator(rho, qubit, pauli) for pauli in PAULIS]
        self._bloch = np.array([float(np.trace(block).real) for block in weighted])
        self._base = np.array([_trace_product(reduced, primary), _trace_product(reduced, swapped)])
        self._gamma = np.array(
            [[_trace_product(block, operator) for block in weighted] for operator in (primary, swapped)]
        )
        self._tolerances = tolerances

    def table(self, direction: NDArray[np.float64]) -> list[tuple[int, float, float, float]]:
        """(s, p_s, <M>_s, <M'>_s) for outcomes with non-negligible probability."""
        rows = []
        for sign in (1, -1):
            probability = 0.5 * (1.0 + sign * float(direction @ self._bloch))
            if probability <= self._tolerances.prob:
                continue
            weighted = 0.5 * (self._base + sign * (self._gamma @ direction))
            rows.append((sign, probability, weighted[0] / probability, weighted[1] / probability))
        return rows

    def best(self, direction: NDArray[np.float64]) -> tuple[float, int, tuple[int, bool]]:
        """Best vertex value over outcomes; (-inf, 0, ...) if no outcome is possible."""
        best: tuple[float, int, tuple[int, bool]] = (-math.inf, 0, _VERTICES[0])
        for sign, _, primary, swapped in self.table(direction):
            for vertex in _VERTICES:
                vertex_sign, use_swapped = vertex
                value = vertex_sign * (swapped if use_swapped else primary)
                if value > best[0]:
                    best = (value, sign, vertex)
        return best


def _trace_product(left: NDArray[np.complex128], right: NDArray[np.complex128]) -> float:
    return float(np.einsum("ij,ji->", left, right).real)


def _direction(theta: float, phi: float) -> NDArray[np.float64]:
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def _angles(direction: NDArray[np.float64]) -> NDArray[np.float64]:
    x, y, z = direction
    return np.array([math.acos(max(-1.0, min(1.0, z))), math.atan2(y, x)])


def _closed_form_candidates(first: NDArray[np.float64], second: NDArray[np.float64]) -> list[NDArray[np.float64]]:
    candidates = [first, second]
    for vector in (first + second, first - second):
        norm = float(np.linalg.norm(vector))
        if norm > DEFAULT_TOLERANCES.norm:
            candidates.append(vector / norm)
    return candidates


def _search_direction(
    values: _ConditionalValues,
    candidates: list[NDArray[np.float64]],
    *,
    search_starts: int,
    seed: int,
    max_workers: int,
    tolerances: Tolerances,
) -> tuple[NDArray[np.float64], float]:
    """Highest best-vertex value over closed-form candidates and refined random starts."""
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((search_starts, 3))
    starts = list(candidates) + [row / np.linalg.norm(row) for row in raw]

    def objective(angles: NDArray[np.float64]) -> float:
        value = values.best(_direction(*angles))[0]
        return -value if math.isfinite(value) else math.inf

    def refine(start: NDArray[np.float64]) -> tuple[NDArray[np.float64], float]:
        initial = values.best(start)[0]
        result = minimize(
            objective,
            _angles(start),
            method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": tolerances.opt, "maxiter": 2000},
        )
        refined = _direction(*result.x)
        refined_value = values.best(refined)[0]
        if refined_value >= initial:
            return refined, refined_value
        return start, initial

    outcomes = parallel_map(refine, starts, max_workers=max_workers)
    # ties go to the earliest start, so closed-form candidates win them
    best_index = max(range(len(outcomes)), key=lambda i: (outcomes[i][1], -i))
    return outcomes[best_index]


def _vertex_settings(rest: MeasurementSettings, vertex: tuple[int, bool]) -> MeasurementSettings:
    sign, use_swapped = vertex
    settings = rest.swapped() if use_swapped else rest
    return settings.negated(0) if sign < 0 else settings


def _combination_bound(
    beta_plus: float, beta_minus: float, n_qubits: int, exhaustive_limit: int
) -> float:
    analytic = abs(beta_plus) + abs(beta_minus)
    envelope = math.hypot(beta_plus, beta_minus)
    if n_qubits > exhaustive_limit:
        _LOGGER.debug(
            "Combination bound |b+| + |b-| = %.12g (Euclidean envelope %.12g)", analytic, envelope
        )
        return analytic
    primary, swapped = mbk_coefficient_pair(n_qubits)
    certified = classical_bound(beta_plus * primary + beta_minus * swapped, exhaustive_limit=exhaustive_limit)
    if abs(certified - analytic) > 1e-9:
        _LOGGER.warning(
            "Certified combination bound %.12g differs from |b+| + |b-| = %.12g", certified, analytic
        )
    _LOGGER.debug("Combination bound %.12g certified (Euclidean envelope %.12g)", certified, envelope)
    return certified


def reduce_by_measurement(
    rho: DensityMatrix,
    b: BellOperator,
    k: int,
    *,
    search_starts: int = DEFAULT_SEARCH_STARTS,
    seed: int = 0,
    max_workers: int = 1,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ReductionResult:
    """Measure qubit k so that the conditional (N-1)-qubit state keeps a violation.

    Raises ReductionGuaranteeError if the achieved value falls below
    Tr(rho B_N)/sqrt(2) - tol_opt.
    """
    n_qubits = rho.n_qubits
    if n_qubits < 3:
        raise DimensionMismatchError(f"reduction needs at least three qubits, got {n_qubits}")
    if b.family is not BellFamily.MBK or b.auxiliary is None:
        raise ValidationError("reduction requires an MBK operator with its auxiliary M'")
    if b.n_qubits != n_qubits:
        raise DimensionMismatchError(f"operator is on {b.n_qubits} qubits, state on {n_qubits}")
    if not 0 <= k < n_qubits:
        raise ValidationError(f"qubit index {k} out of range for {n_qubits} qubits")
    if search_starts < 0:
        raise ValidationError("search_starts must be non-negative")

    input_value = bell_value(rho, b, tolerances)
    first, second = b.settings.directions[k]
    half_sum = (first + second) / 2
    half_difference = (first - second) / 2
    rest = b.settings.without(k)
    reduced_operator = mbk_operator(rest)
    swapped_matrix = mbk_operator(rest.swapped()).matrix
    values = _ConditionalValues(rho, k, reduced_operator.matrix, swapped_matrix, tolerances)

    direction, predicted = _search_direction(
        values,
        _closed_form_candidates(first, second),
        search_starts=search_starts,
        seed=seed,
        max_workers=max_workers,
        tolerances=tolerances,
    )
    _, outcome, vertex = values.best(direction)
    _LOGGER.debug(
        "Qubit %d: direction %s, outcome %+d, vertex %s, predicted value %.12g",
        k, np.array2string(direction, precision=6), outcome, _VERTEX_LABELS[vertex], predicted,
    )

    branches = {item.sign: item for item in measure_qubit(rho, k, direction, tolerances)}
    branch = branches[outcome]
    if branch.state is None:
        raise ReductionGuaranteeError(f"selected outcome {outcome:+d} on qubit {k} has negligible probability")
    operator = mbk_operator(_vertex_settings(rest, vertex))
    achieved = expectation(branch.state, operator.matrix, tolerances)

    beta_plus = outcome * float(direction @ half_sum)
    beta_minus = outcome * float(direction @ half_difference)
    normalization = _combination_bound(beta_plus, beta_minus, n_qubits - 1, exhaustive_limit)
    combination = 0.0
    if normalization > tolerances.grad:
        combination = (
            beta_plus * expectation(branch.state, reduced_operator.matrix, tolerances)
            + beta_minus * expectation(branch.state, swapped_matrix, tolerances)
        ) / normalization

    required = input_value / math.sqrt(2) - tolerances.opt
    if achieved < required:
        raise ReductionGuaranteeError(
            f"reduction of qubit {k} reached {achieved:.12g}, below the guaranteed {required:.12g}"
        )
    _LOGGER.info(
        "Reduced qubit %d: %.12g -> %.12g (ratio %.6f, outcome %+d, p = %.6g)",
        k, input_value, achieved, achieved / input_value if input_value else math.nan,
        outcome, branch.probability,
    )
    return ReductionResult(
        qubit=k,
        direction=UnitVector3.from_array(direction, normalize=True),
        outcome=outcome,
        probability=branch.probability,
        state=branch.state,
        operator=operator,
        input_value=input_value,
        achieved_value=achieved,
        vertex=_VERTEX_LABELS[vertex],
        beta_plus=beta_plus,
        beta_minus=beta_minus,
        normalization=normalization,
        combination_value=combination,
    )


def reduce_chain(
    rho: DensityMatrix,
    b: BellOperator,
    qubits: Sequence[int],
    *,
    search_starts: int = DEFAULT_SEARCH_STARTS,
    seed: int = 0,
    max_workers: int = 1,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[ReductionResult]:
    """Apply reduce_by_measurement repeatedly; indices refer to the current state."""
    steps: list[ReductionResult] = []
    state, operator = rho, b
    for step, qubit in enumerate(qubits):
        result = reduce_by_measurement(
            state,
            operator,
            qubit,
            search_starts=search_starts,
            seed=seed + step,
            max_workers=max_workers,
            exhaustive_limit=exhaustive_limit,
            tolerances=tolerances,
        )
        steps.append(result)
        state, operator = result.state, result.operator
    return steps
