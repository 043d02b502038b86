"""NPPT scan over every canonical bipartition."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..core.concurrency import parallel_map
from ..core.errors import DimensionMismatchError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..qubits.algebra import min_eigenvalue, partial_transpose
from ..qubits.states import Bipartition, DensityMatrix

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CutResult:
    """Smallest eigenvalue of the partial transpose across one cut."""

    cut: Bipartition
    min_eigenvalue: float
    nppt: bool

    @property
    def mask(self) -> int:
        return self.cut.mask


@dataclass(frozen=True, slots=True)
class PartitionScan:
    """Results for all 2^(N-1) - 1 canonical cuts, ordered by side-A bitmask."""

    n_qubits: int
    cuts: tuple[CutResult, ...]

    @property
    def nppt_count(self) -> int:
        return sum(1 for item in self.cuts if item.nppt)

    @property
    def worst(self) -> CutResult:
        """Cut with the most negative partial-transpose eigenvalue (lowest mask on ties)."""
        return min(self.cuts, key=lambda item: (item.min_eigenvalue, item.mask))

    @property
    def nppt_cuts(self) -> tuple[CutResult, ...]:
        return tuple(item for item in self.cuts if item.nppt)

    def single_qubit_cuts(self) -> tuple[CutResult, ...]:
        """The N cuts separating one qubit from the rest."""
        return tuple(
            item for item in self.cuts
            if len(item.cut.side_a) == 1 or len(item.cut.side_b) == 1
        )

    def lookup(self, cut: Bipartition) -> CutResult:
        for item in self.cuts:
            if item.cut == cut:
                return item
        raise KeyError(cut.label())


def nppt_scan(
    rho: DensityMatrix,
    *,
    max_workers: int = 1,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> PartitionScan:
    """Minimum partial-transpose eigenvalue for every canonical cut."""
    n_qubits = rho.n_qubits
    if n_qubits < 2:
        raise DimensionMismatchError("an NPPT scan needs at least two qubits")
    cuts = list(Bipartition.all_canonical(n_qubits))
    _LOGGER.debug("Scanning %d cut(s) of a %d-qubit state", len(cuts), n_qubits)

    def evaluate(cut: Bipartition) -> CutResult:
        lowest = min_eigenvalue(partial_transpose(rho, cut), tolerances)
        return CutResult(cut=cut, min_eigenvalue=lowest, nppt=lowest < -tolerances.psd)

    results = tuple(parallel_map(evaluate, cuts, max_workers=max_workers))
    scan = PartitionScan(n_qubits=n_qubits, cuts=results)
    _LOGGER.info(
        "NPPT scan finished: %d/%d cut(s) NPPT, worst eigenvalue %.6g",
        scan.nppt_count, len(results), scan.worst.min_eigenvalue,
    )
    return scan
