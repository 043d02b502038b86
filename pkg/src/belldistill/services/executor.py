"""Orchestrate optimization, scans and reductions for the CLI."""

from __future__ import annotations

import asyncio
import logging
import time
from dataclasses import dataclass

from ..bell.family import BellFamily, WWZBSpec
from ..bell.optimizer import FamilyChoice, OptimizationResult, optimize_settings
from ..config.models import AnalysisSettings
from ..core.errors import DimensionMismatchError
from ..core.tolerances import Tolerances
from ..distill.classify import OverlapWitness, ViolationReport, classify, full_distillability_witness
from ..distill.reduction import ReductionResult, reduce_by_measurement
from ..distill.scan import PartitionScan, nppt_scan
from ..qubits.states import DensityMatrix

_LOGGER = logging.getLogger(__name__)


def family_label(family: FamilyChoice) -> str:
    return family.name if isinstance(family, WWZBSpec) else family.value


@dataclass(slots=True, frozen=True)
class AnalysisResult:
    """Aggregate outcome of one analysis run (immutable)."""

    n_qubits: int
    optimization: OptimizationResult
    classification: ViolationReport
    scan: PartitionScan
    witness: OverlapWitness
    duration_seconds: float

    @property
    def violation(self) -> float:
        return self.optimization.value

    @property
    def violates(self) -> bool:
        return self.classification.bipartite_distillable


@dataclass(slots=True, frozen=True)
class ReductionRun:
    """MBK optimization of the input followed by one measurement reduction."""

    optimization: OptimizationResult
    reduction: ReductionResult
    duration_seconds: float


class AnalysisExecutor:
    """High level interface used by the command-line front end."""

    def __init__(self, settings: AnalysisSettings | None = None) -> None:
        self._settings = settings or AnalysisSettings()
        self._tolerances = self._settings.tolerances.to_tolerances()

    @property
    def settings(self) -> AnalysisSettings:
        return self._settings

    @property
    def tolerances(self) -> Tolerances:
        return self._tolerances

    async def optimize(self, rho: DensityMatrix, family: FamilyChoice = BellFamily.MBK) -> OptimizationResult:
        settings = self._settings
        return await asyncio.to_thread(
            optimize_settings,
            rho,
            family,
            settings.restarts,
            settings.seed,
            max_sweeps=settings.max_sweeps,
            max_workers=settings.max_workers,
            tolerances=self._tolerances,
        )

    async def scan(self, rho: DensityMatrix) -> PartitionScan:
        return await asyncio.to_thread(
            nppt_scan, rho, max_workers=self._settings.max_workers, tolerances=self._tolerances
        )

    async def analyze(self, rho: DensityMatrix, family: FamilyChoice = BellFamily.MBK) -> AnalysisResult:
        """Optimize the violation, scan every cut and evaluate the GHZ witness concurrently."""
        _LOGGER.info(
            "Starting analysis of a %d-qubit state (family=%s, restarts=%d, seed=%d)",
            rho.n_qubits, family_label(family), self._settings.restarts, self._settings.seed,
        )
        start_time = time.perf_counter()
        optimization, scan, witness = await asyncio.gather(
            self.optimize(rho, family),
            self.scan(rho),
            asyncio.to_thread(full_distillability_witness, rho),
        )
        classification = classify(max(optimization.value, 0.0), rho.n_qubits, self.tolerances)
        duration = time.perf_counter() - start_time
        _LOGGER.info(
            "Analysis completed: v=%.12g, p_min=%s, NPPT cuts=%d/%d, overlap=%.6g (%.2fs)",
            optimization.value, classification.p_min, scan.nppt_count, len(scan.cuts),
            witness.overlap, duration,
        )
        if optimization.value > 1.0 + self._tolerances.opt and scan.nppt_count == 0:
            _LOGGER.warning("State violates the inequality but no cut is NPPT")
        return AnalysisResult(
            n_qubits=rho.n_qubits,
            optimization=optimization,
            classification=classification,
            scan=scan,
            witness=witness,
            duration_seconds=duration,
        )

    async def reduce(self, rho: DensityMatrix, qubit: int) -> ReductionRun:
        """Optimize MBK settings for ``rho`` and measure ``qubit`` away."""
        if rho.n_qubits < 3:
            raise DimensionMismatchError(f"reduction needs at least three qubits, got {rho.n_qubits}")
        start_time = time.perf_counter()
        optimization = await self.optimize(rho, BellFamily.MBK)
        settings = self._settings
        reduction = await asyncio.to_thread(
            reduce_by_measurement,
            rho,
            optimization.operator(),
            qubit,
            search_starts=settings.search_starts,
            seed=settings.seed,
            max_workers=settings.max_workers,
            exhaustive_limit=settings.exhaustive_limit,
            tolerances=self._tolerances,
        )
        return ReductionRun(
            optimization=optimization,
            reduction=reduction,
            duration_seconds=time.perf_counter() - start_time,
        )
