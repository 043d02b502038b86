"""Turn analysis results into serializable report models."""

from __future__ import annotations

from pathlib import Path

from .. import __version__
from ..config.models import (
    ClassificationSummary,
    CutEntry,
    InputDescriptor,
    OptimizationSummary,
    ReductionReport,
    ReportFile,
    ScanReport,
    ScanSummary,
    StateFile,
    WitnessSummary,
)
from ..distill.scan import PartitionScan
from .executor import AnalysisResult, ReductionRun, family_label


def describe_input(n_qubits: int, path: Path | str | None = None, label: str | None = None) -> InputDescriptor:
    return InputDescriptor(path=None if path is None else str(path), label=label, n_qubits=n_qubits)


def scan_summary(scan: PartitionScan) -> ScanSummary:
    worst = scan.worst
    return ScanSummary(
        cuts=len(scan.cuts),
        nppt_count=scan.nppt_count,
        worst_eigenvalue=worst.min_eigenvalue,
        worst_mask=worst.mask,
        worst_label=worst.cut.label(),
        single_qubit_nppt=sum(1 for item in scan.single_qubit_cuts() if item.nppt),
    )


def analysis_report(result: AnalysisResult, source: InputDescriptor, *, restarts: int, seed: int) -> ReportFile:
    optimization = result.optimization
    classification = result.classification
    return ReportFile(
        tool_version=__version__,
        input=source,
        violation=optimization.value,
        settings=optimization.settings.to_lists(),
        optimization=OptimizationSummary(
            family=family_label(optimization.family),
            restarts=restarts,
            seed=seed,
            restart_index=optimization.restart_index,
            sweeps=optimization.sweeps,
            degenerate_updates=optimization.degenerate_updates,
        ),
        classification=ClassificationSummary(
            p_min=classification.p_min,
            depth_bound=classification.depth_bound,
            fully_distillable=classification.fully_distillable,
            bipartite_distillable=classification.bipartite_distillable,
        ),
        scan=scan_summary(result.scan),
        witness=WitnessSummary(
            overlap=result.witness.overlap,
            passes=result.witness.passes,
            applicable=result.witness.applicable,
            fixed_basis=result.witness.fixed_basis,
        ),
    )


def scan_report(scan: PartitionScan, source: InputDescriptor) -> ScanReport:
    return ScanReport(
        tool_version=__version__,
        input=source,
        summary=scan_summary(scan),
        cuts=[
            CutEntry(mask=item.mask, label=item.cut.label(), min_eigenvalue=item.min_eigenvalue, nppt=item.nppt)
            for item in scan.cuts
        ],
    )


def reduction_report(
    run: ReductionRun, source: InputDescriptor, *, seed: int, search_starts: int, label: str | None = None
) -> ReductionReport:
    reduction = run.reduction
    ratio = reduction.achieved_value / reduction.input_value if reduction.input_value > 0 else None
    return ReductionReport(
        tool_version=__version__,
        input=source,
        qubit=reduction.qubit,
        seed=seed,
        search_starts=search_starts,
        input_value=reduction.input_value,
        achieved_value=reduction.achieved_value,
        ratio=ratio,
        direction=reduction.direction.as_array().tolist(),
        outcome=reduction.outcome,
        probability=reduction.probability,
        vertex=reduction.vertex,
        beta_plus=reduction.beta_plus,
        beta_minus=reduction.beta_minus,
        normalization=reduction.normalization,
        input_settings=run.optimization.settings.to_lists(),
        settings=reduction.operator.settings.to_lists(),
        state=StateFile.from_density_matrix(reduction.state, label),
    )
