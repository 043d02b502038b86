"""Command-line interface for belldistill."""

from __future__ import annotations

import asyncio
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import typer
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from .bell.optimizer import FamilyChoice
from .config.loader import load_family, load_settings, load_state, write_model, write_state
from .config.models import (
    AnalysisSettings,
    ReductionReport,
    ReportFile,
    ScanReport,
    StateFile,
    StateKind,
    WWZBSpecFile,
)
from .core.errors import BellDistillError, ConfigurationError, ReductionGuaranteeError, ValidationError
from .distill.generators import gen_dur_state, gen_ghz, gen_ghz_padded, gen_noisy_ghz, gen_product_state
from .qubits.states import DensityMatrix
from .rendering import SummaryRenderer
from .services import AnalysisExecutor, analysis_report, describe_input, reduction_report, scan_report

_LOGGER = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_GUARANTEE = 3

app = typer.Typer(add_completion=False, help="Bell violation and distillability analysis for N-qubit states")


class SchemaKind(str, Enum):
    STATE = "state"
    REPORT = "report"
    SCAN = "scan"
    REDUCTION = "reduction"
    FAMILY = "family"
    CONFIG = "config"


_SCHEMA_MODELS: dict[SchemaKind, type[BaseModel]] = {
    SchemaKind.STATE: StateFile,
    SchemaKind.REPORT: ReportFile,
    SchemaKind.SCAN: ScanReport,
    SchemaKind.REDUCTION: ReductionReport,
    SchemaKind.FAMILY: WWZBSpecFile,
    SchemaKind.CONFIG: AnalysisSettings,
}


def configure_logging(verbose: bool) -> None:
    """Configure logging based on verbosity level."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s [%(levelname)s] %(name)s: %(message)s")


def exit_code_for(exc: BellDistillError) -> int:
    if isinstance(exc, ReductionGuaranteeError):
        return EXIT_GUARANTEE
    return EXIT_INVALID


def _fail(exc: BellDistillError, verbose: bool) -> typer.Exit:
    _LOGGER.error("%s", exc, exc_info=verbose)
    typer.echo(f"Error: {exc}", err=True)
    return typer.Exit(code=exit_code_for(exc))


def _usage(message: str) -> typer.Exit:
    typer.echo(f"Usage error: {message}", err=True)
    return typer.Exit(code=EXIT_USAGE)


def resolve_settings(config: Optional[Path], **overrides: Any) -> AnalysisSettings:
    """Configuration file values with command-line overrides applied on top."""
    base = load_settings(config)
    updates = {key: value for key, value in overrides.items() if value is not None}
    if not updates:
        return base
    try:
        return AnalysisSettings.model_validate({**base.model_dump(), **updates})
    except PydanticValidationError as exc:
        raise ConfigurationError(f"invalid option value: {exc.errors()[0]['msg']}") from exc


def _emit(model: BaseModel, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(model.model_dump_json(indent=2))
    else:
        write_model(out, model)
        typer.echo(f"Wrote {out}")


def build_state(kind: StateKind, n_qubits: int, p: Optional[float], seed: int) -> DensityMatrix:
    if kind is StateKind.NOISY_GHZ:
        if p is None:
            raise ValidationError("noisy-ghz needs --p")
        return gen_noisy_ghz(n_qubits, p)
    if p is not None:
        raise ValidationError(f"--p only applies to noisy-ghz, not {kind.value}")
    if kind is StateKind.GHZ:
        return gen_ghz(n_qubits)
    if kind is StateKind.GHZ_PADDED:
        return gen_ghz_padded(n_qubits)
    if kind is StateKind.DUR:
        return gen_dur_state(n_qubits)
    return gen_product_state(n_qubits, seed)


@app.command("generate")
def cmd_generate(
    kind: StateKind = typer.Argument(..., help="State to generate"),
    n_qubits: int = typer.Option(..., "--n", help="Number of qubits"),
    p: Optional[float] = typer.Option(None, "--p", help="GHZ weight for noisy-ghz"),
    seed: int = typer.Option(0, "--seed", help="Seed for random product states"),
    out: Optional[Path] = typer.Option(None, "--out", help="State file to write (stdout if omitted)"),
    label: Optional[str] = typer.Option(None, "--label", help="Label stored in the state file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Write a reference state as a JSON state file."""
    configure_logging(verbose)
    try:
        rho = build_state(kind, n_qubits, p, seed)
    except ValidationError as exc:
        raise _usage(str(exc)) from exc
    name = label or (f"{kind.value}-{n_qubits}" if p is None else f"{kind.value}-{n_qubits}-p{p:g}")
    if out is None:
        typer.echo(StateFile.from_density_matrix(rho, name).model_dump_json(indent=2))
        return
    write_state(out, rho, name)
    typer.echo(f"Wrote {out}")


@app.command("analyze")
def cmd_analyze(
    input_path: Path = typer.Option(..., "--in", help="State file to analyze"),
    family: str = typer.Option("mbk", "--family", help="'mbk' or a WWZB family file"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="See-saw restarts"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the restarts"),
    out: Optional[Path] = typer.Option(None, "--out", help="Report file to write (stdout if omitted)"),
    config: Optional[Path] = typer.Option(None, "--config", help="Analysis configuration YAML"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker threads"),
    summary: Optional[Path] = typer.Option(None, "--summary", help="Markdown summary to write"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Optimize the violation, classify it, scan every cut and test GHZ overlap."""
    configure_logging(verbose)
    try:
        settings = resolve_settings(config, restarts=restarts, seed=seed, max_workers=workers)
        executor = AnalysisExecutor(settings)
        state_file, rho = load_state(input_path, tolerances=executor.tolerances)
        choice = load_family(family)
        report = asyncio.run(_analyze(executor, rho, choice, input_path, state_file.label, summary))
    except BellDistillError as exc:
        raise _fail(exc, verbose) from exc
    _emit(report, out)


async def _analyze(
    executor: AnalysisExecutor,
    rho: DensityMatrix,
    family: FamilyChoice,
    source: Path,
    label: Optional[str],
    summary: Optional[Path],
) -> ReportFile:
    result = await executor.analyze(rho, family)
    report = analysis_report(
        result,
        describe_input(rho.n_qubits, source, label),
        restarts=executor.settings.restarts,
        seed=executor.settings.seed,
    )
    if summary is not None:
        await SummaryRenderer().write(report, summary)
    return report


@app.command("reduce")
def cmd_reduce(
    input_path: Path = typer.Option(..., "--in", help="State file with N >= 3 qubits"),
    qubit: int = typer.Option(..., "--qubit", help="Qubit to measure"),
    out: Optional[Path] = typer.Option(None, "--out", help="Reduction report to write (stdout if omitted)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the optimization and search"),
    restarts: Optional[int] = typer.Option(None, "--restarts", help="See-saw restarts"),
    starts: Optional[int] = typer.Option(None, "--search-starts", help="Random measurement directions tried"),
    config: Optional[Path] = typer.Option(None, "--config", help="Analysis configuration YAML"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker threads"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Measure one qubit so the remaining N-1 qubits keep at least v/sqrt(2)."""
    configure_logging(verbose)
    try:
        settings = resolve_settings(
            config, seed=seed, restarts=restarts, search_starts=starts, max_workers=workers
        )
        executor = AnalysisExecutor(settings)
        state_file, rho = load_state(input_path, tolerances=executor.tolerances)
    except BellDistillError as exc:
        raise _fail(exc, verbose) from exc
    if rho.n_qubits < 3:
        raise _usage(f"reduction needs a state on at least three qubits, got {rho.n_qubits}")
    if not 0 <= qubit < rho.n_qubits:
        raise _usage(f"--qubit must lie in 0..{rho.n_qubits - 1}")
    try:
        run = asyncio.run(executor.reduce(rho, qubit))
    except BellDistillError as exc:
        raise _fail(exc, verbose) from exc
    label = f"{state_file.label or 'state'}-reduced-q{qubit}"
    report = reduction_report(
        run,
        describe_input(rho.n_qubits, input_path, state_file.label),
        seed=settings.seed,
        search_starts=settings.search_starts,
        label=label,
    )
    typer.echo(
        f"Reduced value {report.achieved_value:.10f} from {report.input_value:.10f}"
        + (f" (ratio {report.ratio:.6f})" if report.ratio is not None else ""),
        err=True,
    )
    _emit(report, out)


@app.command("scan")
def cmd_scan(
    input_path: Path = typer.Option(..., "--in", help="State file to scan"),
    out: Optional[Path] = typer.Option(None, "--out", help="Scan report to write (stdout if omitted)"),
    config: Optional[Path] = typer.Option(None, "--config", help="Analysis configuration YAML"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker threads"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Minimum partial-transpose eigenvalue across every bipartition."""
    configure_logging(verbose)
    try:
        executor = AnalysisExecutor(resolve_settings(config, max_workers=workers))
        state_file, rho = load_state(input_path, tolerances=executor.tolerances)
        if rho.n_qubits < 2:
            raise _usage("a scan needs at least two qubits")
        scan = asyncio.run(executor.scan(rho))
    except BellDistillError as exc:
        raise _fail(exc, verbose) from exc
    _emit(scan_report(scan, describe_input(rho.n_qubits, input_path, state_file.label)), out)


@app.command("schema")
def cmd_schema(
    kind: SchemaKind = typer.Argument(..., help="Which file format"),
    out: Optional[Path] = typer.Option(None, "--out", help="Schema file to write (stdout if omitted)"),
) -> None:
    """Print the JSON schema of a file format."""
    schema = _SCHEMA_MODELS[kind].model_json_schema()
    text = json.dumps(schema, indent=2, sort_keys=True)
    if out is None:
        typer.echo(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text + "\n", encoding="utf-8")
    typer.echo(f"Wrote {out}")

