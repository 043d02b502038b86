"""Reading and writing state, family, report and configuration files."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Sequence, TypeVar

import yaml
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from ..bell.family import BellFamily, WWZBSpec
from ..core.errors import ConfigurationError, StateFileError, ValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..qubits.states import DensityMatrix
from .models import AnalysisSettings, ReductionReport, StateFile, WWZBSpecFile

_LOGGER = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("config") / "analysis.yaml"

ModelT = TypeVar("ModelT", bound=BaseModel)


def describe_location(location: Sequence[int | str]) -> str:
    """Render a pydantic error location as ``matrix[3][5][0]``."""
    text = ""
    for part in location:
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else str(part)
    return text or "<root>"


def _format_errors(error: PydanticValidationError, limit: int = 5) -> str:
    details = [f"{describe_location(item['loc'])}: {item['msg']}" for item in error.errors()[:limit]]
    remaining = error.error_count() - len(details)
    if remaining > 0:
        details.append(f"... and {remaining} more")
    return "; ".join(details)


class DocumentReader:
    """Read YAML or JSON documents from disk."""

    def __init__(self, encoding: str = "utf-8") -> None:
        self._encoding = encoding

    def read_text(self, path: Path) -> str:
        if not path.exists():
            raise StateFileError(f"file not found: {path}")
        _LOGGER.debug("Reading %s", path)
        return path.read_text(encoding=self._encoding)

    def read_document(self, path: Path) -> Any:
        """Parse a YAML (or JSON, which YAML accepts) document."""
        try:
            data = yaml.safe_load(self.read_text(path))
        except yaml.YAMLError as exc:
            raise StateFileError(f"cannot parse {path}: {exc}") from exc
        if data is None:
            raise StateFileError(f"{path} is empty")
        return data

    def read_model(self, path: Path, model: type[ModelT]) -> ModelT:
        """Validate a document against ``model``; JSON goes through pydantic's own parser."""
        try:
            if path.suffix.lower() == ".json":
                return model.model_validate_json(self.read_text(path))
            return model.model_validate(self.read_document(path))
        except PydanticValidationError as exc:
            raise StateFileError(f"{path}: {_format_errors(exc)}") from exc


def load_state(
    path: Path | str,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    reader: DocumentReader | None = None,
) -> tuple[StateFile, DensityMatrix]:
    """Load a state file, or the ``state`` embedded in a reduction report."""
    source = Path(path)
    reader = reader or DocumentReader()
    text = reader.read_text(source)
    try:
        state_file = StateFile.model_validate_json(text)
    except PydanticValidationError as exc:
        embedded = _embedded_state(text)
        if embedded is None:
            raise StateFileError(f"{source}: {_format_errors(exc)}") from exc
        state_file = embedded
    try:
        rho = state_file.to_density_matrix(tolerances)
    except ValidationError as exc:
        raise type(exc)(f"{source}: {exc}") from exc
    _LOGGER.info("Loaded %d-qubit state from %s", rho.n_qubits, source)
    return state_file, rho


def _embedded_state(text: str) -> StateFile | None:
    try:
        return ReductionReport.model_validate_json(text).state
    except PydanticValidationError:
        return None


def write_model(path: Path | str, model: BaseModel) -> Path:
    """Serialize a model as indented JSON with shortest round-trip floats."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    _LOGGER.info("Wrote %s", target)
    return target


def write_state(path: Path | str, rho: DensityMatrix, label: str | None = None) -> Path:
    return write_model(path, StateFile.from_density_matrix(rho, label))


def load_family(choice: str, *, reader: DocumentReader | None = None) -> BellFamily | WWZBSpec:
    """``mbk`` or a path to a WWZB family file (YAML or JSON)."""
    if choice.lower() == BellFamily.MBK.value:
        return BellFamily.MBK
    path = Path(choice)
    if not path.exists():
        raise StateFileError(f"family must be 'mbk' or an existing file, got '{choice}'")
    spec_file = (reader or DocumentReader()).read_model(path, WWZBSpecFile)
    spec = spec_file.to_spec()
    _LOGGER.info("Loaded WWZB family member '%s' on %d qubit(s)", spec.name, spec.n_qubits)
    return spec


def load_settings(path: Path | str | None = None, *, reader: DocumentReader | None = None) -> AnalysisSettings:
    """Analysis settings from ``path``, the default location, or built-in defaults."""
    explicit = path is not None
    source = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    if not source.exists():
        if explicit:
            raise ConfigurationError(f"configuration file not found: {source}")
        _LOGGER.debug("No configuration at %s, using defaults", source)
        return AnalysisSettings()
    try:
        data = (reader or DocumentReader()).read_document(source)
    except StateFileError as exc:
        raise ConfigurationError(str(exc)) from exc
    if not isinstance(data, dict):
        raise ConfigurationError(f"expected a mapping in {source}, found {type(data).__name__}")
    try:
        settings = AnalysisSettings.model_validate(data)
    except PydanticValidationError as exc:
        raise ConfigurationError(f"{source}: {_format_errors(exc)}") from exc
    _LOGGER.debug("Loaded analysis settings from %s", source)
    return settings
