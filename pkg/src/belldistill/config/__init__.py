"""File formats and analysis configuration."""

from .loader import DocumentReader, load_family, load_settings, load_state, write_model, write_state
from .models import (
    AnalysisSettings,
    ReductionReport,
    ReportFile,
    ScanReport,
    StateFile,
    StateKind,
    ToleranceConfig,
    WWZBSpecFile,
)

__all__ = [
    "AnalysisSettings",
    "DocumentReader",
    "ReductionReport",
    "ReportFile",
    "ScanReport",
    "StateFile",
    "StateKind",
    "ToleranceConfig",
    "WWZBSpecFile",
    "load_family",
    "load_settings",
    "load_state",
    "write_model",
    "write_state",
]
