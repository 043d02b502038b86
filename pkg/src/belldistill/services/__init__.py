"""Service layer exports."""

from .executor import AnalysisExecutor, AnalysisResult, ReductionRun, family_label
from .reports import analysis_report, describe_input, reduction_report, scan_report, scan_summary

__all__ = [
    "AnalysisExecutor",
    "AnalysisResult",
    "ReductionRun",
    "analysis_report",
    "describe_input",
    "family_label",
    "reduction_report",
    "scan_report",
    "scan_summary",
]
