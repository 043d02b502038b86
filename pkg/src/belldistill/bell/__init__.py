"""Bell operators of the WWZB family and their optimization."""

from .classical import LVStrategy, certify_spec, classical_bound, classical_optimum
from .family import BellFamily, WWZBSpec, mbk_coefficient_pair
from .operators import (
    BellOperator,
    assemble_operator,
    bell_value,
    correlators,
    functional_value,
    mbk_operator,
    wwzb_operator,
)
from .optimizer import OptimizationResult, build_operator, ghz_optimal_settings, optimize_settings, settings_value
from .settings import MeasurementSettings

__all__ = [
    "BellFamily",
    "BellOperator",
    "LVStrategy",
    "MeasurementSettings",
    "OptimizationResult",
    "WWZBSpec",
    "assemble_operator",
    "bell_value",
    "build_operator",
    "certify_spec",
    "classical_bound",
    "classical_optimum",
    "correlators",
    "functional_value",
    "ghz_optimal_settings",
    "mbk_coefficient_pair",
    "mbk_operator",
    "optimize_settings",
    "settings_value",
    "wwzb_operator",
]
