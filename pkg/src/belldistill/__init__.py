"""Bell-inequality violation and multipartite distillability toolkit."""

__version__ = "0.1.0"

from .core.errors import (  # noqa: E402
    BellDistillError,
    ClassicalBoundLimitError,
    ConfigurationError,
    DimensionMismatchError,
    ReductionGuaranteeError,
    RenderingError,
    SettingsValidationError,
    SpecValidationError,
    StateFileError,
    StateValidationError,
    ValidationError,
)
from .core.tolerances import DEFAULT_TOLERANCES, Tolerances  # noqa: E402
from .services import AnalysisExecutor  # noqa: E402

__all__ = [
    "AnalysisExecutor",
    "BellDistillError",
    "ClassicalBoundLimitError",
    "ConfigurationError",
    "DEFAULT_TOLERANCES",
    "DimensionMismatchError",
    "ReductionGuaranteeError",
    "RenderingError",
    "SettingsValidationError",
    "SpecValidationError",
    "StateFileError",
    "StateValidationError",
    "Tolerances",
    "ValidationError",
    "__version__",
]
