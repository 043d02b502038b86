"""Centralized error hierarchy for belldistill."""

from __future__ import annotations


class BellDistillError(Exception):
    """Base exception for all belldistill errors."""


class ValidationError(BellDistillError, ValueError):
    """Raised when an input violates a documented invariant."""


class StateValidationError(ValidationError):
    """Raised when a matrix is not a valid density matrix or pure state."""


class DimensionMismatchError(ValidationError):
    """Raised when operands act on different numbers of qubits."""


class SettingsValidationError(ValidationError):
    """Raised when measurement settings or directions are malformed."""


class SpecValidationError(ValidationError):
    """Raised when a WWZB family member fails its validity check."""


class StateFileError(BellDistillError):
    """Raised when a state, family or report file cannot be parsed."""


class ConfigurationError(BellDistillError):
    """Raised when analysis configuration is invalid or incomplete."""


class ClassicalBoundLimitError(BellDistillError):
    """Raised when exhaustive local-variable enumeration is refused."""


class ReductionGuaranteeError(BellDistillError):
    """Raised when a measurement reduction misses the 1/sqrt(2) guarantee."""


class RenderingError(BellDistillError):
    """Raised when a report summary cannot be rendered."""
