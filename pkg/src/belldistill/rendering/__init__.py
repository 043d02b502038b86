"""Rendering helpers."""

from .summary import SummaryRenderer, build_environment

__all__ = ["SummaryRenderer", "build_environment"]
