"""Numerical tolerances shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass(frozen=True, slots=True)
class Tolerances:
    """Absolute tolerances for double-precision checks at dim <= 1024."""

    herm: float = 1e-9
    trace: float = 1e-9
    norm: float = 1e-9
    psd: float = 1e-8
    eig: float = 1e-8
    prob: float = 1e-12
    opt: float = 1e-10
    grad: float = 1e-12

    def __post_init__(self) -> None:
        for item in fields(self):
            if getattr(self, item.name) <= 0:
                raise ValueError(f"tolerance '{item.name}' must be positive")


DEFAULT_TOLERANCES = Tolerances()
