"""Typed file and configuration models for belldistill."""

from __future__ import annotations

from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..bell.family import WWZBSpec
from ..core.tolerances import Tolerances
from ..qubits.states import MAX_QUBITS, DensityMatrix

ComplexEntry = Tuple[float, float]


class StateKind(str, Enum):
    """Reference states the generate command can write."""

    GHZ = "ghz"
    NOISY_GHZ = "noisy-ghz"
    GHZ_PADDED = "ghz-padded"
    DUR = "dur"
    PRODUCT = "product"


class ToleranceConfig(BaseModel):
    """Numerical tolerances as they appear in an analysis configuration file."""

    herm: float = Field(default=1e-9, gt=0)
    trace: float = Field(default=1e-9, gt=0)
    norm: float = Field(default=1e-9, gt=0)
    psd: float = Field(default=1e-8, gt=0)
    eig: float = Field(default=1e-8, gt=0)
    prob: float = Field(default=1e-12, gt=0)
    opt: float = Field(default=1e-10, gt=0)
    grad: float = Field(default=1e-12, gt=0)
    model_config = ConfigDict(extra="forbid")

    def to_tolerances(self) -> Tolerances:
        return Tolerances(**self.model_dump())


class AnalysisSettings(BaseModel):
    """Optimizer, search and parallelism knobs shared by every command."""

    restarts: int = Field(default=32, ge=1)
    seed: int = Field(default=0, ge=0)
    max_sweeps: int = Field(default=500, ge=1)
    search_starts: int = Field(default=64, ge=0)
    exhaustive_limit: int = Field(default=4, ge=1, le=6)
    max_workers: int = Field(default=1, ge=1)
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    model_config = ConfigDict(extra="forbid")


class StateFile(BaseModel):
    """Density matrix as nested [re, im] pairs, row-major."""

    n_qubits: int = Field(ge=1, le=MAX_QUBITS)
    matrix: List[List[ComplexEntry]]
    label: Optional[str] = None
    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_shape(self) -> "StateFile":
        dim = 2**self.n_qubits
        if len(self.matrix) != dim:
            raise ValueError(f"matrix has {len(self.matrix)} rows, expected {dim} for n_qubits={self.n_qubits}")
        for row, entries in enumerate(self.matrix):
            if len(entries) != dim:
                raise ValueError(f"row {row} has {len(entries)} columns, expected {dim}")
        return self

    @classmethod
    def from_density_matrix(cls, rho: DensityMatrix, label: str | None = None) -> "StateFile":
        pairs = np.stack([rho.matrix.real, rho.matrix.imag], axis=-1)
        return cls(n_qubits=rho.n_qubits, matrix=pairs.tolist(), label=label)

    def to_array(self) -> np.ndarray:
        pairs = np.asarray(self.matrix, dtype=float)
        return pairs[..., 0] + 1j * pairs[..., 1]

    def to_density_matrix(self, tolerances: Tolerances | None = None) -> DensityMatrix:
        if tolerances is None:
            return DensityMatrix(self.to_array())
        return DensityMatrix(self.to_array(), tolerances)


class WWZBSpecFile(BaseModel):
    """A WWZB family member given by its sign function or its coefficients."""

    name: str = "wwzb"
    n_qubits: Optional[int] = Field(default=None, ge=1)
    signs: Optional[List[int]] = None
    coefficients: Optional[List[float]] = None
    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_exactly_one(self) -> "WWZBSpecFile":
        if (self.signs is None) == (self.coefficients is None):
            raise ValueError("give exactly one of 'signs' or 'coefficients'")
        size = len(self.signs if self.signs is not None else self.coefficients or [])
        if size < 2 or size & (size - 1):
            raise ValueError(f"expected 2^N values, got {size}")
        if self.n_qubits is not None and size != 2**self.n_qubits:
            raise ValueError(f"n_qubits={self.n_qubits} needs {2 ** self.n_qubits} values, got {size}")
        return self

    def to_spec(self) -> WWZBSpec:
        if self.signs is not None:
            return WWZBSpec.from_signs(self.signs, name=self.name)
        return WWZBSpec.from_coefficients(self.coefficients or [], name=self.name)


class InputDescriptor(BaseModel):
    path: Optional[str] = None
    label: Optional[str] = None
    n_qubits: int


class OptimizationSummary(BaseModel):
    family: str
    restarts: int
    seed: int
    restart_index: int
    sweeps: int
    degenerate_updates: int


class ClassificationSummary(BaseModel):
    p_min: Optional[int]
    depth_bound: int
    fully_distillable: bool
    bipartite_distillable: bool


class CutEntry(BaseModel):
    mask: int
    label: str
    min_eigenvalue: float
    nppt: bool


class ScanSummary(BaseModel):
    cuts: int
    nppt_count: int
    worst_eigenvalue: float
    worst_mask: int
    worst_label: str
    single_qubit_nppt: int


class WitnessSummary(BaseModel):
    overlap: float
    passes: bool
    applicable: bool
    fixed_basis: bool


class ReportFile(BaseModel):
    """Result of the analyze command; identical inputs give identical bytes."""

    tool_version: str
    input: InputDescriptor
    violation: float
    settings: List[List[List[float]]]
    optimization: OptimizationSummary
    classification: ClassificationSummary
    scan: ScanSummary
    witness: WitnessSummary


class ScanReport(BaseModel):
    tool_version: str
    input: InputDescriptor
    summary: ScanSummary
    cuts: List[CutEntry]


class ReductionReport(BaseModel):
    """Result of the reduce command; ``state`` reloads as a StateFile."""

    tool_version: str
    input: InputDescriptor
    qubit: int
    seed: int
    search_starts: int
    input_value: float
    achieved_value: float
    ratio: Optional[float]
    direction: List[float]
    outcome: int
    probability: float
    vertex: str
    beta_plus: float
    beta_minus: float
    normalization: float
    input_settings: List[List[List[float]]]
    settings: List[List[List[float]]]
    state: StateFile
