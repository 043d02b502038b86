"""Distillability structure derived from Bell violations."""

from .classify import OverlapWitness, ViolationReport, classify, exceeds_dyadic, full_distillability_witness
from .depolarize import GHZDiagonalState, depolarize_ghz_diagonal, ghz_diagonal_parameters
from .generators import (
    gen_dur_state,
    gen_ghz,
    gen_ghz_padded,
    gen_noisy_ghz,
    gen_product_state,
    gen_rotated_noisy_ghz,
    random_local_unitaries,
)
from .reduction import ReductionResult, reduce_by_measurement, reduce_chain
from .scan import CutResult, PartitionScan, nppt_scan

__all__ = [
    "CutResult",
    "GHZDiagonalState",
    "OverlapWitness",
    "PartitionScan",
    "ReductionResult",
    "ViolationReport",
    "classify",
    "depolarize_ghz_diagonal",
    "exceeds_dyadic",
    "full_distillability_witness",
    "gen_dur_state",
    "gen_ghz",
    "gen_ghz_padded",
    "gen_noisy_ghz",
    "gen_product_state",
    "gen_rotated_noisy_ghz",
    "ghz_diagonal_parameters",
    "nppt_scan",
    "random_local_unitaries",
    "reduce_by_measurement",
    "reduce_chain",
]
