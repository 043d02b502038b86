"""From a violation value to distillability and entanglement-depth statements."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from ..core.errors import ValidationError
from ..core.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..qubits.algebra import overlap
from ..qubits.ghz import ghz_state
from ..qubits.states import DensityMatrix

_LOGGER = logging.getLogger(__name__)

WITNESS_THRESHOLD = Fraction(2, 3)


def exceeds_dyadic(v: float, exponent: int, tol: float = DEFAULT_TOLERANCES.opt) -> bool:
    """Test v > 2^(exponent/2) + tol.

    A value within tol of the threshold does not exceed it, so an optimizer
    result sitting on the threshold is not certified.
    """
    return v > 2 ** (exponent / 2) + tol


@dataclass(frozen=True, slots=True)
class ViolationReport:
    """What a violation v of the N-qubit MBK inequality certifies."""

    n_qubits: int
    violation: float
    p_min: int | None
    depth_bound: int
    fully_distillable: bool
    bipartite_distillable: bool

    @property
    def quantum_maximum(self) -> float:
        return float(2 ** ((self.n_qubits - 1) / 2))


def classify(v: float, n_qubits: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ViolationReport:
    """Group size, entanglement depth and distillability flags for violation v.

    p_min is the smallest p >= 2 with v > 2^((N-p)/2): splitting the parties
    into groups of at most p_min - 1 cannot produce the violation. depth_bound
    is M + 1 for the largest M with v > 2^((M-1)/2).
    """
    if n_qubits < 2:
        raise ValidationError(f"classification needs at least two qubits, got {n_qubits}")
    if v < 0:
        raise ValidationError(f"violation must be non-negative, got {v}")
    tol = tolerances.opt

    p_min = next((p for p in range(2, n_qubits + 1) if exceeds_dyadic(v, n_qubits - p, tol)), None)

    depth_bound = 1
    for m in range(1, n_qubits + 1):
        if exceeds_dyadic(v, m - 1, tol):
            depth_bound = m + 1
    if depth_bound > n_qubits:
        _LOGGER.warning(
            "Violation %.12g exceeds the quantum maximum %.12g for N=%d",
            v, 2 ** ((n_qubits - 1) / 2), n_qubits,
        )
        depth_bound = n_qubits

    report = ViolationReport(
        n_qubits=n_qubits,
        violation=v,
        p_min=p_min,
        depth_bound=depth_bound,
        fully_distillable=exceeds_dyadic(v, n_qubits - 2, tol),
        bipartite_distillable=exceeds_dyadic(v, 0, tol),
    )
    _LOGGER.debug("Classified v=%.12g for N=%d: %s", v, n_qubits, report)
    return report


@dataclass(frozen=True, slots=True)
class OverlapWitness:
    """<GHZ|rho|GHZ> against the 2/3 full-distillability threshold.

    The overlap is taken in the fixed computational GHZ basis; a state that
    only passes after local unitary rotation is not detected.
    """

    n_qubits: int
    overlap: float
    passes: bool
    fixed_basis: bool = True

    @property
    def applicable(self) -> bool:
        """The 2/3 threshold certifies full distillability only for N > 3."""
        return self.n_qubits > 3


def full_distillability_witness(rho: DensityMatrix) -> OverlapWitness:
    n_qubits = rho.n_qubits
    if n_qubits < 2:
        raise ValidationError("the GHZ overlap witness needs at least two qubits")
    value = overlap(rho, ghz_state(n_qubits))
    witness = OverlapWitness(n_qubits=n_qubits, overlap=value, passes=Fraction(value) > WITNESS_THRESHOLD)
    if witness.passes and not witness.applicable:
        _LOGGER.info("GHZ overlap %.6g exceeds 2/3 but N=%d is too small for the witness", value, n_qubits)
    return witness
