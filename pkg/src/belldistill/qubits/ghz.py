"""GHZ state and the GHZ-like orthonormal basis."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..core.errors import DimensionMismatchError, ValidationError
from .states import PureState


def parse_bitstring(bits: str | Sequence[int], length: int) -> tuple[int, ...]:
    """Accept "0110" or (0, 1, 1, 0) and check its length."""
    try:
        values = tuple(int(ch) for ch in bits) if isinstance(bits, str) else tuple(int(b) for b in bits)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bitstring {bits!r} must contain only 0 and 1") from exc
    if len(values) != length:
        raise ValidationError(f"bitstring {bits!r} has length {len(values)}, expected {length}")
    if any(b not in (0, 1) for b in values):
        raise ValidationError(f"bitstring {bits!r} must contain only 0 and 1")
    return values


def bits_to_index(bits: Sequence[int]) -> int:
    index = 0
    for bit in bits:
        index = (index << 1) | bit
    return index


def ghz_pair_indices(n_qubits: int, j: int) -> tuple[int, int]:
    """Basis indices of |0, j> and |1, complement(j)> for an (N-1)-bit integer j."""
    rest = n_qubits - 1
    low = j
    high = (1 << rest) | (~j & ((1 << rest) - 1))
    return low, high


def ghz_basis_vector(n_qubits: int, j: str | Sequence[int], sign: int) -> PureState:
    """Return (|0, j> + sign |1, complement(j)>) / sqrt(2)."""
    if n_qubits < 2:
        raise DimensionMismatchError("the GHZ basis needs at least two qubits")
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")
    bits = parse_bitstring(j, n_qubits - 1)
    low, high = ghz_pair_indices(n_qubits, bits_to_index(bits))
    amplitudes = np.zeros(2**n_qubits, dtype=np.complex128)
    amplitudes[low] = 1 / np.sqrt(2)
    amplitudes[high] = sign / np.sqrt(2)
    return PureState(amplitudes)


def ghz_state(n_qubits: int) -> PureState:
    """(|0...0> + |1...1>) / sqrt(2)."""
    return ghz_basis_vector(n_qubits, (0,) * (n_qubits - 1), 1)
