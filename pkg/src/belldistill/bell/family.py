"""The WWZB family of two-setting correlation Bell inequalities.

A member is fixed by a sign function f on {-1,+1}^N. Its coefficient table
is the Walsh-Hadamard transform

    c(x) = 2^-N * sum_s f(s) * prod_k s_k^(x_k),

where x_k = 0 selects O_k^1 and x_k = 1 selects O_k^2. Axis k of every
coefficient or sign tensor belongs to qubit k; on sign tensors index 0 is
s_k = +1 and index 1 is s_k = -1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import SpecValidationError

_LOGGER = logging.getLogger(__name__)

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]])
_SIGN_SNAP = 1e-9


class BellFamily(str, Enum):
    """Provenance tag of a Bell operator."""

    MBK = "mbk"
    WWZB = "wwzb"


def hadamard_transform(tensor: NDArray[np.float64]) -> NDArray[np.float64]:
    """Apply the 2x2 Hadamard matrix along every axis (unnormalized)."""
    result = np.asarray(tensor, dtype=float)
    for axis in range(result.ndim):
        result = np.moveaxis(np.tensordot(_HADAMARD, result, axes=([1], [axis])), 0, axis)
    return result


def coefficient_tensor(values: ArrayLike, n_qubits: int | None = None) -> NDArray[np.float64]:
    """Reshape a flat list of 2^N numbers (qubit 0 most significant) to shape (2,)*N."""
    flat = np.asarray(values, dtype=float)
    if flat.ndim > 1 and all(size == 2 for size in flat.shape):
        return flat
    flat = flat.reshape(-1)
    size = flat.shape[0]
    inferred = size.bit_length() - 1
    if size < 2 or 1 << inferred != size:
        raise SpecValidationError(f"expected 2^N entries, got {size}")
    if n_qubits is not None and inferred != n_qubits:
        raise SpecValidationError(f"expected {2**n_qubits} entries for N={n_qubits}, got {size}")
    return flat.reshape((2,) * inferred)


def mbk_coefficient_pair(n_qubits: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Coefficient tables of M_N and M'_N following the MBK recursion.

    The recursion adds qubits from the right: qubit N-1 carries M_1 and
    qubit 0 is the last factor added.
    """
    if n_qubits < 1:
        raise SpecValidationError("MBK needs at least one qubit")
    primary = np.array([1.0, 0.0])
    swapped = np.array([0.0, 1.0])
    for _ in range(n_qubits - 1):
        primary, swapped = (
            np.stack([(primary + swapped) / 2, (primary - swapped) / 2]),
            np.stack([(swapped - primary) / 2, (swapped + primary) / 2]),
        )
    return primary, swapped


@dataclass(frozen=True, slots=True, eq=False)
class WWZBSpec:
    """A member of the WWZB family, stored through its sign function."""

    signs: NDArray[np.int8]
    name: str = "wwzb"

    def __post_init__(self) -> None:
        signs = np.asarray(self.signs)
        if signs.ndim < 1 or any(size != 2 for size in signs.shape):
            raise SpecValidationError(f"sign tensor must have shape (2,)*N, got {signs.shape}")
        if not np.all(np.isin(signs, (-1, 1))):
            raise SpecValidationError("every sign-function value must be exactly +1 or -1")
        frozen = signs.astype(np.int8, copy=True)
        frozen.setflags(write=False)
        object.__setattr__(self, "signs", frozen)

    @classmethod
    def from_signs(cls, values: ArrayLike, *, name: str = "wwzb") -> "WWZBSpec":
        """Build from 2^N sign values ordered like basis indices (s = +1 first)."""
        return cls(coefficient_tensor(values), name)

    @classmethod
    def from_coefficients(cls, values: ArrayLike, *, name: str = "wwzb") -> "WWZBSpec":
        """Recover the sign function of a coefficient table; reject non-members."""
        coefficients = coefficient_tensor(values)
        signs = hadamard_transform(coefficients)
        snapped = np.rint(signs)
        if not np.all(np.isin(snapped, (-1.0, 1.0))) or np.abs(signs - snapped).max() > _SIGN_SNAP:
            raise SpecValidationError(
                "coefficients do not correspond to a +/-1 sign function "
                f"(transform range [{signs.min():.6g}, {signs.max():.6g}])"
            )
        return cls(snapped.astype(np.int8), name)

    @classmethod
    def mbk(cls, n_qubits: int) -> "WWZBSpec":
        primary, _ = mbk_coefficient_pair(n_qubits)
        return cls.from_coefficients(primary, name=f"mbk-{n_qubits}")

    @classmethod
    def chsh(cls) -> "WWZBSpec":
        """c = (1/2, 1/2, 1/2, -1/2)."""
        return cls.from_signs([1, 1, 1, -1], name="chsh")

    @property
    def n_qubits(self) -> int:
        return int(self.signs.ndim)

    @property
    def coefficients(self) -> NDArray[np.float64]:
        return hadamard_transform(self.signs.astype(float)) / 2**self.n_qubits

    def negated(self) -> "WWZBSpec":
        return WWZBSpec(-self.signs, f"-{self.name}")
