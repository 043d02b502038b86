"""Reference states used to probe the violation/distillability thresholds."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.stats import unitary_group

from ..core.errors import ValidationError
from ..qubits.algebra import apply_local_unitaries, kron
from ..qubits.ghz import ghz_state
from ..qubits.states import MAX_QUBITS, DensityMatrix

_LOGGER = logging.getLogger(__name__)


def _check_qubits(n_qubits: int, minimum: int) -> None:
    if n_qubits < minimum:
        raise ValidationError(f"need at least {minimum} qubit(s), got {n_qubits}")
    if n_qubits > MAX_QUBITS:
        raise ValidationError(f"dense states are limited to {MAX_QUBITS} qubits, got {n_qubits}")


def gen_ghz(n_qubits: int) -> DensityMatrix:
    """|GHZ><GHZ| on N qubits."""
    _check_qubits(n_qubits, 2)
    return ghz_state(n_qubits).projector()


def gen_noisy_ghz(n_qubits: int, p: float) -> DensityMatrix:
    """p |GHZ><GHZ| + (1 - p) I / 2^N."""
    _check_qubits(n_qubits, 2)
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"mixing weight p must lie in [0, 1], got {p}")
    dim = 2**n_qubits
    mixed = p * ghz_state(n_qubits).projector().matrix + (1 - p) * np.eye(dim) / dim
    return DensityMatrix(mixed)


def gen_ghz_padded(n_qubits: int) -> DensityMatrix:
    """|GHZ>_{N-1} on qubits 0..N-2 with qubit N-1 in |0>."""
    _check_qubits(n_qubits, 3)
    ket_zero = np.array([[1, 0], [0, 0]], dtype=np.complex128)
    return DensityMatrix(kron([ghz_state(n_qubits - 1).projector().matrix, ket_zero]))


def gen_dur_state(n_qubits: int) -> DensityMatrix:
    """Multiqubit state that violates MBK while every 1-vs-rest cut is PPT.

    Construction from W. Dur, "Multipartite bound entangled states that
    violate Bell's inequalities", Phys. Rev. Lett. 87, 230402 (2001):

        rho = 1/(N+1) [ |GHZ><GHZ| + 1/2 sum_k (|u_k><u_k| + |v_k><v_k|) ]

    with |u_k> = |0..1_k..0> and |v_k> = |1..0_k..1>. The phase of the GHZ
    component is fixed to zero. Only the parameters come from that
    reference; every property claimed for the state is re-checked
    numerically by the scan and optimizer.
    """
    _check_qubits(n_qubits, 4)
    dim = 2**n_qubits
    weight = 1.0 / (n_qubits + 1)
    matrix = weight * ghz_state(n_qubits).projector().matrix
    full = dim - 1
    for qubit in range(n_qubits):
        single = 1 << (n_qubits - 1 - qubit)
        for index in (single, full ^ single):
            matrix[index, index] += weight / 2
    return DensityMatrix(matrix)


def random_qubit_state(rng: np.random.Generator) -> NDArray[np.complex128]:
    """Random single-qubit density matrix (Bloch vector uniform in the ball)."""
    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    radius = rng.random() ** (1 / 3)
    x, y, z = radius * direction
    return np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=np.complex128) / 2


def gen_product_state(n_qubits: int, seed: int = 0) -> DensityMatrix:
    """Random fully separable product state."""
    _check_qubits(n_qubits, 2)
    rng = np.random.default_rng(seed)
    return DensityMatrix(kron([random_qubit_state(rng) for _ in range(n_qubits)]))


def random_local_unitaries(n_qubits: int, rng: np.random.Generator) -> list[NDArray[np.complex128]]:
    """Haar-random U(2) element per qubit."""
    return [unitary_group.rvs(2, random_state=rng) for _ in range(n_qubits)]


def gen_rotated_noisy_ghz(
    n_qubits: int,
    p: float,
    rng: np.random.Generator,
    unitaries: Sequence[NDArray[np.complex128]] | None = None,
) -> DensityMatrix:
    """Noisy GHZ state conjugated by random local unitaries."""
    base = gen_noisy_ghz(n_qubits, p)
    return apply_local_unitaries(base, unitaries or random_local_unitaries(n_qubits, rng))
