"""Tests for GHZ-diagonal depolarization."""

from __future__ import annotations

import numpy as np
import pytest

from belldistill.core.errors import DimensionMismatchError, StateValidationError
from belldistill.distill import GHZDiagonalState, depolarize_ghz_diagonal, ghz_diagonal_parameters
from belldistill.distill.generators import gen_dur_state, gen_ghz, gen_noisy_ghz, gen_rotated_noisy_ghz
from belldistill.qubits import overlap
from belldistill.qubits.ghz import ghz_basis_vector, ghz_state
from belldistill.qubits.states import Bipartition, DensityMatrix


def test_noisy_ghz_parameters() -> None:
    parameters = ghz_diagonal_parameters(gen_noisy_ghz(3, 0.6))
    noise = 0.4 / 8
    assert parameters.lambda_0_plus == pytest.approx(0.6 + noise)
    assert parameters.lambda_0_minus == pytest.approx(noise)
    np.testing.assert_allclose(parameters.lambdas, [noise] * 3)


@pytest.mark.parametrize("rho", [gen_ghz(3), gen_noisy_ghz(4, 0.25), gen_dur_state(4)], ids=["ghz", "noisy", "dur"])
def test_ghz_diagonal_states_are_fixed_points(rho: DensityMatrix) -> None:
    _, output = depolarize_ghz_diagonal(rho)
    np.testing.assert_allclose(output.matrix, rho.matrix, atol=1e-15)


def test_depolarization_is_idempotent_and_keeps_ghz_weights() -> None:
    rng = np.random.default_rng(8)
    rho = gen_rotated_noisy_ghz(3, 0.7, rng)
    parameters, once = depolarize_ghz_diagonal(rho)
    _, twice = depolarize_ghz_diagonal(once)
    np.testing.assert_allclose(twice.matrix, once.matrix, atol=1e-14)
    assert parameters.lambda_0_plus == pytest.approx(overlap(rho, ghz_state(3)), abs=1e-12)
    assert parameters.lambda_0_minus == pytest.approx(overlap(rho, ghz_basis_vector(3, "00", -1)), abs=1e-12)
    assert np.trace(once.matrix).real == pytest.approx(1.0)


def test_sign_pairs_are_averaged() -> None:
    plus = ghz_basis_vector(3, "01", 1).projector().matrix
    rho = DensityMatrix(0.5 * plus + 0.5 * ghz_state(3).projector().matrix)
    parameters, output = depolarize_ghz_diagonal(rho)
    assert parameters.lambda_j(1) == pytest.approx(0.25)
    assert overlap(output, ghz_basis_vector(3, "01", -1)) == pytest.approx(0.25)


def test_parameter_validation() -> None:
    with pytest.raises(DimensionMismatchError):
        GHZDiagonalState(3, 0.5, 0.5, [0.1])
    with pytest.raises(StateValidationError, match="negative"):
        GHZDiagonalState(2, 1.2, -0.2, [0.0]).validate()
    with pytest.raises(StateValidationError, match="sum"):
        GHZDiagonalState(2, 0.5, 0.5, [0.5]).validate()
    with pytest.raises(StateValidationError):
        GHZDiagonalState(2, 1.0, 0.0, [0.0]).lambda_j(2)


def test_full_distillability_of_family() -> None:
    assert ghz_diagonal_parameters(gen_ghz(4)).is_fully_distillable()
    assert ghz_diagonal_parameters(gen_noisy_ghz(4, 0.5)).is_fully_distillable()
    assert not ghz_diagonal_parameters(DensityMatrix.maximally_mixed(4)).is_fully_distillable()
    assert not ghz_diagonal_parameters(gen_dur_state(4)).is_fully_distillable()


def test_cut_margin_sign_matches_nppt() -> None:
    parameters = ghz_diagonal_parameters(gen_dur_state(4))
    single = Bipartition.canonical(4, [2])
    double = Bipartition(4, frozenset({0, 1}))
    assert parameters.cut_margin(single) == pytest.approx(0.0, abs=1e-15)
    assert parameters.cut_margin(double) == pytest.approx(0.2)
    assert GHZDiagonalState.cut_index(double) == 0b011
