"""Tests for the see-saw settings optimizer."""

from __future__ import annotations

import math

import numpy as np
import pytest

from belldistill.bell import (
    BellFamily,
    WWZBSpec,
    bell_value,
    ghz_optimal_settings,
    mbk_operator,
    optimize_settings,
    settings_value,
)
from belldistill.core.errors import DimensionMismatchError, ValidationError
from belldistill.distill import classify
from belldistill.distill.generators import (
    gen_ghz,
    gen_ghz_padded,
    gen_noisy_ghz,
    gen_product_state,
    gen_rotated_noisy_ghz,
)
from belldistill.qubits import max_eigenvalue
from belldistill.qubits.states import DensityMatrix


@pytest.mark.parametrize("n_qubits", [2, 3, 4])
def test_ghz_reaches_quantum_maximum(n_qubits: int) -> None:
    result = optimize_settings(gen_ghz(n_qubits), restarts=16, seed=0)
    assert result.value == pytest.approx(2 ** ((n_qubits - 1) / 2), abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("n_qubits", [5, 6, 7, 8])
def test_ghz_reaches_quantum_maximum_large(n_qubits: int) -> None:
    result = optimize_settings(gen_ghz(n_qubits), restarts=32, seed=0)
    assert result.value == pytest.approx(2 ** ((n_qubits - 1) / 2), abs=1e-6)


def test_noisy_ghz_value_scales_with_p() -> None:
    pure = optimize_settings(gen_ghz(3), restarts=16, seed=1).value
    for p in (0.3, 0.6):
        noisy = optimize_settings(gen_noisy_ghz(3, p), restarts=16, seed=1).value
        assert noisy == pytest.approx(p * pure, abs=1e-6)


def test_rotated_state_keeps_value() -> None:
    rng = np.random.default_rng(4)
    rotated = gen_rotated_noisy_ghz(3, 0.8, rng)
    result = optimize_settings(rotated, restarts=32, seed=2)
    assert result.value == pytest.approx(0.8 * 2.0, abs=1e-6)


def test_maximally_mixed_state_is_degenerate() -> None:
    result = optimize_settings(DensityMatrix.maximally_mixed(3), restarts=4, seed=0)
    assert result.value == pytest.approx(0.0, abs=1e-15)
    assert result.degenerate_updates == 2 * 3
    assert result.sweeps == 1


def test_padded_ghz_value() -> None:
    result = optimize_settings(gen_ghz_padded(4), restarts=16, seed=0)
    assert result.value == pytest.approx(2.0, abs=1e-6)


def test_results_do_not_depend_on_workers() -> None:
    rho = gen_noisy_ghz(3, 0.7)
    serial = optimize_settings(rho, restarts=6, seed=42, max_workers=1)
    threaded = optimize_settings(rho, restarts=6, seed=42, max_workers=3)
    assert serial.value == threaded.value
    assert serial.restart_index == threaded.restart_index
    assert serial.restart_values == threaded.restart_values
    np.testing.assert_array_equal(serial.settings.directions, threaded.settings.directions)


def test_seed_changes_restart_values() -> None:
    rho = gen_noisy_ghz(3, 0.7)
    first = optimize_settings(rho, restarts=4, seed=1)
    again = optimize_settings(rho, restarts=4, seed=1)
    other = optimize_settings(rho, restarts=4, seed=2)
    assert first.restart_values == again.restart_values
    np.testing.assert_array_equal(first.settings.directions, again.settings.directions)
    assert not np.array_equal(first.settings.directions, other.settings.directions)


def test_history_is_non_decreasing() -> None:
    result = optimize_settings(gen_noisy_ghz(4, 0.5), restarts=4, seed=3)
    steps = np.diff(result.history)
    assert np.all(steps >= -1e-10)
    assert result.history[-1] == pytest.approx(result.value)
    assert result.value == max(result.restart_values)


def test_reported_value_matches_operator() -> None:
    rho = gen_noisy_ghz(3, 0.9)
    result = optimize_settings(rho, restarts=8, seed=5)
    operator = result.operator()
    assert operator.family is BellFamily.MBK
    assert bell_value(rho, operator) == pytest.approx(result.value, abs=1e-10)
    assert settings_value(rho, BellFamily.MBK, result.settings) == pytest.approx(result.value, abs=1e-10)


def test_chsh_family_member() -> None:
    rho = gen_ghz(2)
    result = optimize_settings(rho, WWZBSpec.chsh(), restarts=8, seed=0)
    assert result.value == pytest.approx(math.sqrt(2), abs=1e-6)
    assert bell_value(rho, result.operator()) == pytest.approx(result.value, abs=1e-10)


def test_invalid_arguments() -> None:
    with pytest.raises(ValidationError):
        optimize_settings(gen_ghz(3), restarts=0)
    with pytest.raises(DimensionMismatchError):
        optimize_settings(gen_ghz(3), WWZBSpec.chsh(), restarts=2)


@pytest.mark.slow
@pytest.mark.parametrize("n_qubits", [3, 4, 5, 6])
@pytest.mark.parametrize("p", [0.25, 0.5, 0.9])
def test_noisy_ghz_linearity(n_qubits: int, p: float) -> None:
    result = optimize_settings(gen_noisy_ghz(n_qubits, p), restarts=32, seed=0)
    assert result.value == pytest.approx(p * 2 ** ((n_qubits - 1) / 2), abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("n_qubits", [4, 5, 6, 7, 8])
def test_padded_ghz_sits_on_full_distillability_threshold(n_qubits: int) -> None:
    threshold = 2 ** ((n_qubits - 2) / 2)
    result = optimize_settings(gen_ghz_padded(n_qubits), restarts=32, seed=0)
    assert result.value == pytest.approx(threshold, abs=1e-6)
    assert result.value <= threshold + 1e-9
    assert not classify(threshold, n_qubits).fully_distillable
    assert not classify(result.value, n_qubits).fully_distillable


@pytest.mark.parametrize("n_qubits", [2, 3, 4])
def test_product_states_stay_within_classical_bound(n_qubits: int) -> None:
    rng = np.random.default_rng(40 + n_qubits)
    families: list[BellFamily | WWZBSpec] = [BellFamily.MBK]
    families += [WWZBSpec.from_signs(rng.choice([-1.0, 1.0], size=2**n_qubits)) for _ in range(3)]
    for seed in range(3):
        rho = gen_product_state(n_qubits, seed)
        for family in families:
            result = optimize_settings(rho, family, restarts=4, seed=seed)
            assert result.value <= 1.0 + 1e-10


@pytest.mark.parametrize("n_qubits", [2, 3, 4])
def test_value_is_bounded_by_operator_spectrum(n_qubits: int) -> None:
    rng = np.random.default_rng(n_qubits)
    rho = gen_rotated_noisy_ghz(n_qubits, 0.7, rng)
    result = optimize_settings(rho, restarts=8, seed=0)
    assert result.value <= max_eigenvalue(result.operator().matrix) + 1e-8


def test_ghz_optimal_settings_are_cached() -> None:
    settings = ghz_optimal_settings(3, restarts=8)
    assert ghz_optimal_settings(3, restarts=8) is settings
    operator = mbk_operator(settings)
    assert bell_value(gen_ghz(3), operator) == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(DimensionMismatchError):
        ghz_optimal_settings(1)
