"""Tests for violation classification and the GHZ overlap witness."""

from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from belldistill.bell import optimize_settings
from belldistill.core.errors import ValidationError
from belldistill.core.tolerances import Tolerances
from belldistill.distill import classify, exceeds_dyadic, full_distillability_witness
from belldistill.distill.generators import gen_ghz, gen_noisy_ghz
from belldistill.qubits.states import DensityMatrix


def test_seven_qubit_example() -> None:
    report = classify(3.0, 7)
    assert report.p_min == 4
    assert report.depth_bound == 5
    assert not report.fully_distillable
    assert report.bipartite_distillable


def test_five_qubit_full_distillability() -> None:
    report = classify(4.0, 5)
    assert report.p_min == 2
    assert report.depth_bound == 5
    assert report.fully_distillable
    assert report.quantum_maximum == pytest.approx(4.0)


def test_classical_value_certifies_nothing() -> None:
    report = classify(1.0, 3)
    assert report.p_min is None
    assert report.depth_bound == 1
    assert not report.bipartite_distillable
    assert not report.fully_distillable


def test_threshold_is_strict() -> None:
    report = classify(2.0, 4)
    assert not report.fully_distillable
    assert report.p_min == 3
    assert report.depth_bound == 3
    assert classify(2.0 + 1e-9, 4).fully_distillable


@pytest.mark.parametrize("n_qubits", [3, 5, 7, 9])
def test_odd_thresholds_are_not_exceeded(n_qubits: int) -> None:
    threshold = 2 ** ((n_qubits - 2) / 2)
    report = classify(threshold, n_qubits)
    assert not report.fully_distillable
    assert report.p_min == 3
    assert classify(threshold + 1e-8, n_qubits).fully_distillable


def test_padded_thresholds_from_acceptance_examples() -> None:
    five = classify(2**1.5, 5)
    assert not five.fully_distillable
    assert five.p_min == 3
    assert five.depth_bound == 4
    seven = classify(2**2.5, 7)
    assert not seven.fully_distillable
    assert seven.p_min == 3
    assert seven.depth_bound == 6


def test_exceeds_dyadic_uses_tolerance_band() -> None:
    assert not exceeds_dyadic(1.0, 0)
    assert not exceeds_dyadic(math.nextafter(1.0, 2.0), 0)
    assert exceeds_dyadic(1.0 + 1e-9, 0)
    assert not exceeds_dyadic(math.sqrt(2), 1)
    assert not exceeds_dyadic(2**1.5, 3)
    assert exceeds_dyadic(2**1.5 + 1e-9, 3)
    assert not exceeds_dyadic(0.0, -4)
    assert not exceeds_dyadic(1.0 + 1e-9, 0, tol=1e-6)


def test_tolerance_comes_from_settings() -> None:
    assert not classify(2.0 + 1e-9, 4, Tolerances(opt=1e-6)).fully_distillable


def test_classification_is_monotone_in_v() -> None:
    previous = classify(0.0, 6)
    for v in np.linspace(0.0, 2**2.5, 60)[1:]:
        report = classify(float(v), 6)
        assert report.depth_bound >= previous.depth_bound
        if previous.p_min is not None:
            assert report.p_min is not None and report.p_min <= previous.p_min
        previous = report


def test_depth_is_capped_above_quantum_maximum(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING, logger="belldistill.distill.classify"):
        report = classify(2 ** 1.5 * 1.01, 4)
    assert report.depth_bound == 4
    assert "quantum maximum" in caplog.text


def test_invalid_arguments() -> None:
    with pytest.raises(ValidationError):
        classify(-0.1, 3)
    with pytest.raises(ValidationError):
        classify(1.0, 1)


def test_overlap_witness() -> None:
    witness = full_distillability_witness(gen_ghz(4))
    assert witness.overlap == pytest.approx(1.0)
    assert witness.passes and witness.applicable and witness.fixed_basis

    noisy = full_distillability_witness(gen_noisy_ghz(5, 0.7))
    assert noisy.overlap == pytest.approx(0.7 + 0.3 / 32)
    assert noisy.passes

    mixed = full_distillability_witness(DensityMatrix.maximally_mixed(4))
    assert not mixed.passes

    small = full_distillability_witness(gen_ghz(3))
    assert small.passes and not small.applicable


@pytest.mark.parametrize("n_qubits", [4, 5, 6, 7])
def test_noisy_ghz_overlap_formula(n_qubits: int) -> None:
    for p in (0.0, 0.3, 0.75, 1.0):
        witness = full_distillability_witness(gen_noisy_ghz(n_qubits, p))
        assert witness.overlap == pytest.approx(p + (1 - p) / 2**n_qubits, abs=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("n_qubits", [4, 5, 6, 7])
def test_full_distillability_violation_implies_overlap(n_qubits: int) -> None:
    for p in (0.6, 0.7, 0.72, 0.8, 0.9, 1.0):
        rho = gen_noisy_ghz(n_qubits, p)
        value = optimize_settings(rho, restarts=16, seed=0).value
        if classify(value, n_qubits).fully_distillable:
            assert full_distillability_witness(rho).passes
