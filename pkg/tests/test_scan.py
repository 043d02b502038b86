"""Tests for the NPPT scan over bipartitions."""

from __future__ import annotations

import numpy as np
import pytest

from belldistill.bell import optimize_settings
from belldistill.core.errors import DimensionMismatchError
from belldistill.distill import ghz_diagonal_parameters, nppt_scan
from belldistill.distill.generators import (
    gen_dur_state,
    gen_ghz,
    gen_ghz_padded,
    gen_noisy_ghz,
    gen_product_state,
    gen_rotated_noisy_ghz,
)
from belldistill.qubits.states import Bipartition, DensityMatrix


def test_ghz_is_nppt_across_every_cut() -> None:
    scan = nppt_scan(gen_ghz(3))
    assert len(scan.cuts) == 3
    assert scan.nppt_count == 3
    assert scan.worst.min_eigenvalue == pytest.approx(-0.5, abs=1e-12)


def test_product_state_has_no_nppt_cut() -> None:
    scan = nppt_scan(gen_product_state(4, seed=3))
    assert len(scan.cuts) == 7
    assert scan.nppt_count == 0
    assert scan.nppt_cuts == ()


def test_cuts_are_ordered_by_mask() -> None:
    scan = nppt_scan(gen_noisy_ghz(4, 0.5))
    masks = [item.mask for item in scan.cuts]
    assert masks == sorted(masks)
    assert len(scan.single_qubit_cuts()) == 4


def test_padded_ghz_last_qubit_is_separable() -> None:
    scan = nppt_scan(gen_ghz_padded(4))
    last = scan.lookup(Bipartition.canonical(4, [3]))
    assert not last.nppt
    assert scan.nppt_count == 6


def test_threads_give_identical_scan() -> None:
    rho = gen_noisy_ghz(4, 0.4)
    serial = nppt_scan(rho)
    threaded = nppt_scan(rho, max_workers=4)
    assert [item.min_eigenvalue for item in serial.cuts] == [item.min_eigenvalue for item in threaded.cuts]


def test_dur_state_single_qubit_cuts_are_ppt() -> None:
    scan = nppt_scan(gen_dur_state(4))
    singles = scan.single_qubit_cuts()
    assert all(not item.nppt for item in singles)
    assert all(item.min_eigenvalue == pytest.approx(0.0, abs=1e-12) for item in singles)
    assert scan.nppt_count == 3
    assert scan.worst.min_eigenvalue == pytest.approx(-0.1, abs=1e-12)


@pytest.mark.slow
def test_dur_state_eight_qubits() -> None:
    scan = nppt_scan(gen_dur_state(8), max_workers=4)
    assert len(scan.cuts) == 127
    assert scan.nppt_count == 119
    assert all(not item.nppt for item in scan.single_qubit_cuts())


@pytest.mark.parametrize(
    "rho",
    [gen_noisy_ghz(4, 0.3), gen_dur_state(4), gen_dur_state(5)],
    ids=["noisy-ghz", "dur-4", "dur-5"],
)
def test_closed_form_matches_partial_transpose(rho: DensityMatrix) -> None:
    parameters = ghz_diagonal_parameters(rho)
    scan = nppt_scan(rho)
    for item in scan.cuts:
        assert parameters.cut_min_eigenvalue(item.cut) == pytest.approx(item.min_eigenvalue, abs=1e-12)


def test_scan_needs_two_qubits() -> None:
    with pytest.raises(DimensionMismatchError):
        nppt_scan(DensityMatrix.maximally_mixed(1))


@pytest.mark.slow
@pytest.mark.parametrize("n_qubits", [3, 4, 5, 6])
def test_violation_implies_an_nppt_cut(n_qubits: int) -> None:
    rng = np.random.default_rng(1000 + n_qubits)
    checked = 0
    for _ in range(200):
        rho = gen_rotated_noisy_ghz(n_qubits, float(rng.uniform(0.0, 1.0)), rng)
        value = optimize_settings(rho, restarts=4, seed=int(rng.integers(2**31))).value
        if value > 1 + 1e-6:
            checked += 1
            assert nppt_scan(rho).nppt_count >= 1
    assert checked > 0


def test_violation_implies_an_nppt_cut_quick() -> None:
    rng = np.random.default_rng(77)
    for _ in range(10):
        rho = gen_rotated_noisy_ghz(3, float(rng.uniform(0.5, 1.0)), rng)
        value = optimize_settings(rho, restarts=4, seed=0).value
        if value > 1 + 1e-6:
            assert nppt_scan(rho).nppt_count >= 1


@pytest.mark.slow
def test_dur_state_violates_with_ppt_single_qubit_cuts() -> None:
    rho = gen_dur_state(8)
    assert optimize_settings(rho, restarts=32, seed=0, max_workers=4).value > 1 + 1e-6
    singles = nppt_scan(rho, max_workers=4).single_qubit_cuts()
    assert len(singles) == 8
    assert all(item.min_eigenvalue >= -1e-8 for item in singles)
