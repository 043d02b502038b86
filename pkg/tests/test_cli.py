"""Tests for the command-line interface."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest
import typer
from typer.testing import CliRunner

from belldistill.__main__ import UsageError, main
from belldistill.cli import EXIT_GUARANTEE, EXIT_INVALID, EXIT_USAGE, app
from belldistill.config import StateFile, write_state
from belldistill.distill.generators import gen_noisy_ghz
from belldistill.qubits.states import DensityMatrix

runner = CliRunner()


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _generate(tmp_path: Path, *args: str) -> Path:
    target = tmp_path / f"{'-'.join(args)}.json"
    result = runner.invoke(app, ["generate", *args, "--out", str(target)])
    assert result.exit_code == 0, result.output
    return target


def _read(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def test_generate_ghz(tmp_path: Path) -> None:
    path = _generate(tmp_path, "ghz", "--n", "3")
    payload = _read(path)
    assert payload["n_qubits"] == 3
    assert payload["label"] == "ghz-3"
    assert payload["matrix"][0][7] == pytest.approx([0.5, 0.0])


def test_generate_to_stdout() -> None:
    result = runner.invoke(app, ["generate", "noisy-ghz", "--n", "2", "--p", "0.5"])
    assert result.exit_code == 0
    assert '"label": "noisy-ghz-2-p0.5"' in result.stdout


@pytest.mark.parametrize(
    "args",
    [["noisy-ghz", "--n", "3"], ["dur", "--n", "3"], ["ghz", "--n", "3", "--p", "0.4"], ["ghz", "--n", "11"]],
    ids=["missing-p", "dur-too-small", "stray-p", "too-many-qubits"],
)
def test_generate_usage_errors(args: list[str]) -> None:
    result = runner.invoke(app, ["generate", *args])
    assert result.exit_code == EXIT_USAGE


def test_analyze_ghz(tmp_path: Path) -> None:
    state = _generate(tmp_path, "ghz", "--n", "3")
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["analyze", "--in", str(state), "--restarts", "8", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = _read(out)
    assert report["violation"] == pytest.approx(2.0, abs=1e-6)
    assert report["classification"]["p_min"] == 2
    assert report["classification"]["fully_distillable"] is True
    assert report["scan"]["nppt_count"] == 3
    assert report["input"]["label"] == "ghz-3"
    assert report["optimization"]["restarts"] == 8


def test_analyze_output_is_deterministic(tmp_path: Path) -> None:
    state = _generate(tmp_path, "noisy-ghz", "--n", "3", "--p", "0.8")
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for target in (first, second):
        result = runner.invoke(
            app, ["analyze", "--in", str(state), "--restarts", "4", "--seed", "7", "--out", str(target)]
        )
        assert result.exit_code == 0, result.output
    assert first.read_bytes() == second.read_bytes()


def test_analyze_maximally_mixed(tmp_path: Path) -> None:
    state = write_state(tmp_path / "mixed.json", DensityMatrix.maximally_mixed(3), "mixed")
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["analyze", "--in", str(state), "--restarts", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = _read(out)
    assert report["violation"] == pytest.approx(0.0, abs=1e-12)
    assert report["classification"]["p_min"] is None
    assert report["classification"]["bipartite_distillable"] is False
    assert report["scan"]["nppt_count"] == 0


def test_analyze_weak_noisy_ghz(tmp_path: Path) -> None:
    state = write_state(tmp_path / "weak.json", gen_noisy_ghz(5, 0.2))
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["analyze", "--in", str(state), "--restarts", "8", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = _read(out)
    assert report["violation"] == pytest.approx(0.8, abs=1e-6)
    assert report["classification"]["bipartite_distillable"] is False


def test_analyze_writes_summary(tmp_path: Path) -> None:
    state = _generate(tmp_path, "ghz", "--n", "3")
    summary = tmp_path / "summary.md"
    result = runner.invoke(
        app,
        ["analyze", "--in", str(state), "--restarts", "4", "--out", str(tmp_path / "r.json"), "--summary", str(summary)],
    )
    assert result.exit_code == 0, result.output
    assert summary.read_text(encoding="utf-8").startswith("# Bell violation summary")


def test_malformed_state_file(tmp_path: Path) -> None:
    broken = tmp_path / "broken.json"
    broken.write_text('{"n_qubits": 2, "matrix": [[[1, 0]]]}', encoding="utf-8")
    result = runner.invoke(app, ["analyze", "--in", str(broken)])
    assert result.exit_code == EXIT_INVALID


def test_non_physical_state_file(tmp_path: Path) -> None:
    matrix = np.diag([1.5, -0.5])
    pairs = np.stack([matrix, np.zeros_like(matrix)], axis=-1).tolist()
    bad = tmp_path / "negative.json"
    bad.write_text(json.dumps({"n_qubits": 1, "matrix": pairs}), encoding="utf-8")
    result = runner.invoke(app, ["scan", "--in", str(bad)])
    assert result.exit_code == EXIT_INVALID


def test_invalid_option_value(tmp_path: Path) -> None:
    state = _generate(tmp_path, "ghz", "--n", "3")
    result = runner.invoke(app, ["analyze", "--in", str(state), "--restarts", "0"])
    assert result.exit_code == EXIT_INVALID


def test_invalid_configuration_file(tmp_path: Path) -> None:
    state = _generate(tmp_path, "ghz", "--n", "3")
    config = tmp_path / "bad.yaml"
    config.write_text("restarts: many\n", encoding="utf-8")
    result = runner.invoke(app, ["analyze", "--in", str(state), "--config", str(config)])
    assert result.exit_code == EXIT_INVALID


def test_reduce_ghz(tmp_path: Path) -> None:
    state = _generate(tmp_path, "ghz", "--n", "4")
    out = tmp_path / "reduced.json"
    result = runner.invoke(
        app,
        ["reduce", "--in", str(state), "--qubit", "1", "--restarts", "8", "--search-starts", "4", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    report = _read(out)
    assert report["input_value"] == pytest.approx(2 * math.sqrt(2), abs=1e-6)
    assert report["achieved_value"] >= report["input_value"] / math.sqrt(2) - 1e-10
    assert report["state"]["n_qubits"] == 3
    assert report["state"]["label"] == "ghz-4-reduced-q1"

    # the reduced state is accepted as input
    scan_out = tmp_path / "scan.json"
    result = runner.invoke(app, ["scan", "--in", str(out), "--out", str(scan_out)])
    assert result.exit_code == 0, result.output
    assert _read(scan_out)["input"]["n_qubits"] == 3


def test_reduce_usage_errors(tmp_path: Path) -> None:
    pair = _generate(tmp_path, "ghz", "--n", "2")
    assert runner.invoke(app, ["reduce", "--in", str(pair), "--qubit", "0"]).exit_code == EXIT_USAGE
    triple = _generate(tmp_path, "ghz", "--n", "3")
    assert runner.invoke(app, ["reduce", "--in", str(triple), "--qubit", "3"]).exit_code == EXIT_USAGE


def test_reduce_guarantee_failure(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    def along_z(*_args: object, **_kwargs: object) -> tuple[np.ndarray, float]:
        return np.array([0.0, 0.0, 1.0]), 0.0

    monkeypatch.setattr("belldistill.distill.reduction._search_direction", along_z)
    state = _generate(tmp_path, "ghz", "--n", "4")
    result = runner.invoke(app, ["reduce", "--in", str(state), "--qubit", "0", "--restarts", "8"])
    assert result.exit_code == EXIT_GUARANTEE


def test_scan(tmp_path: Path) -> None:
    state = _generate(tmp_path, "dur", "--n", "4")
    out = tmp_path / "scan.json"
    result = runner.invoke(app, ["scan", "--in", str(state), "--out", str(out), "--workers", "2"])
    assert result.exit_code == 0, result.output
    report = _read(out)
    assert report["summary"]["cuts"] == 7
    assert report["summary"]["nppt_count"] == 3
    assert report["summary"]["single_qubit_nppt"] == 0
    assert [entry["mask"] for entry in report["cuts"]] == [1, 3, 5, 7, 9, 11, 13]


def test_schema(tmp_path: Path) -> None:
    out = tmp_path / "state.schema.json"
    result = runner.invoke(app, ["schema", "state", "--out", str(out)])
    assert result.exit_code == 0
    schema = _read(out)
    assert "matrix" in schema["properties"]
    reloaded = StateFile.model_json_schema()
    assert schema["required"] == reloaded["required"]


def test_main_maps_usage_errors_to_exit_one(capsys: pytest.CaptureFixture[str]) -> None:
    assert issubclass(typer.BadParameter, UsageError)
    with pytest.raises(SystemExit) as excinfo:
        main(["generate", "ghz"])
    assert excinfo.value.code == EXIT_USAGE
    assert "--n" in capsys.readouterr().err
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == EXIT_USAGE


def test_main_success(tmp_path: Path) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["generate", "ghz", "--n", "2", "--out", str(tmp_path / "g.json")])
    assert excinfo.value.code == 0


@pytest.mark.parametrize("kind", ["state", "report"])
def test_documented_schemas_track_models(kind: str) -> None:
    documented = _read(Path(__file__).resolve().parents[1] / "docs" / "schema" / f"{kind}.schema.json")
    result = runner.invoke(app, ["schema", kind])
    assert result.exit_code == 0
    generated = json.loads(result.stdout)
    assert documented["required"] == generated["required"]
    assert sorted(documented["properties"]) == sorted(generated["properties"])


def test_main_rejects_oversized_state_with_usage_error(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    target = tmp_path / "big.json"
    with pytest.raises(SystemExit) as excinfo:
        main(["generate", "ghz", "--n", "11", "--out", str(target)])
    assert excinfo.value.code == EXIT_USAGE
    assert "limited to 10 qubits" in capsys.readouterr().err
    assert not target.exists()
