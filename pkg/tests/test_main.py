import json
import sys
from pathlib import Path

import pytest
from conftest import EXAMPLE_OPTIMUM

from exceptions import EC_ARG_GENERAL, EC_MODEL_SPEC_MISMATCH
from instance import Instance
from main import main


def run(monkeypatch: pytest.MonkeyPatch, *arguments: str) -> None:
    monkeypatch.setattr(sys, "argv", ["batchsched", *arguments])
    main()


def exit_code(monkeypatch: pytest.MonkeyPatch, *arguments: str) -> int:
    with pytest.raises(SystemExit) as info:
        run(monkeypatch, *arguments)
    return info.value.code


@pytest.fixture
def example_file(tmp_path: Path, example1: Instance) -> Path:
    path: Path = tmp_path / "example.json"
    example1.save(str(path))
    return path


def test_generate(monkeypatch: pytest.MonkeyPatch, tmp_path: Path):
    out: Path = tmp_path / "instance.json"
    arguments = ["--set", "K2008", "--n", "20", "--m", "4", "--sizes", "2,4", "--seed", "7"]
    run(monkeypatch, "generate", *arguments, "-o", str(out))
    inst: Instance = Instance.load(str(out))
    assert inst.n == 20 and inst.m == 4 and inst.V == 10
    assert exit_code(
        monkeypatch, "generate", "--set", "K2008", "--n", "21", "--m", "4", "--strict", "true", "-o", str(out)
    ) == EC_MODEL_SPEC_MISMATCH


def test_solve_prints_the_schedule(monkeypatch, capsys, example_file: Path, tmp_path: Path):
    schedule: Path = tmp_path / "schedule.json"
    run(monkeypatch, "solve", "--method", "bnp", "-i", str(example_file), "-o", str(schedule))
    printed: str = capsys.readouterr().out
    assert f"Objective: {EXAMPLE_OPTIMUM}" in printed
    assert "Status: optimal" in printed
    assert json.loads(schedule.read_text())


def test_emit_then_solve_the_model(monkeypatch, capsys, example_file: Path, tmp_path: Path):
    model: Path = tmp_path / "tif.mps"
    run(monkeypatch, "emit", "--formulation", "tif", "-i", str(example_file), "-o", str(model))
    assert model.read_text().startswith("NAME")
    capsys.readouterr()
    run(monkeypatch, "solve", "--model", str(model))
    assert f"Objective: {EXAMPLE_OPTIMUM}.000000" in capsys.readouterr().out


def test_bound(monkeypatch, capsys, example_file: Path):
    run(monkeypatch, "bound", "-i", str(example_file))
    lines: dict[str, str] = dict(line.split(": ") for line in capsys.readouterr().out.splitlines())
    assert float(lines["LBLP"]) <= EXAMPLE_OPTIMUM
    assert lines["Converged"] == "True"


def test_config(monkeypatch, capsys, tmp_path: Path):
    run(monkeypatch, "config")
    assert json.loads(capsys.readouterr().out)["name"] == "batchsched"
    copy: Path = tmp_path / "config.json"
    run(monkeypatch, "config", "-o", str(copy))
    assert json.loads(copy.read_text())["colgen"]["col_number_root_per_family"] > 0


def test_argument_errors(monkeypatch, example_file: Path):
    assert exit_code(monkeypatch, "solve", "--method", "gurobi", "-i", str(example_file)) == EC_ARG_GENERAL
    assert exit_code(monkeypatch, "solve", "--method", "sk") == EC_ARG_GENERAL
    assert exit_code(monkeypatch, "unknown") == EC_ARG_GENERAL
    assert exit_code(monkeypatch, "--help") == 0
