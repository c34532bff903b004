import json
from pathlib import Path

import pytest

from config import SolverSettings, default_config_path, load_settings, read_config
from exceptions import FailedToReadException, InvalidConfigException


def test_bundled_config_matches_the_defaults():
    assert default_config_path().exists()
    assert load_settings() == SolverSettings()
    assert read_config()["name"] == "batchsched"


def test_overrides_merge_per_section(tmp_path: Path):
    path: Path = tmp_path / "config.json"
    path.write_text(json.dumps({"colgen": {"col_number_root_per_family": 5}, "proximity": {"alpha": 0.1}}))
    settings: SolverSettings = load_settings(str(path))
    assert settings.colgen.col_number_root_per_family == 5
    assert settings.colgen.col_number_node_per_family == SolverSettings().colgen.col_number_node_per_family
    assert settings.proximity.alpha == pytest.approx(0.1)
    assert isinstance(settings.caps.batch_enumeration, int)


@pytest.mark.parametrize(
    "overrides",
    [
        {"lp": {"unknown": 1}},
        {"mip": {"integrality_tolerance": "small"}},
        {"caps": {"spf_variables": 10.5}},
        {"colgen": {"max_rounds": 0}},
        {"proximity": {"alpha": True}},
        {"colgen": 3},
    ],
)
def test_invalid_overrides(tmp_path: Path, overrides: dict):
    path: Path = tmp_path / "config.json"
    path.write_text(json.dumps(overrides))
    with pytest.raises(InvalidConfigException):
        load_settings(str(path))


def test_unreadable_override(tmp_path: Path):
    with pytest.raises(FailedToReadException):
        load_settings(str(tmp_path / "missing.json"))
    broken: Path = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(FailedToReadException):
        load_settings(str(broken))
    listing: Path = tmp_path / "list.json"
    listing.write_text("[]")
    with pytest.raises(InvalidConfigException):
        load_settings(str(listing))
