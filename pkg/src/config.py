import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

from constants import CONFIG_FILE
from exceptions import FailedToReadException, InvalidConfigException


@dataclass(frozen=True)
class LpSettings:
    feasibility_tolerance: float = 1e-7
    optimality_tolerance: float = 1e-7
    pivot_tolerance: float = 1e-9
    max_iterations: int = 200000
    # Consecutive degenerate pivots before devex pricing gives way to Bland's rule
    stall_threshold: int = 50
    refactor_period: int = 100


@dataclass(frozen=True)
class MipSettings:
    integrality_tolerance: float = 1e-6
    prune_tolerance: float = 1e-6


@dataclass(frozen=True)
class CapSettings:
    batch_enumeration: int = 5_000_000
    spf_variables: int = 200_000
    oracle_batchings: int = 10_000_000


@dataclass(frozen=True)
class ColgenSettings:
    col_number_root_per_family: int = 20
    col_number_node_per_family: int = 10
    cgh_col_number_per_family: int = 50
    bland_after_stalled_rounds: int = 50
    max_rounds: int = 100_000


@dataclass(frozen=True)
class ProximitySettings:
    alpha: float = 0.02
    alpha_factor: float = 0.5
    big_m: float = 100_000.0
    gap_fraction: float = 0.2
    iteration_seconds: float = 100.0
    iteration_nodes: int = 2000
    max_iterations: int = 50


@dataclass(frozen=True)
class SolverSettings:
    """
    Every tunable of the solvers in one record, loaded from config.json.
    """

    lp: LpSettings = field(default_factory=LpSettings)
    mip: MipSettings = field(default_factory=MipSettings)
    caps: CapSettings = field(default_factory=CapSettings)
    colgen: ColgenSettings = field(default_factory=ColgenSettings)
    proximity: ProximitySettings = field(default_factory=ProximitySettings)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SolverSettings":
        sections: dict[str, Any] = {}
        for section in fields(cls):
            section_type: Any = section.type if isinstance(section.type, type) else _SECTION_TYPES[section.name]
            raw: Any = data.get(section.name, {})
            if not isinstance(raw, dict):
                raise InvalidConfigException(f"Section '{section.name}' must be an object.")
            sections[section.name] = _build_section(section_type, section.name, raw)
        return cls(**sections)


_SECTION_TYPES: dict[str, type] = {
    "lp": LpSettings,
    "mip": MipSettings,
    "caps": CapSettings,
    "colgen": ColgenSettings,
    "proximity": ProximitySettings,
}


def _build_section(section_type: type, name: str, raw: dict[str, Any]) -> Any:
    known: dict[str, Any] = {f.name: f for f in fields(section_type)}
    values: dict[str, Any] = {}
    for key, value in raw.items():
        if key not in known:
            raise InvalidConfigException(f"Unknown key '{name}.{key}'.")
        default: Any = getattr(section_type(), key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvalidConfigException(f"Key '{name}.{key}' must be numeric.")
        if isinstance(default, int) and not float(value).is_integer():
            raise InvalidConfigException(f"Key '{name}.{key}' must be an integer.")
        if value <= 0:
            raise InvalidConfigException(f"Key '{name}.{key}' must be positive.")
        values[key] = int(value) if isinstance(default, int) else float(value)
    return section_type(**values)


def default_config_path() -> Path:
    return Path(__file__).parent.parent.joinpath(CONFIG_FILE).resolve()


def read_config(path: Optional[str] = None) -> dict[str, Any]:
    """
    Reads the raw configuration: the bundled config.json, with a user file merged on top.

    Args:
        path (Optional[str]): Optional user configuration with overrides.

    Returns:
        Configuration dictionary.
    """
    config: dict[str, Any] = _read_json(default_config_path())
    if path:
        overrides: dict[str, Any] = _read_json(Path(path))
        for key, value in overrides.items():
            if isinstance(value, dict) and isinstance(config.get(key), dict):
                config[key] = {**config[key], **value}
            else:
                config[key] = value
    return config


def load_settings(path: Optional[str] = None) -> SolverSettings:
    return SolverSettings.from_dict(read_config(path))


def _read_json(path: Path) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as file:
            data: Any = json.load(file)
    except (OSError, json.JSONDecodeError) as e:
        raise FailedToReadException(str(path), str(e))
    if not isinstance(data, dict):
        raise InvalidConfigException(f"{path} must contain a JSON object.")
    return data
