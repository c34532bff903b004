import logging
import math
import sys
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import pandas as pd
from tqdm import tqdm

from colgen import ColgenResult
from config import SolverSettings
from constants import BENCH_METHODS, PROGRESS_BAR_FORMAT
from exceptions import BenchManifestException, ExpectedException, FailedToReadException, FailedToWriteException
from generator import GenSpec, generate
from instance import Instance
from logger import get_logger
from lp_engine import OPTIMAL
from solve import SolveOutcome, compute_bound, solve
from utils import Limits

logger: logging.Logger = get_logger()

LBLP: str = "lblp"
SUMMARY_COLUMNS: list[str] = [
    "setting",
    "method",
    "instances",
    "opt",
    "time",
    "nodes",
    "lb_opt",
    "obj_lb",
    "gap_lblp_pct",
    "obj_opt",
]


@dataclass(frozen=True)
class BenchSetting:
    """
    One row group of a benchmark: instances drawn from one generator setting, solved by every listed method.

    Attributes:
        name (str): Label used in the report.
        set_name (str): Instance set.
        n (int): Jobs.
        m (int): Families.
        size_range (tuple[int, int]): Job size range.
        seeds (tuple[int, ...]): One instance per seed.
        methods (tuple[str, ...]): Methods to run, lblp computes the column generation bound only.
        time_limit (Optional[float]): Seconds per method and instance.
        node_limit (Optional[int]): Node budget per method and instance.
        strict (bool): Require n and m from the set's lists.
    """

    name: str
    set_name: str
    n: int
    m: int
    size_range: tuple[int, int]
    seeds: tuple[int, ...]
    methods: tuple[str, ...]
    time_limit: Optional[float] = None
    node_limit: Optional[int] = None
    strict: bool = False

    def spec(self, seed: int) -> GenSpec:
        return GenSpec(self.set_name, self.n, self.m, self.size_range, seed, self.strict)

    def limits(self) -> Limits:
        return Limits(time_limit=self.time_limit, node_limit=self.node_limit)


@dataclass(frozen=True)
class BenchManifest:
    settings: tuple[BenchSetting, ...]
    workers: int = 1
    report_time: bool = True


def parse_manifest(data: dict[str, Any]) -> BenchManifest:
    """
    Validates a parsed manifest.

    Top-level keys are workers (default 1), report_time (default true) and a [[setting]] array. Every setting
    needs set, n, m, sizes and methods, plus either seeds (a list) or seed_count with an optional first_seed.
    Optional keys are name, time_limit, node_limit and strict.

    Args:
        data (dict[str, Any]): Parsed TOML.

    Returns:
        Benchmark manifest.
    """
    raw_settings: Any = data.get("setting")
    if not isinstance(raw_settings, list) or not raw_settings:
        raise BenchManifestException("At least one [[setting]] table is required.")
    settings: list[BenchSetting] = []
    for index, raw in enumerate(raw_settings, start=1):
        try:
            methods: tuple[str, ...] = tuple(raw["methods"])
            unknown: list[str] = [method for method in methods if method not in BENCH_METHODS]
            if unknown or not methods:
                raise BenchManifestException(f"Setting {index}: unknown methods {unknown}.")
            if "seeds" in raw:
                seeds: tuple[int, ...] = tuple(int(seed) for seed in raw["seeds"])
            else:
                first: int = int(raw.get("first_seed", 0))
                seeds = tuple(range(first, first + int(raw["seed_count"])))
            low, high = raw["sizes"]
            setting = BenchSetting(
                name=str(raw.get("name", f"{raw['set']}-n{raw['n']}-m{raw['m']}")),
                set_name=str(raw["set"]),
                n=int(raw["n"]),
                m=int(raw["m"]),
                size_range=(int(low), int(high)),
                seeds=seeds,
                methods=methods,
                time_limit=float(raw["time_limit"]) if "time_limit" in raw else None,
                node_limit=int(raw["node_limit"]) if "node_limit" in raw else None,
                strict=bool(raw.get("strict", False)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise BenchManifestException(f"Setting {index}: missing or malformed field {e}.")
        setting.spec(setting.seeds[0] if setting.seeds else 0).validate()
        settings.append(setting)
    workers: int = int(data.get("workers", 1))
    if workers < 1:
        raise BenchManifestException(f"workers must be positive, got {workers}.")
    return BenchManifest(tuple(settings), workers, bool(data.get("report_time", True)))


def load_manifest(path: str) -> BenchManifest:
    try:
        with open(path, "rb") as file:
            data: dict[str, Any] = tomllib.load(file)
    except OSError as e:
        raise FailedToReadException(path, str(e))
    except tomllib.TOMLDecodeError as e:
        raise BenchManifestException(f"{path}: {e}")
    return parse_manifest(data)


def run_instance(setting: BenchSetting, seed: int, settings: SolverSettings) -> list[dict[str, Any]]:
    """
    Generates one instance and runs every method of the setting on it. Failures are recorded, never raised.

    Args:
        setting (BenchSetting): The setting.
        seed (int): Instance seed.
        settings (SolverSettings): Solver settings.

    Returns:
        One record per method.
    """
    inst: Instance = generate(setting.spec(seed))
    records: list[dict[str, Any]] = []
    for method in setting.methods:
        record: dict[str, Any] = {"setting": setting.name, "seed": seed, "method": method}
        try:
            if method == LBLP:
                bound: ColgenResult = compute_bound(inst, settings, setting.time_limit)
                converged: bool = bound.converged
                record.update(status=OPTIMAL if converged else "not-converged", objective=None, seconds=None)
                record.update(lower_bound=bound.lp_value if converged else None, nodes=bound.rounds)
            else:
                outcome: SolveOutcome = solve(inst, method, setting.limits(), settings)
                record.update(
                    status=outcome.status,
                    objective=outcome.objective,
                    lower_bound=outcome.lower_bound,
                    nodes=outcome.nodes,
                    seconds=outcome.seconds,
                )
        except ExpectedException as e:
            logger.warning(f"{setting.name} seed {seed} {method}: {e.message}")
            record.update(status=f"failed-{e.error_code}", objective=None, lower_bound=None, nodes=None, seconds=None)
        records.append(record)
    return records


def _instance_ratios(records: pd.DataFrame) -> pd.DataFrame:
    frame: pd.DataFrame = records.copy()
    for column in ("objective", "lower_bound", "seconds", "nodes"):
        frame[column] = pd.to_numeric(frame[column], errors="coerce")
    solved: pd.DataFrame = frame[(frame["status"] == OPTIMAL) & frame["objective"].notna()]
    optimum: pd.Series = solved.groupby(["setting", "seed"])["objective"].min().rename("optimum")
    bounds: pd.DataFrame = frame[(frame["method"] == LBLP) & frame["lower_bound"].notna()]
    lblp: pd.Series = bounds.groupby(["setting", "seed"])["lower_bound"].max().rename("lblp")
    frame = frame.join(optimum, on=["setting", "seed"]).join(lblp, on=["setting", "seed"])
    is_bound: pd.Series = frame["method"] == LBLP
    frame["lb_opt"] = (frame["lower_bound"] / frame["optimum"]).where(is_bound)
    frame["obj_lb"] = frame["objective"] / frame["lblp"]
    frame["gap_lblp_pct"] = (frame["objective"] - frame["lblp"]) / frame["lblp"] * 100.0
    frame["obj_opt"] = frame["objective"] / frame["optimum"]
    return frame


def summarize(records: list[dict[str, Any]], report_time: bool = True) -> pd.DataFrame:
    """
    One row per setting and method: instances run, instances solved to optimality, average time and nodes over
    the solved instances, and the averaged bound and objective ratios wherever their references exist.

    Args:
        records (list[dict[str, Any]]): Per-instance records from run_instance.
        report_time (bool): Leave the time column empty when False.

    Returns:
        Summary table.
    """
    if not records:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)
    frame: pd.DataFrame = _instance_ratios(pd.DataFrame.from_records(records))
    frame["solved"] = frame["status"] == OPTIMAL
    rows: list[dict[str, Any]] = []
    for (setting, method), group in frame.groupby(["setting", "method"], sort=False):
        solved: pd.DataFrame = group[group["solved"]]
        rows.append(
            {
                "setting": setting,
                "method": method,
                "instances": len(group),
                "opt": int(group["solved"].sum()),
                "time": solved["seconds"].mean() if report_time and method != LBLP and len(solved) else math.nan,
                "nodes": solved["nodes"].mean() if len(solved) else math.nan,
                "lb_opt": group["lb_opt"].mean(),
                "obj_lb": group["obj_lb"].mean(),
                "gap_lblp_pct": group["gap_lblp_pct"].mean(),
                "obj_opt": group["obj_opt"].mean(),
            }
        )
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def write_report(summary: pd.DataFrame, path: str) -> None:
    try:
        summary.to_csv(path, index=False, float_format="%.6f")
    except OSError as e:
        raise FailedToWriteException(path, str(e))


def run_suite(
    manifest: BenchManifest,
    out: str,
    settings: Optional[SolverSettings] = None,
    runs_out: Optional[str] = None,
) -> pd.DataFrame:
    """
    Runs every (setting, seed) pair on a process pool and writes the summary CSV. An interrupted suite still
    writes the summary of the instances that finished.

    Args:
        manifest (BenchManifest): Benchmark description.
        out (str): Summary CSV path.
        settings (Optional[SolverSettings]): Solver settings.
        runs_out (Optional[str]): Optional CSV path for the per-instance records.

    Returns:
        Summary table.
    """
    settings = settings if settings else SolverSettings()
    tasks: list[tuple[BenchSetting, int]] = [(setting, seed) for setting in manifest.settings for seed in setting.seeds]
    finished: dict[int, list[dict[str, Any]]] = {}
    interrupted: bool = False

    with tqdm(total=len(tasks), desc="Benchmark", bar_format=PROGRESS_BAR_FORMAT) as progress_bar:
        with ProcessPoolExecutor(max_workers=manifest.workers) as executor:
            # Keyed by task position, a seed listed twice is run twice
            futures: dict[Future, int] = {
                executor.submit(run_instance, setting, seed, settings): index
                for index, (setting, seed) in enumerate(tasks)
            }
            try:
                for future, index in futures.items():
                    finished[index] = future.result()
                    progress_bar.update(1)
            except KeyboardInterrupt:
                interrupted = True
                logger.warning("Benchmark interrupted, writing partial results.")
                executor.shutdown(wait=False, cancel_futures=True)

    records: list[dict[str, Any]] = [record for index in sorted(finished) for record in finished[index]]
    summary: pd.DataFrame = summarize(records, manifest.report_time)
    write_report(summary, out)
    if runs_out:
        runs: pd.DataFrame = pd.DataFrame.from_records(records)
        if not manifest.report_time and "seconds" in runs:
            runs = runs.drop(columns="seconds")
        write_report(runs, runs_out)
    logger.info(f"Benchmark summary with {len(summary)} rows written to {out}.")
    if interrupted:
        raise KeyboardInterrupt
    return summary
