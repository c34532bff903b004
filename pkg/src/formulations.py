import logging
import re
from collections import defaultdict
from typing import Callable, Optional, Sequence

import numpy as np

from constants import CUTOFF_ROW_NAME, OMEGA_NAME
from exceptions import InfeasibleScheduleException, ModelTooLargeException
from instance import Batch, Instance, Schedule
from linear_model import EQ, GE, LE, LinearModel
from logger import get_logger
from preprocess import PreprocessResult

logger: logging.Logger = get_logger()

ABF: str = "abf"
TIF: str = "tif"
TIFV: str = "tifv"
TIFM: str = "tifm"
SPF: str = "spf"

_INDEXED_NAME: re.Pattern = re.compile(r"^([A-Za-z]+)(\d+(?:_\d+)*)$")


def start_periods(inst: Instance, prep: PreprocessResult, family: int) -> range:
    return range(1, prep.H_max - inst.q[family] + 2)


def build_abf(inst: Instance, prep: PreprocessResult) -> LinearModel:
    """
    Assignment-based model. Batch slot k of the sequence is one of sum_j B_j positions; x[i, k] is one
    when job i sits in slot k or later, the trailing slot K + 1 is kept as variables fixed to zero.

    Args:
        inst (Instance): The instance.
        prep (PreprocessResult): Batch-count bounds.

    Returns:
        Minimization model.
    """
    model: LinearModel = LinearModel(ABF)
    slots: int = prep.omega_size
    families: range = range(inst.m)
    jobs: range = range(inst.n)

    x: dict[tuple[int, int], int] = {}
    for i in jobs:
        for k in range(1, slots + 2):
            x[i, k] = model.add_variable(f"x{i + 1}_{k}", 0.0, 1.0 if k <= slots else 0.0, 0.0, True)
    y: dict[tuple[int, int], int] = {
        (j, k): model.add_binary(f"y{j + 1}_{k}") for j in families for k in range(1, slots + 1)
    }
    u: dict[int, int] = {k: model.add_variable(f"u{k}", 0.0, 1.0) for k in range(1, slots + 1)}
    tau: dict[tuple[int, int, int], int] = {
        (i, k, j): model.add_variable(f"tau{i + 1}_{k}_{j + 1}", 0.0, 1.0)
        for i in jobs
        for k in range(1, slots + 1)
        for j in families
    }
    completion: dict[int, int] = {i: model.add_variable(f"C{i + 1}", cost=inst.w[i]) for i in jobs}

    for k in range(1, slots + 1):
        model.add_row(f"slot_family{k}", EQ, 1, [(y[j, k], 1) for j in families])
    for j in families:
        model.add_row(f"family_slots{j + 1}", EQ, prep.B[j], [(y[j, k], 1) for k in range(1, slots + 1)])
    for i in jobs:
        model.add_row(f"first{i + 1}", EQ, 1, [(x[i, 1], 1)])
        model.add_row(f"last{i + 1}", EQ, 0, [(x[i, slots + 1], 1)])
    for i in jobs:
        for k in range(1, slots + 1):
            model.add_row(f"order{i + 1}_{k}", GE, 0, [(x[i, k], 1), (x[i, k + 1], -1)])
            link: list[tuple[int, float]] = [(y[inst.family_of[i], k], 1), (x[i, k], -1), (x[i, k + 1], 1)]
            model.add_row(f"link{i + 1}_{k}", GE, 0, link)
    for k in range(1, slots + 1):
        load: list[tuple[int, float]] = []
        for i in jobs:
            load += [(x[i, k], inst.v[i]), (x[i, k + 1], -inst.v[i])]
        model.add_row(f"capacity{k}", LE, inst.V, load)
    for i in jobs:
        for k in range(1, slots + 1):
            model.add_row(f"used{i + 1}_{k}", GE, 0, [(u[k], 1), (x[i, k], -1), (x[i, k + 1], 1)])
    for k in range(1, slots + 1):
        occupancy: list[tuple[int, float]] = [(u[k], 1)]
        for i in jobs:
            occupancy += [(x[i, k], -1), (x[i, k + 1], 1)]
        model.add_row(f"empty{k}", LE, 0, occupancy)
    for k in range(1, slots):
        model.add_row(f"no_gap{k}", GE, 0, [(u[k], 1), (u[k + 1], -1)])
    for i in jobs:
        terms: list[tuple[int, float]] = [(completion[i], 1)]
        terms += [(tau[i, k, j], -inst.q[j]) for k in range(1, slots + 1) for j in families]
        model.add_row(f"completion{i + 1}", GE, 0, terms)
    for i in jobs:
        for k in range(1, slots + 1):
            for j in families:
                name: str = f"{i + 1}_{k}_{j + 1}"
                model.add_row(f"tau_x{name}", LE, 0, [(tau[i, k, j], 1), (x[i, k], -1)])
                model.add_row(f"tau_y{name}", LE, 0, [(tau[i, k, j], 1), (y[j, k], -1)])
                model.add_row(f"tau_xy{name}", GE, -1, [(tau[i, k, j], 1), (x[i, k], -1), (y[j, k], -1)])

    logger.debug(f"ABF: {model.stats()}")
    return model


def _time_indexed_base(name: str, inst: Instance, prep: PreprocessResult) -> tuple[LinearModel, dict, dict]:
    model: LinearModel = LinearModel(name)
    x: dict[tuple[int, int], int] = {}
    for i in range(inst.n):
        duration: int = inst.p(i)
        for t in start_periods(inst, prep, inst.family_of[i]):
            x[i, t] = model.add_binary(f"x{i + 1}_{t}", inst.w[i] * (t + duration - 1))
    y: dict[tuple[int, int], int] = {
        (j, t): model.add_binary(f"y{j + 1}_{t}") for j in range(inst.m) for t in start_periods(inst, prep, j)
    }
    for i in range(inst.n):
        model.add_row(f"job{i + 1}", EQ, 1, [(x[i, t], 1) for t in start_periods(inst, prep, inst.family_of[i])])
    for t in range(1, prep.H_max + 1):
        running: list[tuple[int, float]] = [
            (y[j, tau], 1)
            for j in range(inst.m)
            for tau in range(max(t - inst.q[j] + 1, 1), min(t, len(start_periods(inst, prep, j))) + 1)
        ]
        model.add_row(f"period{t}", LE, 1, running)
    return model, x, y


def build_tif(inst: Instance, prep: PreprocessResult) -> LinearModel:
    """
    Time-indexed model: x[i, t] starts job i in period t, y[j, t] starts a family j batch in period t.
    Jobs of size zero also get x[i, t] <= y[j, t], the capacity row alone does not tie them to a batch.
    """
    model, x, y = _time_indexed_base(TIF, inst, prep)
    for j in range(inst.m):
        for t in start_periods(inst, prep, j):
            load: list[tuple[int, float]] = [(x[i, t], inst.v[i]) for i in inst.jobs_of[j]]
            model.add_row(f"capacity{j + 1}_{t}", LE, 0, load + [(y[j, t], -inst.V)])
            for i in inst.jobs_of[j]:
                if inst.v[i] == 0:
                    model.add_row(f"open{i + 1}_{t}", LE, 0, [(x[i, t], 1), (y[j, t], -1)])
    logger.debug(f"TIF: {model.stats()}")
    return model


def build_tifv(inst: Instance, prep: PreprocessResult) -> LinearModel:
    model, x, y = _time_indexed_base(TIFV, inst, prep)
    for t in range(1, prep.H_max + 1):
        load: list[tuple[int, float]] = []
        for i in range(inst.n):
            last_start: int = len(start_periods(inst, prep, inst.family_of[i]))
            load += [(x[i, tau], inst.v[i]) for tau in range(max(t - inst.p(i) + 1, 1), min(t, last_start) + 1)]
        model.add_row(f"capacity{t}", LE, inst.V, load)
    for j in range(inst.m):
        for i in inst.jobs_of[j]:
            for t in start_periods(inst, prep, j):
                model.add_row(f"open{i + 1}_{t}", GE, 0, [(y[j, t], 1), (x[i, t], -1)])
    logger.debug(f"TIFV: {model.stats()}")
    return model


def batch_slots(prep: PreprocessResult) -> list[range]:
    """
    Global 1-based batch slot numbers of each family, B_j consecutive slots per family.
    """
    slots: list[range] = []
    first: int = 1
    for count in prep.B:
        slots.append(range(first, first + count))
        first += count
    return slots


def build_tifm(inst: Instance, prep: PreprocessResult) -> LinearModel:
    """
    Time-indexed model with big-M completion rows over B_j batch slots per family, M = H_max.
    """
    model: LinearModel = LinearModel(TIFM)
    big_m: int = prep.H_max
    slots: list[range] = batch_slots(prep)

    x: dict[tuple[int, int], int] = {
        (k, t): model.add_binary(f"x{k}_{t}")
        for j in range(inst.m)
        for k in slots[j]
        for t in start_periods(inst, prep, j)
    }
    y: dict[tuple[int, int], int] = {
        (i, k): model.add_binary(f"y{i + 1}_{k}") for i in range(inst.n) for k in slots[inst.family_of[i]]
    }
    completion: dict[int, int] = {i: model.add_variable(f"C{i + 1}", cost=inst.w[i]) for i in range(inst.n)}

    for i in range(inst.n):
        model.add_row(f"assign{i + 1}", EQ, 1, [(y[i, k], 1) for k in slots[inst.family_of[i]]])
    for j in range(inst.m):
        for k in slots[j]:
            model.add_row(f"capacity{k}", LE, inst.V, [(y[i, k], inst.v[i]) for i in inst.jobs_of[j]])
    for j in range(inst.m):
        for k in slots[j]:
            model.add_row(f"start{k}", EQ, 1, [(x[k, t], 1) for t in start_periods(inst, prep, j)])
    for t in range(1, prep.H_max + 1):
        running: list[tuple[int, float]] = []
        for j in range(inst.m):
            last_start: int = len(start_periods(inst, prep, j))
            for k in slots[j]:
                running += [(x[k, tau], 1) for tau in range(max(t - inst.q[j] + 1, 1), min(t, last_start) + 1)]
        model.add_row(f"period{t}", LE, 1, running)
    for i in range(inst.n):
        j: int = inst.family_of[i]
        for k in slots[j]:
            terms: list[tuple[int, float]] = [(completion[i], 1), (y[i, k], -big_m)]
            terms += [(x[k, t], -(t + inst.q[j] - 1)) for t in start_periods(inst, prep, j)]
            model.add_row(f"completion{i + 1}_{k}", GE, -big_m, terms)

    logger.debug(f"TIFM: {model.stats()}")
    return model


def spf_cost(inst: Instance, batch: Batch, start: int) -> int:
    return batch.weight(inst) * (start + inst.q[batch.family] - 1)


def spf_columns(inst: Instance, prep: PreprocessResult, batch: Batch, start: int) -> dict[str, float]:
    """
    Row names covered by the column of a batch started in a period: every period it runs and each of its jobs.
    """
    rows: dict[str, float] = {f"period{t}": 1.0 for t in range(start, start + inst.q[batch.family])}
    rows.update({f"job{i + 1}": 1.0 for i in batch.jobs})
    return rows


def build_spf(
    inst: Instance,
    prep: PreprocessResult,
    batches: Sequence[Sequence[Batch]],
    cap: Optional[int] = None,
) -> LinearModel:
    """
    Set-partitioning model with one binary per feasible batch and start period.

    Args:
        inst (Instance): The instance.
        prep (PreprocessResult): Horizon.
        batches (Sequence[Sequence[Batch]]): Feasible batches per family.
        cap (Optional[int]): Largest number of variables allowed.

    Returns:
        Minimization model, variable z{j}_{s}_{t} for the s-th batch of family j.
    """
    count: int = sum(len(batches[j]) * len(start_periods(inst, prep, j)) for j in range(inst.m))
    if cap is not None and count > cap:
        raise ModelTooLargeException(count, cap)

    model: LinearModel = LinearModel(SPF)
    columns: list[tuple[int, dict[str, float]]] = []
    for j in range(inst.m):
        for s, batch in enumerate(batches[j], start=1):
            for t in start_periods(inst, prep, j):
                index: int = model.add_binary(f"z{j + 1}_{s}_{t}", spf_cost(inst, batch, t))
                columns.append((index, spf_columns(inst, prep, batch, t)))
    rows: dict[str, list[tuple[int, float]]] = defaultdict(list)
    for index, coefficients in columns:
        for row, value in coefficients.items():
            rows[row].append((index, value))
    for t in range(1, prep.H_max + 1):
        model.add_row(f"period{t}", LE, 1, rows[f"period{t}"])
    for i in range(inst.n):
        model.add_row(f"job{i + 1}", EQ, 1, rows[f"job{i + 1}"])

    logger.debug(f"SPF: {model.stats()}")
    return model


def apply_proximity(model: LinearModel, reference: np.ndarray, theta: float, big_m: float) -> LinearModel:
    """
    Replaces the objective by the Hamming distance to a reference over the binary variables plus a
    penalty on a soft cutoff c x - theta * omega <= c x_ref - theta.

    Args:
        model (LinearModel): Original model, left untouched.
        reference (np.ndarray): Values of every variable, binaries at 0 or 1.
        theta (float): Required improvement.
        big_m (float): Cost of omega.

    Returns:
        New model with the omega variable appended.
    """
    proximity: LinearModel = model.copy()
    proximity.name = f"{model.name}-proximity"
    costs: np.ndarray = model.costs()
    ones: int = 0
    for j, var in enumerate(proximity.variables):
        if var.is_binary:
            if reference[j] > 0.5:
                var.cost = -1.0
                ones += 1
            else:
                var.cost = 1.0
        else:
            var.cost = 0.0
    proximity.objective_offset = float(ones)
    omega: int = proximity.add_variable(OMEGA_NAME, cost=big_m)
    reference_cost: float = float(costs @ reference[: model.num_variables])
    cutoff: list[tuple[int, float]] = [(j, c) for j, c in enumerate(costs) if c != 0.0]
    proximity.add_row(CUTOFF_ROW_NAME, LE, reference_cost - theta, cutoff + [(omega, -theta)])
    return proximity


def parse_name(name: str) -> Optional[tuple[str, tuple[int, ...]]]:
    match: Optional[re.Match] = _INDEXED_NAME.match(name)
    if not match:
        return None
    return match.group(1), tuple(int(part) for part in match.group(2).split("_"))


def _chosen(model: LinearModel, values: np.ndarray, prefix: str) -> list[tuple[int, ...]]:
    chosen: list[tuple[int, ...]] = []
    for var, value in zip(model.variables, values):
        parsed: Optional[tuple[str, tuple[int, ...]]] = parse_name(var.name)
        if parsed and parsed[0] == prefix and value > 0.5:
            chosen.append(parsed[1])
    return chosen


def _timed_schedule(inst: Instance, groups: dict[tuple[int, int], list[int]]) -> Schedule:
    timed: list[tuple[Batch, int]] = [(Batch.of(inst, jobs), start) for (start, _), jobs in groups.items()]
    return Schedule(tuple(sorted(timed, key=lambda entry: (entry[1], entry[0].family))))


def decode_schedule(
    model: LinearModel,
    inst: Instance,
    values: np.ndarray,
    batches: Optional[Sequence[Sequence[Batch]]] = None,
) -> Schedule:
    """
    Reads the schedule out of an integral solution of one of the formulations.

    Args:
        model (LinearModel): The formulation, identified by its name.
        inst (Instance): The instance.
        values (np.ndarray): Integral solution.
        batches (Optional[Sequence[Sequence[Batch]]]): Batch lists the SPF was built from.

    Returns:
        Decoded schedule.
    """
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    if model.name in (TIF, TIFV):
        for job, start in _chosen(model, values, "x"):
            groups[start, inst.family_of[job - 1]].append(job - 1)
        return _timed_schedule(inst, groups)

    if model.name == TIFM:
        starts: dict[int, int] = {k: t for k, t in _chosen(model, values, "x")}
        for job, k in _chosen(model, values, "y"):
            groups[starts[k], k].append(job - 1)
        return _timed_schedule(inst, groups)

    if model.name == SPF:
        if batches is None:
            raise ValueError("SPF decoding needs the batch lists the model was built from.")
        timed: list[tuple[Batch, int]] = [(batches[j - 1][s - 1], t) for j, s, t in _chosen(model, values, "z")]
        return Schedule(tuple(sorted(timed, key=lambda entry: entry[1])))

    if model.name == ABF:
        position: dict[int, int] = {}
        for job, k in _chosen(model, values, "x"):
            position[job - 1] = max(position.get(job - 1, 0), k)
        slots: dict[int, list[int]] = defaultdict(list)
        for job, k in position.items():
            slots[k].append(job)
        sequence: list[tuple[Batch, int]] = []
        clock: int = 1
        for k in sorted(slots):
            batch: Batch = Batch.of(inst, slots[k])
            sequence.append((batch, clock))
            clock += inst.q[batch.family]
        return Schedule(tuple(sequence))

    raise ValueError(f"Unknown formulation '{model.name}'.")


def encode_schedule(
    model: LinearModel,
    inst: Instance,
    prep: PreprocessResult,
    schedule: Schedule,
    batches: Optional[Sequence[Sequence[Batch]]] = None,
) -> np.ndarray:
    """
    Writes a gap-free schedule as a solution vector of one of the formulations, used to seed solves.

    Args:
        model (LinearModel): The formulation.
        inst (Instance): The instance.
        prep (PreprocessResult): Bounds the model was built with.
        schedule (Schedule): Schedule using at most B_j batches of family j and ending within H_max.
        batches (Optional[Sequence[Sequence[Batch]]]): Batch lists of the SPF.

    Returns:
        Values in model variable order.
    """
    values: np.ndarray = np.zeros(model.num_variables)
    ordered: list[tuple[Batch, int]] = sorted(schedule.batches, key=lambda entry: entry[1])
    completion: dict[int, int] = schedule.completion_times(inst)
    if ordered and ordered[-1][1] + inst.q[ordered[-1][0].family] - 1 > prep.H_max:
        raise InfeasibleScheduleException("horizon", f"Schedule ends after period {prep.H_max}.")
    per_family: list[int] = [sum(1 for batch, _ in ordered if batch.family == j) for j in range(inst.m)]
    if any(count > bound for count, bound in zip(per_family, prep.B)):
        raise InfeasibleScheduleException("batch-count", f"Schedule uses {per_family} batches, bound {list(prep.B)}.")

    def assign(name: str, value: float) -> None:
        values[model.variable(name)] = value

    if model.name in (TIF, TIFV):
        for batch, start in ordered:
            assign(f"y{batch.family + 1}_{start}", 1)
            for i in batch.jobs:
                assign(f"x{i + 1}_{start}", 1)

    elif model.name == TIFM:
        slots: list[range] = batch_slots(prep)
        used: list[int] = [0] * inst.m
        clock: int = max((start + inst.q[batch.family] for batch, start in ordered), default=1)
        for batch, start in ordered:
            k: int = slots[batch.family][used[batch.family]]
            used[batch.family] += 1
            assign(f"x{k}_{start}", 1)
            for i in batch.jobs:
                assign(f"y{i + 1}_{k}", 1)
        for j in range(inst.m):
            for k in slots[j][used[j] :]:
                if clock > len(start_periods(inst, prep, j)):
                    raise InfeasibleScheduleException("horizon", "No room left for the empty batch slots.")
                assign(f"x{k}_{clock}", 1)
                clock += inst.q[j]
        for i, value in completion.items():
            assign(f"C{i + 1}", value)

    elif model.name == SPF:
        if batches is None:
            raise ValueError("SPF encoding needs the batch lists the model was built from.")
        for batch, start in ordered:
            s: int = batches[batch.family].index(batch) + 1
            assign(f"z{batch.family + 1}_{s}_{start}", 1)

    elif model.name == ABF:
        slots_family: list[int] = [batch.family for batch, _ in ordered]
        for j in range(inst.m):
            slots_family += [j] * (prep.B[j] - per_family[j])
        elapsed: int = 0
        for k, (batch, _) in enumerate(ordered, start=1):
            elapsed += inst.q[batch.family]
            assign(f"u{k}", 1)
            for i in batch.jobs:
                assign(f"C{i + 1}", elapsed)
                for slot in range(1, k + 1):
                    assign(f"x{i + 1}_{slot}", 1)
                    assign(f"tau{i + 1}_{slot}_{slots_family[slot - 1] + 1}", 1)
        for k, j in enumerate(slots_family, start=1):
            assign(f"y{j + 1}_{k}", 1)

    else:
        raise ValueError(f"Unknown formulation '{model.name}'.")
    return values


FORMULATION_BUILDERS: dict[str, Callable[[Instance, PreprocessResult], LinearModel]] = {
    ABF: build_abf,
    TIF: build_tif,
    TIFV: build_tifv,
    TIFM: build_tifm,
}
