import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from colgen import CgConfig, ColgenResult, Column, run_colgen, schedule_columns
from config import SolverSettings
from exceptions import NoFeasibleFoundException
from formulations import apply_proximity, build_tif, decode_schedule, encode_schedule
from instance import Instance, Schedule, evaluate
from linear_model import EQ, LE, LinearModel
from logger import get_logger
from lp_engine import ITERATION_LIMIT, OPTIMAL
from mip_engine import TIME_LIMIT, MipResult, solve_mip
from preprocess import PreprocessResult, compute_bounds
from successive_knapsack import sk_heuristic
from utils import Deadline, Limits

logger: logging.Logger = get_logger()


@dataclass
class HeuristicResult:
    """
    Attributes:
        schedule (Schedule): Best schedule found.
        objective (int): Its total weighted completion time.
        status (str): optimal when the search proved optimality, otherwise the limit that stopped it.
        lower_bound (Optional[float]): Bound computed on the way, None when the method has none.
        iterations (int): Column generation rounds or proximity iterations.
        nodes (int): Branch-and-bound nodes of the integer solves.
    """

    schedule: Schedule
    objective: int
    status: str
    lower_bound: Optional[float] = None
    iterations: int = 0
    nodes: int = 0


def pool_model(inst: Instance, prep: PreprocessResult, columns: list[Column]) -> LinearModel:
    """
    Set-partitioning integer model restricted to a column pool, one binary per column in pool order.
    """
    model: LinearModel = LinearModel("cgh")
    indices: list[int] = [model.add_binary(column.name, column.cost) for column in columns]
    rows: list[list[tuple[int, float]]] = [[] for _ in range(prep.H_max + inst.n)]
    for index, column in zip(indices, columns):
        for row, value in column.rows(inst, prep).items():
            rows[row].append((index, value))
    for t in range(1, prep.H_max + 1):
        model.add_row(f"period{t}", LE, 1, rows[t - 1])
    for i in range(inst.n):
        model.add_row(f"job{i + 1}", EQ, 1, rows[prep.H_max + i])
    return model


def cgh(
    inst: Instance,
    settings: Optional[SolverSettings] = None,
    limits: Optional[Limits] = None,
    prep: Optional[PreprocessResult] = None,
) -> HeuristicResult:
    """
    Column generation at the root followed by an integer solve over the final pool.

    Args:
        inst (Instance): The instance.
        settings (Optional[SolverSettings]): Solver settings, cgh_col_number_per_family columns per family a round.
        limits (Optional[Limits]): Time and node limits, shared by both phases.
        prep (Optional[PreprocessResult]): Bounds, computed when None.

    Returns:
        Best pool schedule with the column generation bound.
    """
    settings = settings if settings else SolverSettings()
    limits = limits if limits else Limits()
    prep = prep if prep else compute_bounds(inst)
    deadline: Deadline = Deadline(limits.time_limit)

    per_family: int = settings.colgen.cgh_col_number_per_family
    config: CgConfig = CgConfig.create(inst, prep, settings, per_family, limits.time_limit)
    root: ColgenResult = run_colgen(inst, prep, config=config, settings=settings)
    logger.info(f"CGH pool of {len(root.columns)} columns, LP bound {root.lp_value:.4f}.")

    model: LinearModel = pool_model(inst, prep, root.columns)
    hint: np.ndarray = np.zeros(model.num_variables)
    for column in schedule_columns(inst, sk_heuristic(inst)):
        index: Optional[int] = model.find_variable(column.name)
        if index is not None:
            hint[index] = 1.0
    mip_limits: Limits = Limits(time_limit=deadline.remaining(), node_limit=limits.node_limit)
    result: MipResult = solve_mip(model, mip_limits, hint, settings, integer_objective=True)

    chosen: list[Column] = [column for column, value in zip(root.columns, result.best_solution) if value > 0.5]
    if any(column.is_super for column in chosen):
        raise NoFeasibleFoundException("Pool solution relies on a super column.")
    schedule: Schedule = Schedule(
        tuple(sorted(((column.batch(inst), column.start) for column in chosen), key=lambda entry: entry[1]))
    )
    objective: int = evaluate(schedule, inst)
    lower_bound: Optional[float] = root.lp_value if root.converged else None
    return HeuristicResult(schedule, objective, result.status, lower_bound, root.rounds, result.node_count)


def proximity_search(
    inst: Instance,
    limits: Optional[Limits] = None,
    settings: Optional[SolverSettings] = None,
    prep: Optional[PreprocessResult] = None,
) -> HeuristicResult:
    """
    Proximity search on the time-indexed model, started from the successive knapsack schedule. Each iteration
    looks for the closest solution at least theta = alpha * reference cost cheaper. Improvements recenter the
    reference, failures shrink alpha.

    Args:
        inst (Instance): The instance.
        limits (Optional[Limits]): Overall time limit, the node limit caps every iteration's search.
        settings (Optional[SolverSettings]): Proximity parameters in settings.proximity.
        prep (Optional[PreprocessResult]): Bounds, computed when None.

    Returns:
        Best schedule found, status optimal when the last iteration proved that nothing cheaper exists.
    """
    settings = settings if settings else SolverSettings()
    limits = limits if limits else Limits()
    prep = prep if prep else compute_bounds(inst)
    parameters = settings.proximity
    deadline: Deadline = Deadline(limits.time_limit)

    model: LinearModel = build_tif(inst, prep)
    binaries: int = len(model.binary_indices())
    best: Schedule = sk_heuristic(inst)
    best_value: int = evaluate(best, inst)
    reference: np.ndarray = encode_schedule(model, inst, prep, best)
    alpha: float = parameters.alpha
    status: str = ITERATION_LIMIT
    nodes: int = 0
    iteration: int = 0

    while iteration < parameters.max_iterations:
        if deadline.expired():
            status = TIME_LIMIT
            break
        iteration += 1
        theta: float = alpha * best_value
        proximity: LinearModel = apply_proximity(model, reference, theta, parameters.big_m)
        seconds: Optional[float] = None
        if limits.time_limit is not None:
            seconds = min(parameters.iteration_seconds, deadline.remaining())
        node_limit: int = parameters.iteration_nodes
        if limits.node_limit is not None:
            node_limit = min(node_limit, limits.node_limit)
        budget: Limits = Limits(seconds, node_limit, parameters.gap_fraction * parameters.big_m)
        # The reference with omega at one always satisfies the soft cutoff
        hint: np.ndarray = np.append(reference, 1.0)
        result: MipResult = solve_mip(proximity, budget, hint, settings)
        nodes += result.node_count

        values: np.ndarray = np.round(result.best_solution[: model.num_variables])
        cost: float = model.objective_value(values)
        if cost < best_value - 0.5:
            candidate: Schedule = decode_schedule(model, inst, values)
            best, best_value, reference = candidate, evaluate(candidate, inst), values
            logger.info(f"PS iteration {iteration}: improved to {best_value} (theta {theta:.3f}).")
            continue

        proven: bool = result.best_bound > binaries
        if proven and theta <= 1.0:
            status = OPTIMAL
            logger.info(f"PS iteration {iteration}: no cheaper schedule exists, {best_value} is optimal.")
            break
        alpha *= parameters.alpha_factor
        logger.info(f"PS iteration {iteration}: no improvement by {theta:.3f}, alpha now {alpha:.5f}.")

    return HeuristicResult(best, best_value, status, None, iteration, nodes)
