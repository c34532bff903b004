import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from config import SolverSettings
from exceptions import IterationLimitException, MalformedModelException, NoFeasibleFoundException
from linear_model import LinearModel
from logger import get_logger
from lp_engine import INFEASIBLE, ITERATION_LIMIT, OPTIMAL, TIME_LIMIT, UNBOUNDED, LpSolution, SimplexSolver
from utils import Deadline, Limits

logger: logging.Logger = get_logger()

NODE_LIMIT: str = "node-limit"
GAP_LIMIT: str = "gap-limit"
STOPPED: str = "stopped"

IncumbentCallback = Callable[[np.ndarray, float], None]
# Receives node count, incumbent objective and global bound, returns True to stop the search
NodeCallback = Callable[[int, float, float], bool]


@dataclass
class MipResult:
    """
    Outcome of a branch-and-bound run.

    Attributes:
        status (str): optimal, infeasible, unbounded, node-limit, time-limit, gap-limit or stopped.
        best_solution (Optional[np.ndarray]): Incumbent values, None without incumbent.
        objective (float): Incumbent objective, inf without incumbent.
        best_bound (float): Valid lower bound on the optimum.
        gap (float): Absolute gap between incumbent and bound.
        node_count (int): Number of LP relaxations solved.
    """

    status: str
    best_solution: Optional[np.ndarray]
    objective: float
    best_bound: float
    gap: float
    node_count: int

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


@dataclass
class _Node:
    lower: np.ndarray
    upper: np.ndarray
    bound: float
    depth: int


def solve_mip(
    model: LinearModel,
    limits: Optional[Limits] = None,
    incumbent_hint: Optional[np.ndarray] = None,
    settings: Optional[SolverSettings] = None,
    integer_objective: bool = False,
    on_incumbent: Optional[IncumbentCallback] = None,
    on_node: Optional[NodeCallback] = None,
) -> MipResult:
    """
    Depth-first branch and bound over the LP engine. Branches on the integer variable whose fractional
    part is closest to 0.5 and explores the rounded-up child first.

    Args:
        model (LinearModel): Model with finite bounds on every integer variable.
        limits (Optional[Limits]): Time, node and absolute gap limits.
        incumbent_hint (Optional[np.ndarray]): Starting solution, ignored when infeasible.
        settings (Optional[SolverSettings]): Tolerances.
        integer_objective (bool): Every feasible solution has an integral objective, allows pruning by one unit.
        on_incumbent (Optional[IncumbentCallback]): Called on every improving solution.
        on_node (Optional[NodeCallback]): Called after every node.

    Returns:
        Branch-and-bound result.
    """
    settings = settings if settings else SolverSettings()
    limits = limits if limits else Limits()
    deadline: Deadline = Deadline(limits.time_limit)
    tolerance: float = settings.mip.integrality_tolerance
    integers: np.ndarray = np.array(model.integer_indices(), dtype=int)

    lower: np.ndarray = model.lower_bounds()
    upper: np.ndarray = model.upper_bounds()
    if integers.size and not (np.isfinite(lower[integers]).all() and np.isfinite(upper[integers]).all()):
        raise MalformedModelException(f"Model {model.name} has an integer variable with an infinite bound.")
    lower[integers] = np.ceil(lower[integers] - tolerance)
    upper[integers] = np.floor(upper[integers] + tolerance)

    incumbent: Optional[np.ndarray] = None
    incumbent_value: float = math.inf
    if incumbent_hint is not None:
        hint: np.ndarray = np.asarray(incumbent_hint, dtype=float)
        if hint.size == model.num_variables and model.is_feasible(hint):
            incumbent, incumbent_value = hint.copy(), model.objective_value(hint)
            logger.debug(f"Starting {model.name} from hinted incumbent {incumbent_value}.")
        else:
            logger.warning(f"Incumbent hint for {model.name} is infeasible and ignored.")

    def cutoff() -> float:
        if incumbent is None:
            return math.inf
        if integer_objective:
            return incumbent_value - 1.0 + settings.mip.prune_tolerance
        return incumbent_value - settings.mip.prune_tolerance

    if np.all(lower == upper):
        values: np.ndarray = lower.copy()
        if model.is_feasible(values):
            objective: float = model.objective_value(values)
            return MipResult(OPTIMAL, values, objective, objective, 0.0, 0)
        return MipResult(INFEASIBLE, None, math.inf, math.inf, math.inf, 0)

    solver: SimplexSolver = SimplexSolver(model, settings.lp)
    stack: list[_Node] = [_Node(lower, upper, -math.inf, 0)]
    nodes: int = 0
    status: Optional[str] = None

    while stack:
        if limits.node_limit is not None and nodes >= limits.node_limit:
            status = NODE_LIMIT
            break
        if deadline.expired():
            status = TIME_LIMIT
            break
        node: _Node = stack.pop()
        if node.bound >= cutoff():
            continue

        solver.set_bounds(node.lower, node.upper)
        solution: LpSolution = solver.solve(deadline=deadline)
        if solution.status == TIME_LIMIT:
            stack.append(node)
            status = TIME_LIMIT
            break
        nodes += 1
        if solution.status == ITERATION_LIMIT:
            raise IterationLimitException(f"Node {nodes} of {model.name}.")
        if solution.status == UNBOUNDED:
            logger.warning(f"LP relaxation of {model.name} is unbounded.")
            return MipResult(UNBOUNDED, incumbent, -math.inf, -math.inf, math.inf, nodes)

        if solution.status == INFEASIBLE:
            bound: float = math.inf
        else:
            bound = max(node.bound, solution.objective)
        if bound < cutoff():
            values = solution.primal
            branch: Optional[int] = _branching_variable(values, integers, tolerance)
            if branch is None:
                candidate: np.ndarray = values.copy()
                candidate[integers] = np.round(candidate[integers])
                value: float = model.objective_value(candidate)
                if value < incumbent_value - settings.mip.prune_tolerance:
                    incumbent, incumbent_value = candidate, value
                    logger.debug(f"{model.name}: incumbent {value} at node {nodes}, depth {node.depth}.")
                    if on_incumbent:
                        on_incumbent(candidate, value)
            else:
                down_upper: np.ndarray = node.upper.copy()
                down_upper[branch] = math.floor(values[branch])
                up_lower: np.ndarray = node.lower.copy()
                up_lower[branch] = math.ceil(values[branch])
                stack.append(_Node(node.lower, down_upper, bound, node.depth + 1))
                stack.append(_Node(up_lower, node.upper, bound, node.depth + 1))

        global_bound: float = min((open_node.bound for open_node in stack), default=incumbent_value)
        global_bound = min(global_bound, incumbent_value)
        if on_node and on_node(nodes, incumbent_value, global_bound):
            status = STOPPED
            break
        if (
            limits.gap_abs is not None
            and incumbent is not None
            and stack
            and incumbent_value - global_bound <= limits.gap_abs
        ):
            status = GAP_LIMIT
            break

    if status is None:
        if incumbent is None:
            logger.debug(f"{model.name} is infeasible, {nodes} nodes.")
            return MipResult(INFEASIBLE, None, math.inf, math.inf, math.inf, nodes)
        logger.debug(f"{model.name} solved to optimality: {incumbent_value}, {nodes} nodes.")
        return MipResult(OPTIMAL, incumbent, incumbent_value, incumbent_value, 0.0, nodes)

    if incumbent is None:
        raise NoFeasibleFoundException(f"{model.name}: {status} after {nodes} nodes.")
    best_bound: float = min(min((open_node.bound for open_node in stack), default=incumbent_value), incumbent_value)
    logger.debug(f"{model.name} stopped on {status}: incumbent {incumbent_value}, bound {best_bound}.")
    return MipResult(status, incumbent, incumbent_value, best_bound, incumbent_value - best_bound, nodes)


def _branching_variable(values: np.ndarray, integers: np.ndarray, tolerance: float) -> Optional[int]:
    if integers.size == 0:
        return None
    fractions: np.ndarray = values[integers] - np.floor(values[integers])
    fractional: np.ndarray = (fractions > tolerance) & (fractions < 1.0 - tolerance)
    if not fractional.any():
        return None
    distance: np.ndarray = np.where(fractional, np.abs(fractions - 0.5), math.inf)
    # argmin keeps the lowest index among ties
    return int(integers[np.argmin(distance)])
