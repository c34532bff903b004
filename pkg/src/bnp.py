import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from tqdm import tqdm

from branch_state import BranchState
from colgen import CgConfig, ColgenResult, Column, initial_columns, run_colgen
from config import SolverSettings
from constants import PROGRESS_BAR_FORMAT
from exceptions import NoFractionalException
from instance import Batch, Instance, Schedule, evaluate
from logger import get_logger
from lp_engine import OPTIMAL
from mip_engine import GAP_LIMIT, NODE_LIMIT, TIME_LIMIT
from preprocess import PreprocessResult, compute_bounds
from successive_knapsack import sk_heuristic
from utils import Deadline, Limits

logger: logging.Logger = get_logger()

PAIR: str = "pair"
VARIABLE: str = "variable"


@dataclass(frozen=True)
class BranchDecision:
    """
    Attributes:
        kind (str): pair or variable.
        pair (Optional[tuple[int, int]]): Jobs to keep together or apart.
        column (Optional[Column]): Column to fix to one or zero.
        score (float): Pair share of the two jobs' mass, or the column value.
    """

    kind: str
    pair: Optional[tuple[int, int]] = None
    column: Optional[Column] = None
    score: float = 0.0


def select_branch(support: Sequence[tuple[Column, float]], tolerance: float = 1e-6) -> BranchDecision:
    """
    Picks the job pair whose joint share of their batches is closest to one half, among pairs that sit
    together with a total value strictly between zero and one. Falls back to the fractional column
    closest to one half when no pair qualifies.

    Args:
        support (Sequence[tuple[Column, float]]): Master columns with positive value.
        tolerance (float): Integrality tolerance.

    Returns:
        Branching decision.
    """
    if all(value <= tolerance or value >= 1.0 - tolerance for _, value in support):
        raise NoFractionalException()

    mass: dict[int, float] = {}
    together: dict[tuple[int, int], float] = {}
    for column, value in support:
        for position, i in enumerate(column.jobs):
            mass[i] = mass.get(i, 0.0) + value
            for k in column.jobs[position + 1 :]:
                together[i, k] = together.get((i, k), 0.0) + value

    best: Optional[BranchDecision] = None
    best_distance: float = math.inf
    for pair in sorted(together):
        shared: float = together[pair]
        if not tolerance < shared < 1.0 - tolerance:
            continue
        score: float = shared / (0.5 * (mass[pair[0]] + mass[pair[1]]))
        distance: float = abs(score - 0.5)
        if distance < best_distance - 1e-12:
            best, best_distance = BranchDecision(PAIR, pair=pair, score=score), distance
    if best is not None:
        return best

    for column, value in support:
        if column.is_super or not tolerance < value < 1.0 - tolerance:
            continue
        distance = abs(value - 0.5)
        if distance < best_distance - 1e-12:
            best, best_distance = BranchDecision(VARIABLE, column=column, score=value), distance
    if best is None:
        raise NoFractionalException()
    return best


@dataclass
class BnPNode:
    """
    Attributes:
        state (BranchState): Decisions on the path from the root.
        bound (float): Lower bound inherited from the parent.
        depth (int): Distance from the root.
        decision (str): Branch that created the node.
        columns (list[Column]): Parent pool to start from.
        basis (list[str]): Parent basic columns.
    """

    state: BranchState
    bound: float
    depth: int
    decision: str = "root"
    columns: list[Column] = field(default_factory=list)
    basis: list[str] = field(default_factory=list)


@dataclass
class BnpResult:
    """
    Attributes:
        status (str): optimal, time-limit, node-limit or gap-limit.
        objective (int): Incumbent objective.
        schedule (Schedule): Incumbent schedule.
        node_count (int): Nodes whose master was solved.
        root_lp (float): Root column generation value.
        root_converged (bool): Root value is a valid lower bound.
        best_bound (float): Valid lower bound on the optimum.
        gap (float): Objective minus bound.
    """

    status: str
    objective: int
    schedule: Schedule
    node_count: int
    root_lp: float
    root_converged: bool
    best_bound: float
    gap: float


def _integral_schedule(inst: Instance, result: ColgenResult, tolerance: float) -> Optional[Schedule]:
    chosen: list[tuple[Batch, int]] = []
    for column, value in result.support(tolerance):
        if value < 1.0 - tolerance or column.is_super:
            return None
        chosen.append((column.batch(inst), column.start))
    return Schedule(tuple(sorted(chosen, key=lambda entry: entry[1])))


def solve_bnp(
    inst: Instance,
    limits: Optional[Limits] = None,
    settings: Optional[SolverSettings] = None,
    batchless: bool = True,
    prep: Optional[PreprocessResult] = None,
    batches: Optional[Sequence[Sequence[Batch]]] = None,
    show_progress: bool = False,
) -> BnpResult:
    """
    Depth-first branch and price on the set-partitioning model, seeded with the successive knapsack schedule.
    Job pairs are branched together first, fixed columns are branched to one first.

    Args:
        inst (Instance): The instance.
        limits (Optional[Limits]): Time, node and gap limits. With a time limit this is the truncated variant.
        settings (Optional[SolverSettings]): Solver settings.
        batchless (bool): Knapsack pricing, otherwise pricing over the explicit batch lists.
        prep (Optional[PreprocessResult]): Bounds, computed when None.
        batches (Optional[Sequence[Sequence[Batch]]]): Feasible batches, needed when not batchless.
        show_progress (bool): Show a node counter.

    Returns:
        Incumbent, bound and search statistics.
    """
    settings = settings if settings else SolverSettings()
    limits = limits if limits else Limits()
    prep = prep if prep else compute_bounds(inst)
    deadline: Deadline = Deadline(limits.time_limit)
    tolerance: float = settings.mip.integrality_tolerance

    incumbent: Schedule = sk_heuristic(inst)
    incumbent_value: int = evaluate(incumbent, inst)
    logger.debug(f"B&P starts from the successive knapsack schedule, objective {incumbent_value}.")

    def cutoff() -> float:
        return incumbent_value - 1.0 + settings.mip.prune_tolerance

    stack: list[BnPNode] = [BnPNode(BranchState(), -math.inf, 0, columns=initial_columns(inst, prep))]
    nodes: int = 0
    root_lp: float = -math.inf
    root_converged: bool = False
    status: Optional[str] = None
    progress: tqdm = tqdm(desc="B&P", unit="node", disable=not show_progress, bar_format=PROGRESS_BAR_FORMAT)

    while stack:
        if limits.node_limit is not None and nodes >= limits.node_limit:
            status = NODE_LIMIT
            break
        if deadline.expired():
            status = TIME_LIMIT
            break
        node: BnPNode = stack.pop()
        if node.bound >= cutoff() or not node.state.is_consistent(inst):
            continue

        per_family: int = settings.colgen.col_number_node_per_family
        if node.depth == 0:
            per_family = settings.colgen.col_number_root_per_family
        config: CgConfig = CgConfig.create(inst, prep, settings, per_family, deadline.remaining())
        result: ColgenResult = run_colgen(
            inst,
            prep,
            batchless=batchless,
            config=config,
            state=node.state,
            columns=node.columns,
            settings=settings,
            batches=batches,
            basis_hint=node.basis,
        )
        nodes += 1
        progress.update(1)
        if node.depth == 0:
            root_lp, root_converged = result.lp_value, result.converged
            logger.info(f"Root LP bound {root_lp:.4f} after {result.rounds} rounds, {len(result.columns)} columns.")

        if not result.converged and deadline.expired():
            stack.append(node)
            status = TIME_LIMIT
            break
        bound: float = max(node.bound, result.lp_value) if result.converged else node.bound
        if bound >= cutoff():
            continue

        schedule: Optional[Schedule] = _integral_schedule(inst, result, tolerance)
        if schedule is not None:
            value: int = evaluate(schedule, inst)
            if value < incumbent_value:
                incumbent, incumbent_value = schedule, value
                logger.info(f"B&P incumbent {value} at node {nodes}, depth {node.depth}.")
            continue

        try:
            decision: BranchDecision = select_branch(result.support(), tolerance)
        except NoFractionalException:
            # Integral but covered by super columns, no schedule below this node
            continue
        if decision.kind == PAIR:
            i, k = decision.pair
            logger.debug(f"Node {nodes}: branch on jobs {i + 1} and {k + 1}, share {decision.score:.3f}.")
            children: list[tuple[BranchState, str]] = [
                (node.state.apart(i, k), "apart"),
                (node.state.together(i, k), "together"),
            ]
        else:
            column: Column = decision.column
            batch: Batch = column.batch(inst)
            logger.debug(f"Node {nodes}: branch on column {column.name}, value {decision.score:.3f}.")
            children = [(node.state.forbid(batch, column.start), "zero"), (node.state.fix(batch, column.start), "one")]
        # Second child is popped first
        for state, label in children:
            stack.append(BnPNode(state, bound, node.depth + 1, label, result.columns, result.basis))

        if limits.gap_abs is not None:
            open_bound: float = min((open_node.bound for open_node in stack), default=incumbent_value)
            if incumbent_value - open_bound <= limits.gap_abs:
                status = GAP_LIMIT
                break
    progress.close()

    if status is None:
        status = OPTIMAL
        best_bound: float = float(incumbent_value)
    else:
        best_bound = min(min((open_node.bound for open_node in stack), default=incumbent_value), incumbent_value)
    logger.info(f"B&P {status}: objective {incumbent_value}, bound {best_bound:.4f}, {nodes} nodes.")
    return BnpResult(
        status=status,
        objective=incumbent_value,
        schedule=incumbent,
        node_count=nodes,
        root_lp=root_lp,
        root_converged=root_converged,
        best_bound=best_bound,
        gap=incumbent_value - best_bound,
    )


def tbnp(inst: Instance, time_limit: float, settings: Optional[SolverSettings] = None, **kwargs) -> BnpResult:
    return solve_bnp(inst, Limits(time_limit=time_limit), settings, **kwargs)
