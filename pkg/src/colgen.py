import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from branch_state import BranchState
from config import SolverSettings
from constants import SUPER_COLUMN_PREFIX
from exceptions import IterationLimitException, NumericalFailureException
from formulations import spf_cost, start_periods
from instance import Batch, Instance, Schedule
from linear_model import EQ, LE, LinearModel
from logger import get_logger
from lp_engine import INFEASIBLE, ITERATION_LIMIT, TIME_LIMIT, LpSolution, SimplexSolver
from preprocess import PreprocessResult
from pricing import BatchPricer, DualSolution, price_with_state
from successive_knapsack import sk_heuristic
from utils import Deadline

logger: logging.Logger = get_logger()


@dataclass(frozen=True)
class Column:
    """
    Restricted master column: a batch of one family started in one period, or a super column covering one job.

    Attributes:
        family (int): Family of the jobs.
        jobs (tuple[int, ...]): Sorted job indices.
        start (int): Start period, 0 for super columns.
        cost (float): Objective coefficient.
        is_super (bool): Covers a single job row only and costs more than any schedule.
    """

    family: int
    jobs: tuple[int, ...]
    start: int
    cost: float
    is_super: bool = False

    @property
    def key(self) -> tuple[int, tuple[int, ...], int, bool]:
        return self.family, self.jobs, self.start, self.is_super

    @property
    def name(self) -> str:
        if self.is_super:
            return f"{SUPER_COLUMN_PREFIX}{self.jobs[0] + 1}"
        return f"z{self.family + 1}_{self.start}_" + "-".join(str(i + 1) for i in self.jobs)

    def batch(self, inst: Instance) -> Batch:
        return Batch.of(inst, self.jobs)

    def rows(self, inst: Instance, prep: PreprocessResult) -> dict[int, float]:
        """
        Row coefficients in restricted master order: periods 1..H_max first, then one row per job.
        """
        coefficients: dict[int, float] = {prep.H_max + i: 1.0 for i in self.jobs}
        if not self.is_super:
            coefficients.update({t - 1: 1.0 for t in range(self.start, self.start + inst.q[self.family])})
        return coefficients


def make_column(inst: Instance, batch: Batch, start: int) -> Column:
    return Column(batch.family, batch.jobs, start, float(spf_cost(inst, batch, start)))


def super_cost(inst: Instance, prep: PreprocessResult) -> float:
    return float(sum(inst.w) * prep.H_max + 1)


def super_columns(inst: Instance, prep: PreprocessResult) -> list[Column]:
    cost: float = super_cost(inst, prep)
    return [Column(inst.family_of[i], (i,), 0, cost, True) for i in range(inst.n)]


def schedule_columns(inst: Instance, schedule: Schedule) -> list[Column]:
    return [make_column(inst, batch, start) for batch, start in schedule.batches]


def initial_columns(inst: Instance, prep: PreprocessResult) -> list[Column]:
    """
    Seed pool: the successive knapsack schedule at its own start periods plus one super column per job.
    """
    return schedule_columns(inst, sk_heuristic(inst)) + super_columns(inst, prep)


@dataclass(frozen=True)
class CgConfig:
    """
    Column generation parameters.

    Attributes:
        col_number (int): Most columns added per round.
        super_cost (float): Cost of every super column.
        max_rounds (int): Round limit, hitting it leaves the bound unconverged.
        time_limit (Optional[float]): Wall-clock seconds.
        bland_after_stalled_rounds (int): Rounds without LP improvement before switching to Bland's rule.
        optimality_tolerance (float): Columns need a reduced cost below minus this value.
    """

    col_number: int
    super_cost: float
    max_rounds: int = 100_000
    time_limit: Optional[float] = None
    bland_after_stalled_rounds: int = 50
    optimality_tolerance: float = 1e-7

    def __post_init__(self) -> None:
        if self.col_number <= 0:
            raise ValueError(f"col_number must be positive, got {self.col_number}.")

    @classmethod
    def create(
        cls,
        inst: Instance,
        prep: PreprocessResult,
        settings: SolverSettings,
        per_family: int,
        time_limit: Optional[float] = None,
    ) -> "CgConfig":
        return cls(
            col_number=per_family * inst.m,
            super_cost=super_cost(inst, prep),
            max_rounds=settings.colgen.max_rounds,
            time_limit=time_limit,
            bland_after_stalled_rounds=settings.colgen.bland_after_stalled_rounds,
            optimality_tolerance=settings.lp.optimality_tolerance,
        )


@dataclass
class ColgenResult:
    """
    Attributes:
        lp_value (float): Last restricted master optimum, a lower bound when converged, nan when time ran out first.
        columns (list[Column]): Final pool in master variable order, fixed columns included.
        values (np.ndarray): Master solution per column.
        duals (DualSolution): Final duals.
        converged (bool): No column prices out.
        rounds (int): Master solves.
        iterations (int): Simplex iterations over all rounds.
        basis (list[str]): Final basic columns, usable to warm start a child master.
    """

    lp_value: float
    columns: list[Column]
    values: np.ndarray
    duals: DualSolution
    converged: bool
    rounds: int
    iterations: int = 0
    basis: list[str] = field(default_factory=list)

    def support(self, tolerance: float = 1e-9) -> list[tuple[Column, float]]:
        return [(column, float(value)) for column, value in zip(self.columns, self.values) if value > tolerance]


class RestrictedMaster:
    """
    Set-partitioning LP over a column pool: period rows at most one, job rows exactly one. Columns that
    violate the branching state are left out and fixed columns get lower bound one.
    """

    def __init__(
        self,
        inst: Instance,
        prep: PreprocessResult,
        columns: Iterable[Column],
        state: BranchState,
        settings: SolverSettings,
    ) -> None:
        self.inst: Instance = inst
        self.prep: PreprocessResult = prep
        self.state: BranchState = state
        self.model: LinearModel = LinearModel("rmp")
        for t in range(1, prep.H_max + 1):
            self.model.add_row(f"period{t}", LE, 1, [])
        for i in range(inst.n):
            self.model.add_row(f"job{i + 1}", EQ, 1, [])
        self.solver: SimplexSolver = SimplexSolver(self.model, settings.lp)
        self.columns: list[Column] = []
        self.keys: set[tuple] = set()

        fixed: list[Column] = [make_column(inst, batch, start) for batch, start in state.fixed]
        self.add(fixed)
        kept: list[Column] = [column for column in columns if self._admissible(column)]
        self.add(kept)
        lower: np.ndarray = np.zeros(len(self.columns))
        lower[: len(fixed)] = 1.0
        self.solver.set_bounds(lower, np.full(len(self.columns), math.inf))

    def _admissible(self, column: Column) -> bool:
        if column.is_super:
            return column.jobs[0] not in self.state.fixed_jobs()
        return self.state.allows(self.inst, column.batch(self.inst), column.start)

    def add(self, columns: Sequence[Column]) -> int:
        fresh: list[Column] = []
        for column in columns:
            if column.key not in self.keys:
                self.keys.add(column.key)
                fresh.append(column)
        if fresh:
            self.solver.add_columns([(c.name, c.cost, c.rows(self.inst, self.prep)) for c in fresh])
            self.columns += fresh
        return len(fresh)

    def contains(self, family: int, jobs: tuple[int, ...], start: int) -> bool:
        return (family, jobs, start, False) in self.keys

    def solve(
        self,
        basis_hint: Optional[Iterable[str]] = None,
        force_bland: bool = False,
        deadline: Optional[Deadline] = None,
    ) -> LpSolution:
        return self.solver.solve(basis_hint, force_bland, deadline)

    def duals(self, solution: LpSolution) -> DualSolution:
        horizon: int = self.prep.H_max
        return DualSolution(u=np.minimum(solution.dual[:horizon], 0.0), pi=solution.dual[horizon:].copy())


def run_colgen(
    inst: Instance,
    prep: PreprocessResult,
    batchless: bool = True,
    config: Optional[CgConfig] = None,
    state: Optional[BranchState] = None,
    columns: Optional[Iterable[Column]] = None,
    settings: Optional[SolverSettings] = None,
    batches: Optional[Sequence[Sequence[Batch]]] = None,
    basis_hint: Optional[Iterable[str]] = None,
) -> ColgenResult:
    """
    Column generation on the set-partitioning LP: solve the restricted master, price every family and
    start period, add the lowest reduced cost columns, and repeat until nothing prices out.

    Args:
        inst (Instance): The instance.
        prep (PreprocessResult): Horizon and batch bounds.
        batchless (bool): Price with knapsacks, otherwise scan the explicit batch lists.
        config (Optional[CgConfig]): Column generation parameters, root defaults when None.
        state (Optional[BranchState]): Branching decisions to respect.
        columns (Optional[Iterable[Column]]): Starting pool, the seed pool when None.
        settings (Optional[SolverSettings]): Solver settings.
        batches (Optional[Sequence[Sequence[Batch]]]): Feasible batches per family, needed when not batchless.
        basis_hint (Optional[Iterable[str]]): Column names to start basic.

    Returns:
        Final master value, pool and duals.
    """
    settings = settings if settings else SolverSettings()
    config = config if config else CgConfig.create(inst, prep, settings, settings.colgen.col_number_root_per_family)
    state = state if state else BranchState()
    pool: list[Column] = list(columns) if columns is not None else initial_columns(inst, prep)
    pool += super_columns(inst, prep)

    pricer: Optional[BatchPricer] = None
    if not batchless:
        if batches is None:
            raise ValueError("Pricing over explicit batches needs the batch lists.")
        pricer = BatchPricer(inst, batches)

    master: RestrictedMaster = RestrictedMaster(inst, prep, pool, state, settings)
    deadline: Deadline = Deadline(config.time_limit)
    occupied: set[int] = state.occupied_periods(inst)
    best_value: float = math.inf
    stalled: int = 0
    rounds: int = 0
    iterations: int = 0
    converged: bool = False
    hint: Optional[Iterable[str]] = basis_hint
    last: Optional[LpSolution] = None

    while True:
        bland: bool = stalled >= config.bland_after_stalled_rounds
        solution: LpSolution = master.solve(hint, force_bland=bland, deadline=deadline)
        hint = None
        rounds += 1
        iterations += solution.iterations
        if solution.status == TIME_LIMIT:
            logger.warning(f"Restricted master of round {rounds} stopped by the time limit.")
            break
        if solution.status == ITERATION_LIMIT:
            raise IterationLimitException(f"Restricted master, round {rounds}.")
        if solution.status == INFEASIBLE:
            raise NumericalFailureException("Restricted master became infeasible despite super columns.")
        last = solution

        if solution.objective < best_value - 1e-9:
            best_value = solution.objective
            stalled = 0
        else:
            stalled += 1
            if stalled == config.bland_after_stalled_rounds:
                logger.debug(f"Column generation stalled for {stalled} rounds, switching to Bland's rule.")

        duals: DualSolution = master.duals(solution)
        if rounds >= config.max_rounds or deadline.expired():
            logger.warning(f"Column generation stopped after {rounds} rounds without convergence.")
            break

        candidates: list[tuple[float, int, int, tuple[int, ...]]] = []
        duplicates: int = 0
        for j in range(inst.m):
            for t in start_periods(inst, prep, j):
                if occupied and occupied & set(range(t, t + inst.q[j])):
                    continue
                if pricer is not None:
                    jobs, reduced = pricer.price(j, t, duals, state)
                else:
                    jobs, reduced = price_with_state(inst, j, t, duals, state)
                if not jobs or reduced >= -config.optimality_tolerance:
                    continue
                if master.contains(j, jobs, t):
                    duplicates += 1
                    continue
                candidates.append((reduced, j, t, jobs))

        if not candidates:
            if duplicates:
                logger.debug(f"{duplicates} pricing hits already in the pool, treated as converged.")
            converged = True
            break
        candidates.sort()
        selected: list[Column] = [
            make_column(inst, Batch.of(inst, jobs), t) for _, _, t, jobs in candidates[: config.col_number]
        ]
        master.add(selected)
        logger.debug(
            f"CG round {rounds}: LP {solution.objective:.6f}, {len(candidates)} candidates, "
            f"best reduced cost {candidates[0][0]:.6f}, pool {len(master.columns)}."
        )

    values: np.ndarray = np.zeros(len(master.columns))
    if last is None:
        logger.warning(f"Column generation ran out of time before the first master optimum, {rounds} rounds.")
        empty: DualSolution = DualSolution(u=np.zeros(prep.H_max), pi=np.zeros(inst.n))
        return ColgenResult(math.nan, list(master.columns), values, empty, False, rounds, iterations)

    # Columns priced after the last master optimum stay at zero
    values[: last.primal.size] = last.primal
    logger.debug(f"CG finished: LP {last.objective:.6f}, {rounds} rounds, converged {converged}.")
    return ColgenResult(
        lp_value=last.objective,
        columns=list(master.columns),
        values=values,
        duals=master.duals(last),
        converged=converged,
        rounds=rounds,
        iterations=iterations,
        basis=last.basis,
    )
