import logging
import time
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from batch_enum import enumerate_all
from bnp import BnpResult, solve_bnp
from colgen import CgConfig, ColgenResult, run_colgen
from config import SolverSettings
from constants import FORMULATIONS
from exceptions import ArgumentUnknownCommandException
from formulations import FORMULATION_BUILDERS, SPF, build_spf, decode_schedule, encode_schedule
from heuristics import HeuristicResult, cgh, proximity_search
from instance import Batch, Instance, Schedule, evaluate
from linear_model import LinearModel
from logger import get_logger
from lp_engine import OPTIMAL
from mip_engine import MipResult, solve_mip
from oracle import OracleResult, brute_force
from preprocess import PreprocessResult, compute_bounds, trivial_bounds
from successive_knapsack import sk_heuristic
from utils import Limits

logger: logging.Logger = get_logger()


@dataclass
class SolveOutcome:
    """
    Uniform result of every solution method.

    Attributes:
        method (str): Method name.
        status (str): optimal, or the limit that stopped the method, heuristic for plain constructions.
        objective (int): Objective of the schedule.
        schedule (Schedule): Best schedule.
        lower_bound (Optional[float]): Valid lower bound when the method computes one.
        nodes (int): Search nodes.
        seconds (float): Wall-clock time.
        details (dict[str, Any]): Method specific figures such as the root LP value.
    """

    method: str
    status: str
    objective: int
    schedule: Schedule
    lower_bound: Optional[float] = None
    nodes: int = 0
    seconds: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)


def solve_formulation(
    inst: Instance,
    formulation: str,
    limits: Optional[Limits] = None,
    settings: Optional[SolverSettings] = None,
    preprocess: bool = True,
) -> tuple[MipResult, Schedule]:
    """
    Builds one of the integer models, seeds the search with the successive knapsack schedule and decodes the result.

    Args:
        inst (Instance): The instance.
        formulation (str): abf, tif, tifv, tifm or spf.
        limits (Optional[Limits]): Search limits.
        settings (Optional[SolverSettings]): Solver settings.
        preprocess (bool): Use the batch-count bounds, otherwise one slot per job and the full horizon.

    Returns:
        Search result and decoded schedule.
    """
    settings = settings if settings else SolverSettings()
    prep: PreprocessResult = compute_bounds(inst) if preprocess else trivial_bounds(inst)
    batches: Optional[Sequence[Sequence[Batch]]] = None
    if formulation == SPF:
        batches = enumerate_all(inst, settings.caps.batch_enumeration)
        model: LinearModel = build_spf(inst, prep, batches, settings.caps.spf_variables)
    elif formulation in FORMULATION_BUILDERS:
        model = FORMULATION_BUILDERS[formulation](inst, prep)
    else:
        raise ArgumentUnknownCommandException(formulation)
    logger.info(f"{formulation.upper()}: {model.stats()}")

    hint: np.ndarray = encode_schedule(model, inst, prep, sk_heuristic(inst), batches)
    result: MipResult = solve_mip(model, limits, hint, settings, integer_objective=True)
    return result, decode_schedule(model, inst, result.best_solution, batches)


def compute_bound(
    inst: Instance, settings: Optional[SolverSettings] = None, time_limit: Optional[float] = None
) -> ColgenResult:
    """
    Root column generation value of the set-partitioning relaxation.
    """
    settings = settings if settings else SolverSettings()
    prep: PreprocessResult = compute_bounds(inst)
    per_family: int = settings.colgen.col_number_root_per_family
    config: CgConfig = CgConfig.create(inst, prep, settings, per_family, time_limit)
    return run_colgen(inst, prep, config=config, settings=settings)


def solve(
    inst: Instance,
    method: str,
    limits: Optional[Limits] = None,
    settings: Optional[SolverSettings] = None,
    preprocess: bool = True,
    show_progress: bool = False,
) -> SolveOutcome:
    """
    Runs a solution method by name.

    Args:
        inst (Instance): The instance.
        method (str): oracle, sk, cgh, ps, bnp, tbnp or one of the formulations.
        limits (Optional[Limits]): Search limits.
        settings (Optional[SolverSettings]): Solver settings.
        preprocess (bool): Preprocess the formulations.
        show_progress (bool): Show the branch-and-price node counter.

    Returns:
        Outcome with a validated schedule.
    """
    settings = settings if settings else SolverSettings()
    limits = limits if limits else Limits()
    started: float = time.perf_counter()

    match method:
        case "oracle":
            oracle: OracleResult = brute_force(inst, settings.caps.oracle_batchings)
            outcome = SolveOutcome(method, OPTIMAL, oracle.objective, oracle.schedule, float(oracle.objective))
            outcome.details["batchings"] = oracle.combinations
        case "sk":
            schedule: Schedule = sk_heuristic(inst)
            outcome = SolveOutcome(method, "heuristic", evaluate(schedule, inst), schedule)
        case "cgh" | "ps":
            heuristic: HeuristicResult = (
                cgh(inst, settings, limits) if method == "cgh" else proximity_search(inst, limits, settings)
            )
            outcome = SolveOutcome(method, heuristic.status, heuristic.objective, heuristic.schedule)
            outcome.lower_bound, outcome.nodes = heuristic.lower_bound, heuristic.nodes
            outcome.details["iterations"] = heuristic.iterations
        case "bnp" | "tbnp":
            result: BnpResult = solve_bnp(inst, limits, settings, show_progress=show_progress)
            outcome = SolveOutcome(
                method, result.status, result.objective, result.schedule, result.best_bound, result.node_count
            )
            outcome.details["root_lp"] = result.root_lp
            outcome.details["root_converged"] = result.root_converged
        case _ if method in FORMULATIONS:
            mip, schedule = solve_formulation(inst, method, limits, settings, preprocess)
            outcome = SolveOutcome(method, mip.status, evaluate(schedule, inst), schedule)
            outcome.lower_bound, outcome.nodes = mip.best_bound, mip.node_count
        case _:
            raise ArgumentUnknownCommandException(method)

    outcome.seconds = time.perf_counter() - started
    logger.info(f"{method}: {outcome.status}, objective {outcome.objective}, {outcome.seconds:.2f} s.")
    return outcome
