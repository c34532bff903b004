import logging

from instance import Batch, Instance, Schedule, evaluate, wspt_sequence
from logger import get_logger
from pricing import solve_knapsack

logger: logging.Logger = get_logger()


def sk_batches(inst: Instance) -> list[Batch]:
    """
    Batches every family by repeatedly loading the heaviest capacity-feasible subset of its remaining jobs.

    Args:
        inst (Instance): The instance.

    Returns:
        Batches of all families, in family order and loading order.
    """
    batches: list[Batch] = []
    for j in range(inst.m):
        remaining: list[int] = list(inst.jobs_of[j])
        while remaining:
            chosen, _ = solve_knapsack([inst.w[i] for i in remaining], [inst.v[i] for i in remaining], inst.V)
            members: list[int] = [remaining[k] for k in chosen]
            batches.append(Batch.of(inst, members))
            taken: set[int] = set(members)
            remaining = [i for i in remaining if i not in taken]
    return batches


def sk_heuristic(inst: Instance) -> Schedule:
    schedule: Schedule = wspt_sequence(sk_batches(inst), inst)
    logger.debug(f"SK: {len(schedule.batches)} batches, objective {evaluate(schedule, inst)}.")
    return schedule
