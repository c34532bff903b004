import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from exceptions import OracleTooLargeException
from instance import Batch, Instance, Schedule, evaluate, wspt_objective, wspt_sequence
from logger import get_logger

logger: logging.Logger = get_logger()

DEFAULT_CAP: int = 10_000_000


@dataclass(frozen=True)
class OracleResult:
    objective: int
    schedule: Schedule
    combinations: int


def family_partitions(
    inst: Instance, family: int, max_batches: Optional[int] = None, cap: int = DEFAULT_CAP
) -> list[list[tuple[int, ...]]]:
    """
    Every partition of a family into capacity-feasible batches, by restricted-growth assignment of jobs to blocks.

    Args:
        inst (Instance): The instance.
        family (int): Family index.
        max_batches (Optional[int]): Largest number of batches allowed.
        cap (int): Refuse once more partitions than this are found.

    Returns:
        Partitions, each a list of job tuples.
    """
    jobs: tuple[int, ...] = inst.jobs_of[family]
    limit: int = max_batches if max_batches is not None else len(jobs)
    blocks: list[list[int]] = []
    loads: list[int] = []
    partitions: list[list[tuple[int, ...]]] = []

    def assign(position: int) -> None:
        if position == len(jobs):
            partitions.append([tuple(block) for block in blocks])
            if len(partitions) > cap:
                raise OracleTooLargeException(len(partitions), cap)
            return
        job: int = jobs[position]
        for b in range(len(blocks)):
            if loads[b] + inst.v[job] <= inst.V:
                blocks[b].append(job)
                loads[b] += inst.v[job]
                assign(position + 1)
                loads[b] -= inst.v[job]
                blocks[b].pop()
        if len(blocks) < limit:
            blocks.append([job])
            loads.append(inst.v[job])
            assign(position + 1)
            loads.pop()
            blocks.pop()

    assign(0)
    return partitions


def brute_force(
    inst: Instance,
    cap: int = DEFAULT_CAP,
    max_batches: Optional[Sequence[int]] = None,
) -> OracleResult:
    """
    Exact optimum by trying every batching and sequencing each one by WSPT.

    Args:
        inst (Instance): The instance.
        cap (int): Largest number of batchings to evaluate.
        max_batches (Optional[Sequence[int]]): Per-family limit on the number of batches.

    Returns:
        Optimal objective and one optimal schedule.
    """
    per_family: list[list[list[tuple[int, ...]]]] = [
        family_partitions(inst, j, max_batches[j] if max_batches is not None else None, cap) for j in range(inst.m)
    ]
    combinations: int = math.prod(len(partitions) for partitions in per_family)
    if combinations > cap:
        raise OracleTooLargeException(combinations, cap)

    summaries: list[list[list[tuple[int, int]]]] = [
        [[(sum(inst.w[i] for i in block), inst.q[j]) for block in partition] for partition in partitions]
        for j, partitions in enumerate(per_family)
    ]
    best_value: float = math.inf
    best_choice: Optional[tuple[int, ...]] = None
    for choice in itertools.product(*(range(len(partitions)) for partitions in per_family)):
        groups: list[tuple[int, int]] = [pair for j, k in enumerate(choice) for pair in summaries[j][k]]
        value: int = wspt_objective(groups)
        if value < best_value:
            best_value, best_choice = value, choice

    batches: list[Batch] = [Batch.of(inst, block) for j, k in enumerate(best_choice) for block in per_family[j][k]]
    schedule: Schedule = wspt_sequence(batches, inst)
    objective: int = evaluate(schedule, inst)
    logger.debug(f"Oracle: {combinations} batchings, optimum {objective}.")
    return OracleResult(objective, schedule, combinations)
