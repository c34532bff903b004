import logging
from typing import Optional

from exceptions import BatchCountOverflowException
from instance import Batch, Instance
from logger import get_logger

logger: logging.Logger = get_logger()


def count_batches(inst: Instance, family: int) -> int:
    """
    Exact number of non-empty capacity-feasible job subsets of a family, by counting subsets per total size.

    Args:
        inst (Instance): The instance.
        family (int): Family index.

    Returns:
        Number of feasible batches.
    """
    ways: list[int] = [1] + [0] * inst.V
    for i in inst.jobs_of[family]:
        size: int = inst.v[i]
        for total in range(inst.V, size - 1, -1):
            ways[total] += ways[total - size]
    return sum(ways) - 1


def enumerate_batches(inst: Instance, family: int, cap: Optional[int] = None) -> list[Batch]:
    """
    Lists every feasible batch of a family in depth-first tree order: the node of the k-th job
    has the later jobs of the family as children, and a child is cut as soon as it overflows capacity.

    Args:
        inst (Instance): The instance.
        family (int): Family index.
        cap (Optional[int]): Refuse when more batches than this would be produced.

    Returns:
        Batches in tree order.
    """
    if cap is not None:
        predicted: int = count_batches(inst, family)
        if predicted > cap:
            raise BatchCountOverflowException(family, predicted, cap)

    jobs: tuple[int, ...] = inst.jobs_of[family]
    batches: list[Batch] = []

    def visit(members: list[int], size: int, first_child: int) -> None:
        batches.append(Batch(family=family, jobs=tuple(members), total_size=size))
        for position in range(first_child, len(jobs)):
            job: int = jobs[position]
            if size + inst.v[job] <= inst.V:
                members.append(job)
                visit(members, size + inst.v[job], position + 1)
                members.pop()

    for position, job in enumerate(jobs):
        visit([job], inst.v[job], position + 1)

    return batches


def enumerate_all(inst: Instance, cap: Optional[int] = None) -> list[list[Batch]]:
    batches: list[list[Batch]] = [enumerate_batches(inst, j, cap) for j in range(inst.m)]
    logger.debug(f"Enumerated {sum(len(b) for b in batches)} feasible batches over {inst.m} families.")
    return batches
