import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from branch_state import BranchState
from instance import Batch, Instance

# Profits closer than this count as equal, so ties keep the earlier choice
PROFIT_TOLERANCE: float = 1e-12


@dataclass(frozen=True)
class DualSolution:
    """
    Duals of the restricted master.

    Attributes:
        u (np.ndarray): Period row duals, u[t - 1] <= 0 for period t.
        pi (np.ndarray): Job row duals.
    """

    u: np.ndarray
    pi: np.ndarray

    def window(self, start: int, duration: int) -> float:
        return float(self.u[start - 1 : start - 1 + duration].sum())


def solve_knapsack(profits: Sequence[float], sizes: Sequence[int], capacity: int) -> tuple[list[int], float]:
    """
    0-1 knapsack by dynamic programming over capacities 0..capacity. Items with non-positive profit are never taken.

    Args:
        profits (Sequence[float]): Item profits.
        sizes (Sequence[int]): Non-negative integer item sizes.
        capacity (int): Knapsack capacity.

    Returns:
        Chosen item positions in increasing order and their total profit.
    """
    count: int = len(profits)
    value: np.ndarray = np.zeros(capacity + 1)
    take: np.ndarray = np.zeros((count, capacity + 1), dtype=bool)
    for k in range(count):
        profit: float = float(profits[k])
        size: int = int(sizes[k])
        if profit <= 0.0 or size > capacity:
            continue
        candidate: np.ndarray = np.full(capacity + 1, -math.inf)
        candidate[size:] = value[: capacity + 1 - size] + profit
        better: np.ndarray = candidate > value + PROFIT_TOLERANCE
        take[k] = better
        value = np.where(better, candidate, value)

    chosen: list[int] = []
    room: int = capacity
    for k in range(count - 1, -1, -1):
        if take[k, room]:
            chosen.append(k)
            room -= int(sizes[k])
    chosen.reverse()
    return chosen, float(sum(profits[k] for k in chosen))


def solve_knapsack_with_conflicts(
    profits: Sequence[float],
    sizes: Sequence[int],
    capacity: int,
    conflicts: Sequence[tuple[int, int]] = (),
    forbidden: Sequence[frozenset[int]] = (),
) -> tuple[list[int], float]:
    """
    Depth-first branch and bound for the 0-1 knapsack with conflicting item pairs and excluded item sets.
    Nodes are bounded by the fractional relaxation over the remaining profitable items.

    Args:
        profits (Sequence[float]): Item profits.
        sizes (Sequence[int]): Item sizes.
        capacity (int): Knapsack capacity.
        conflicts (Sequence[tuple[int, int]]): Item pairs that cannot both be taken.
        forbidden (Sequence[frozenset[int]]): Item sets that may not be returned exactly.

    Returns:
        Best admissible item positions in increasing order and their profit, the empty set at worst.
    """
    excluded: set[frozenset[int]] = set(forbidden)
    clashes: list[set[int]] = [set() for _ in profits]
    for a, b in conflicts:
        clashes[a].add(b)
        clashes[b].add(a)

    def ratio(k: int) -> float:
        return math.inf if sizes[k] == 0 else profits[k] / sizes[k]

    # Unprofitable items only help when the best sets are excluded
    candidates: list[int] = [
        k for k in range(len(profits)) if sizes[k] <= capacity and (profits[k] > 0.0 or excluded)
    ]
    order: list[int] = sorted(candidates, key=lambda k: (-ratio(k), k))
    best: list[float] = [0.0]
    best_set: list[list[int]] = [[]]
    chosen: list[int] = []

    def bound(position: int, room: int, value: float) -> float:
        for k in order[position:]:
            if profits[k] <= 0.0 or clashes[k] & set(chosen):
                continue
            if sizes[k] <= room:
                room -= sizes[k]
                value += profits[k]
            else:
                return value + room * profits[k] / sizes[k]
        return value

    def visit(position: int, room: int, value: float) -> None:
        if chosen and value > best[0] + PROFIT_TOLERANCE and frozenset(chosen) not in excluded:
            best[0] = value
            best_set[0] = sorted(chosen)
        if position == len(order) or bound(position, room, value) <= best[0] + PROFIT_TOLERANCE:
            return
        k: int = order[position]
        if sizes[k] <= room and not clashes[k] & set(chosen):
            chosen.append(k)
            visit(position + 1, room - sizes[k], value + profits[k])
            chosen.pop()
        visit(position + 1, room, value)

    visit(0, capacity, 0.0)
    return best_set[0], best[0]


def job_profits(inst: Instance, jobs: Sequence[int], start: int, duals: DualSolution) -> list[float]:
    completion: int = start + inst.q[inst.family_of[jobs[0]]] - 1 if jobs else 0
    return [float(duals.pi[i]) - completion * inst.w[i] for i in jobs]


def price_knapsack(inst: Instance, family: int, start: int, duals: DualSolution) -> tuple[tuple[int, ...], float]:
    """
    Most negative reduced cost column of a family at a start period.

    Args:
        inst (Instance): The instance.
        family (int): Family index.
        start (int): Start period.
        duals (DualSolution): Restricted master duals.

    Returns:
        Chosen jobs, possibly empty, and the column's reduced cost.
    """
    jobs: tuple[int, ...] = inst.jobs_of[family]
    chosen, profit = solve_knapsack(job_profits(inst, jobs, start, duals), [inst.v[i] for i in jobs], inst.V)
    return tuple(jobs[k] for k in chosen), -profit - duals.window(start, inst.q[family])


def price_with_state(
    inst: Instance,
    family: int,
    start: int,
    duals: DualSolution,
    state: BranchState,
) -> tuple[tuple[int, ...], float]:
    """
    Pricing under branching decisions. Merged jobs are contracted into one item, fixed jobs leave the problem,
    and conflicts or forbidden columns at this period switch from dynamic programming to branch and bound.

    Args:
        inst (Instance): The instance.
        family (int): Family index.
        start (int): Start period.
        duals (DualSolution): Restricted master duals.
        state (BranchState): Decisions of the node.

    Returns:
        Best admissible jobs, possibly empty, and their reduced cost.
    """
    if state.is_empty():
        return price_knapsack(inst, family, start, duals)

    groups: list[tuple[int, ...]] = state.groups(inst, family)
    if not groups:
        return (), -duals.window(start, inst.q[family])
    position_of: dict[int, int] = {i: k for k, group in enumerate(groups) for i in group}
    completion: int = start + inst.q[family] - 1
    profits: list[float] = [sum(float(duals.pi[i]) - completion * inst.w[i] for i in group) for group in groups]
    sizes: list[int] = [sum(inst.v[i] for i in group) for group in groups]

    conflicts: set[tuple[int, int]] = set()
    for i, k in state.conflicts:
        if i in position_of and k in position_of:
            a, b = position_of[i], position_of[k]
            if a == b:
                sizes[a] = inst.V + 1
            else:
                conflicts.add((min(a, b), max(a, b)))
    forbidden: list[frozenset[int]] = []
    for jobs in state.forbidden_at(family, start):
        if all(i in position_of for i in jobs):
            positions: frozenset[int] = frozenset(position_of[i] for i in jobs)
            if sorted(i for k in positions for i in groups[k]) == list(jobs):
                forbidden.append(positions)

    if conflicts or forbidden:
        chosen, profit = solve_knapsack_with_conflicts(profits, sizes, inst.V, sorted(conflicts), forbidden)
    else:
        chosen, profit = solve_knapsack(profits, sizes, inst.V)
    selected: tuple[int, ...] = tuple(sorted(i for k in chosen for i in groups[k]))
    return selected, -profit - duals.window(start, inst.q[family])


class BatchPricer:
    """
    Pricing by scanning an explicit list of feasible batches per family.
    """

    def __init__(self, inst: Instance, batches: Sequence[Sequence[Batch]]) -> None:
        self.inst: Instance = inst
        self.batches: Sequence[Sequence[Batch]] = batches
        self.membership: list[np.ndarray] = []
        self.weights: list[np.ndarray] = []
        for j in range(inst.m):
            matrix: np.ndarray = np.zeros((len(batches[j]), inst.n))
            for s, batch in enumerate(batches[j]):
                matrix[s, list(batch.jobs)] = 1.0
            self.membership.append(matrix)
            self.weights.append(np.array([batch.weight(inst) for batch in batches[j]], dtype=float))

    def price(
        self,
        family: int,
        start: int,
        duals: DualSolution,
        state: Optional[BranchState] = None,
    ) -> tuple[tuple[int, ...], float]:
        if not len(self.batches[family]):
            return (), -duals.window(start, self.inst.q[family])
        duration: int = self.inst.q[family]
        costs: np.ndarray = self.weights[family] * (start + duration - 1)
        reduced: np.ndarray = costs - self.membership[family] @ duals.pi - duals.window(start, duration)
        for s in np.argsort(reduced, kind="stable"):
            batch: Batch = self.batches[family][s]
            if state is None or state.allows(self.inst, batch, start):
                return batch.jobs, float(reduced[s])
        return (), -duals.window(start, duration)
