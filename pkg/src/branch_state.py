import copy
from dataclasses import dataclass, field

from instance import Batch, Instance


def _pair(i: int, k: int) -> tuple[int, int]:
    return (i, k) if i < k else (k, i)


@dataclass
class BranchState:
    """
    Branching decisions accumulated along a branch-and-price path.

    Attributes:
        merges (set[tuple[int, int]]): Job pairs that must share a batch.
        conflicts (set[tuple[int, int]]): Job pairs that must be in different batches.
        fixed (list[tuple[Batch, int]]): Batches fixed at a start period.
        forbidden (set[tuple[int, tuple[int, ...], int]]): (family, jobs, start) columns set to zero.
    """

    merges: set[tuple[int, int]] = field(default_factory=set)
    conflicts: set[tuple[int, int]] = field(default_factory=set)
    fixed: list[tuple[Batch, int]] = field(default_factory=list)
    forbidden: set[tuple[int, tuple[int, ...], int]] = field(default_factory=set)

    def clone(self) -> "BranchState":
        return copy.deepcopy(self)

    def is_empty(self) -> bool:
        return not (self.merges or self.conflicts or self.fixed or self.forbidden)

    def together(self, i: int, k: int) -> "BranchState":
        child: BranchState = self.clone()
        child.merges.add(_pair(i, k))
        return child

    def apart(self, i: int, k: int) -> "BranchState":
        child: BranchState = self.clone()
        child.conflicts.add(_pair(i, k))
        return child

    def fix(self, batch: Batch, start: int) -> "BranchState":
        child: BranchState = self.clone()
        child.fixed.append((batch, start))
        return child

    def forbid(self, batch: Batch, start: int) -> "BranchState":
        child: BranchState = self.clone()
        child.forbidden.add((batch.family, batch.jobs, start))
        return child

    def fixed_jobs(self) -> set[int]:
        return {i for batch, _ in self.fixed for i in batch.jobs}

    def occupied_periods(self, inst: Instance) -> set[int]:
        return {t for batch, start in self.fixed for t in range(start, start + inst.q[batch.family])}

    def groups(self, inst: Instance, family: int) -> list[tuple[int, ...]]:
        """
        Free jobs of a family grouped by the merge pairs, each group ordered and the groups ordered by first job.
        """
        parent: dict[int, int] = {i: i for i in inst.jobs_of[family]}

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, k in self.merges:
            if i in parent and k in parent:
                root_i, root_k = find(i), find(k)
                if root_i != root_k:
                    parent[max(root_i, root_k)] = min(root_i, root_k)
        fixed: set[int] = self.fixed_jobs()
        members: dict[int, list[int]] = {}
        for i in inst.jobs_of[family]:
            if i not in fixed:
                members.setdefault(find(i), []).append(i)
        return sorted(tuple(sorted(group)) for group in members.values())

    def forbidden_at(self, family: int, start: int) -> set[tuple[int, ...]]:
        return {jobs for j, jobs, t in self.forbidden if j == family and t == start}

    def allows(self, inst: Instance, batch: Batch, start: int) -> bool:
        """
        Checks a column against every decision: merged pairs are both in or both out, conflicting pairs are
        never both in, the column is not forbidden and does not touch fixed jobs or occupied periods.
        """
        members: set[int] = set(batch.jobs)
        for i, k in self.merges:
            if (i in members) != (k in members):
                return False
        for i, k in self.conflicts:
            if i in members and k in members:
                return False
        if (batch.family, batch.jobs, start) in self.forbidden:
            return False
        if members & self.fixed_jobs():
            return False
        window: set[int] = set(range(start, start + inst.q[batch.family]))
        return not window & self.occupied_periods(inst)

    def is_consistent(self, inst: Instance) -> bool:
        if self.merges & self.conflicts:
            return False
        for j in range(inst.m):
            for group in self.groups(inst, j):
                members: set[int] = set(group)
                if any(i in members and k in members for i, k in self.conflicts):
                    return False
        windows: list[tuple[int, int]] = sorted(
            (start, start + inst.q[batch.family] - 1) for batch, start in self.fixed
        )
        return all(windows[k][1] < windows[k + 1][0] for k in range(len(windows) - 1))
