from dataclasses import dataclass

from instance import Instance
from utils import ceil_div


@dataclass(frozen=True)
class PreprocessResult:
    """
    Per-family bound on the number of batches some optimal schedule needs, and the horizon it implies.

    Attributes:
        Nb (tuple[int, ...]): Jobs loaded by the greedy largest-first batch of each family.
        B (tuple[int, ...]): Batch-count bound per family.
        H_max (int): Horizon, sum of B_j * q_j.
        omega_size (int): Total number of batch slots, sum of B_j.
    """

    Nb: tuple[int, ...]
    B: tuple[int, ...]
    H_max: int
    omega_size: int


def compute_bounds(inst: Instance) -> PreprocessResult:
    nb: list[int] = []
    bounds: list[int] = []
    for j in range(inst.m):
        jobs: tuple[int, ...] = inst.jobs_of[j]
        # Size ties keep the job order
        sizes: list[int] = sorted((inst.v[i] for i in jobs), reverse=True)
        load: int = 0
        loaded: int = 0
        for size in sizes:
            if load + size > inst.V:
                break
            load += size
            loaded += 1
        nb.append(loaded)
        bounds.append(ceil_div(len(jobs), loaded))
    horizon: int = sum(b * q for b, q in zip(bounds, inst.q))
    return PreprocessResult(Nb=tuple(nb), B=tuple(bounds), H_max=horizon, omega_size=sum(bounds))


def trivial_bounds(inst: Instance) -> PreprocessResult:
    """
    Bounds without preprocessing: one batch slot per job and the full processing horizon.
    """
    counts: tuple[int, ...] = tuple(len(jobs) for jobs in inst.jobs_of)
    return PreprocessResult(
        Nb=tuple(1 for _ in counts),
        B=counts,
        H_max=inst.total_processing(),
        omega_size=inst.n,
    )
