import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from exceptions import InfeasibleBatchingException, InfeasibleScheduleException, InvalidInstanceException
from logger import get_logger
from utils import read_json_file, write_json_file

logger: logging.Logger = get_logger()


@dataclass(frozen=True)
class Instance:
    """
    Single batching machine instance. Jobs and families are indexed from 0 internally,
    every external format numbers them from 1.

    Attributes:
        family_of (tuple[int, ...]): Family of each job.
        w (tuple[int, ...]): Positive job weights.
        v (tuple[int, ...]): Job sizes, 0 <= v <= V.
        q (tuple[int, ...]): Processing time of each family.
        V (int): Machine capacity.
    """

    family_of: tuple[int, ...]
    w: tuple[int, ...]
    v: tuple[int, ...]
    q: tuple[int, ...]
    V: int
    jobs_of: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n: int = len(self.family_of)
        if n == 0:
            raise InvalidInstanceException("Instance has no jobs.")
        if len(self.w) != n or len(self.v) != n:
            raise InvalidInstanceException("Weights and sizes must be given for every job.")
        if len(self.q) == 0:
            raise InvalidInstanceException("Instance has no families.")
        if not _all_int(self.w + self.v + self.q + (self.V,)):
            raise InvalidInstanceException("Weights, sizes, processing times and capacity must be integers.")
        if self.V <= 0:
            raise InvalidInstanceException(f"Capacity must be positive, got {self.V}.")
        for j, duration in enumerate(self.q):
            if duration <= 0:
                raise InvalidInstanceException(f"Family {j + 1} has non-positive processing time {duration}.")
        members: list[list[int]] = [[] for _ in self.q]
        for i in range(n):
            if self.w[i] <= 0:
                raise InvalidInstanceException(f"Job {i + 1} has non-positive weight {self.w[i]}.")
            if not 0 <= self.v[i] <= self.V:
                raise InvalidInstanceException(f"Job {i + 1} has size {self.v[i]} outside [0, {self.V}].")
            family: int = self.family_of[i]
            if not isinstance(family, int) or not 0 <= family < len(self.q):
                raise InvalidInstanceException(f"Job {i + 1} references unknown family {family}.")
            members[family].append(i)
        for j, jobs in enumerate(members):
            if not jobs:
                raise InvalidInstanceException(f"Family {j + 1} has no jobs.")
        object.__setattr__(self, "jobs_of", tuple(tuple(jobs) for jobs in members))

    @property
    def n(self) -> int:
        return len(self.family_of)

    @property
    def m(self) -> int:
        return len(self.q)

    def p(self, job: int) -> int:
        return self.q[self.family_of[job]]

    def total_processing(self) -> int:
        return sum(self.p(i) for i in range(self.n))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Instance":
        """
        Parses the JSON interchange format
        {"n": int, "m": int, "V": int, "q": [int], "jobs": [{"family": int, "w": int, "v": int}]}.

        Args:
            data (dict[str, Any]): Parsed JSON.

        Returns:
            Validated instance.
        """
        try:
            q: list[int] = list(data["q"])
            jobs: list[dict[str, Any]] = list(data["jobs"])
            family_of: tuple[int, ...] = tuple(int(job["family"]) - 1 for job in jobs)
            w: tuple[int, ...] = tuple(job["w"] for job in jobs)
            v: tuple[int, ...] = tuple(job["v"] for job in jobs)
            capacity: int = data["V"]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInstanceException(f"Missing or malformed field: {e}")
        if "n" in data and data["n"] != len(jobs):
            raise InvalidInstanceException(f"Field n={data['n']} but {len(jobs)} jobs listed.")
        if "m" in data and data["m"] != len(q):
            raise InvalidInstanceException(f"Field m={data['m']} but {len(q)} processing times listed.")
        return cls(family_of=family_of, w=w, v=v, q=tuple(q), V=capacity)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "V": self.V,
            "q": list(self.q),
            "jobs": [{"family": self.family_of[i] + 1, "w": self.w[i], "v": self.v[i]} for i in range(self.n)],
        }

    @classmethod
    def load(cls, path: str) -> "Instance":
        data: Any = read_json_file(path)
        if not isinstance(data, dict):
            raise InvalidInstanceException(f"{path} does not contain a JSON object.")
        return cls.from_dict(data)

    def save(self, path: str) -> None:
        write_json_file(path, self.to_dict())


def _all_int(values: Iterable[Any]) -> bool:
    return all(isinstance(value, int) and not isinstance(value, bool) for value in values)


@dataclass(frozen=True, order=True)
class Batch:
    family: int
    jobs: tuple[int, ...]
    total_size: int

    @classmethod
    def of(cls, inst: Instance, jobs: Iterable[int]) -> "Batch":
        """
        Builds a batch from job indices and checks it against the instance.

        Args:
            inst (Instance): The instance.
            jobs (Iterable[int]): 0-based job indices.

        Returns:
            Batch with sorted jobs.
        """
        members: tuple[int, ...] = tuple(sorted(jobs))
        if not members:
            raise InfeasibleBatchingException("empty-batch", "Batch has no jobs.")
        if len(set(members)) != len(members):
            raise InfeasibleBatchingException("split-job", f"Duplicate job in batch {_external(members)}.")
        families: set[int] = {inst.family_of[i] for i in members}
        if len(families) > 1:
            raise InfeasibleBatchingException("mixed-family", f"Batch {_external(members)} mixes families.")
        size: int = sum(inst.v[i] for i in members)
        if size > inst.V:
            raise InfeasibleBatchingException("capacity", f"Batch {_external(members)} has size {size} > {inst.V}.")
        return cls(family=families.pop(), jobs=members, total_size=size)

    def weight(self, inst: Instance) -> int:
        return sum(inst.w[i] for i in self.jobs)


def _external(jobs: Iterable[int]) -> list[int]:
    return [i + 1 for i in jobs]


@dataclass(frozen=True)
class Schedule:
    """
    Batches with their 1-based start periods, kept in start order.
    """

    batches: tuple[tuple[Batch, int], ...]

    def completion_times(self, inst: Instance) -> dict[int, int]:
        completion: dict[int, int] = {}
        for batch, start in self.batches:
            for i in batch.jobs:
                completion[i] = start + inst.q[batch.family] - 1
        return completion

    def validate(self, inst: Instance) -> None:
        """
        Checks every schedule invariant.

        Args:
            inst (Instance): The instance the schedule belongs to.
        """
        seen: set[int] = set()
        previous_end: int = 0
        for batch, start in sorted(self.batches, key=lambda entry: entry[1]):
            if not batch.jobs:
                raise InfeasibleScheduleException("empty-batch")
            if start < 1:
                raise InfeasibleScheduleException("start", f"Batch {_external(batch.jobs)} starts at {start}.")
            for i in batch.jobs:
                if not 0 <= i < inst.n:
                    raise InfeasibleScheduleException("unknown-job", f"Job index {i + 1}.")
                if inst.family_of[i] != batch.family:
                    message: str = f"Job {i + 1} in a family {batch.family + 1} batch."
                    raise InfeasibleScheduleException("mixed-family", message)
                if i in seen:
                    raise InfeasibleScheduleException("split-job", f"Job {i + 1} appears in more than one batch.")
                seen.add(i)
            size: int = sum(inst.v[i] for i in batch.jobs)
            if size > inst.V or size != batch.total_size:
                raise InfeasibleScheduleException("capacity", f"Batch {_external(batch.jobs)} has size {size}.")
            if start < previous_end + 1:
                raise InfeasibleScheduleException("overlap", f"Batch {_external(batch.jobs)} starts at {start}.")
            previous_end = start + inst.q[batch.family] - 1
        if len(seen) != inst.n:
            missing: list[int] = sorted(set(range(inst.n)) - seen)
            raise InfeasibleScheduleException("missing-job", f"Jobs {_external(missing)} are not scheduled.")

    def describe(self, inst: Instance) -> str:
        lines: list[str] = [f"{'batch':>5} {'family':>6} {'start':>6} {'end':>6} {'weight':>7}  jobs"]
        for index, (batch, start) in enumerate(self.batches, start=1):
            end: int = start + inst.q[batch.family] - 1
            jobs: str = ",".join(str(i + 1) for i in batch.jobs)
            lines.append(f"{index:>5} {batch.family + 1:>6} {start:>6} {end:>6} {batch.weight(inst):>7}  {jobs}")
        return "\n".join(lines)

    def to_dict(self, inst: Instance) -> dict[str, Any]:
        return {
            "objective": evaluate(self, inst),
            "batches": [
                {"family": batch.family + 1, "start": start, "jobs": _external(batch.jobs)}
                for batch, start in self.batches
            ],
        }

    def save(self, path: str, inst: Instance) -> None:
        write_json_file(path, self.to_dict(inst))


def evaluate(schedule: Schedule, inst: Instance) -> int:
    """
    Total weighted completion time of a validated schedule.

    Args:
        schedule (Schedule): Schedule to evaluate.
        inst (Instance): The instance.

    Returns:
        Sum of w_i * C_i.
    """
    schedule.validate(inst)
    return sum(inst.w[i] * completion for i, completion in schedule.completion_times(inst).items())


def wspt_key(batch: Batch, inst: Instance) -> tuple[Fraction, int, int]:
    # Ratio descending, then lower family, then lower smallest job
    return (-Fraction(batch.weight(inst), inst.q[batch.family]), batch.family, batch.jobs[0])


def check_batching(batches: Sequence[Batch], inst: Instance) -> None:
    covered: list[int] = [0] * inst.n
    for batch in batches:
        if not batch.jobs:
            raise InfeasibleBatchingException("empty-batch")
        for i in batch.jobs:
            if inst.family_of[i] != batch.family:
                raise InfeasibleBatchingException("mixed-family", f"Job {i + 1} in a family {batch.family + 1} batch.")
            covered[i] += 1
        if sum(inst.v[i] for i in batch.jobs) > inst.V:
            raise InfeasibleBatchingException("capacity", f"Batch {_external(batch.jobs)} exceeds capacity.")
    for i, count in enumerate(covered):
        if count != 1:
            raise InfeasibleBatchingException("coverage", f"Job {i + 1} is covered {count} times.")


def wspt_sequence(batches: Sequence[Batch], inst: Instance) -> Schedule:
    """
    Sequences a batching by the weighted shortest processing time rule without idle time.

    Args:
        batches (Sequence[Batch]): Batches covering every job exactly once.
        inst (Instance): The instance.

    Returns:
        Schedule starting at period 1.
    """
    check_batching(batches, inst)
    timed: list[tuple[Batch, int]] = []
    start: int = 1
    for batch in sorted(batches, key=lambda b: wspt_key(b, inst)):
        timed.append((batch, start))
        start += inst.q[batch.family]
    return Schedule(tuple(timed))


def wspt_objective(groups: Iterable[tuple[int, int]]) -> int:
    """
    Objective of WSPT sequencing given only (total weight, processing time) per batch.

    Args:
        groups (Iterable[tuple[int, int]]): Pairs of batch weight and duration.

    Returns:
        Sum over batches of weight times completion.
    """
    objective: int = 0
    clock: int = 0
    for weight, duration in sorted(groups, key=lambda g: Fraction(-g[0], g[1])):
        clock += duration
        objective += weight * clock
    return objective
