import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from exceptions import SpecMismatchException
from instance import Instance
from logger import get_logger

logger: logging.Logger = get_logger()


@dataclass(frozen=True)
class SetSettings:
    n_values: tuple[int, ...]
    m_values: tuple[int, ...]
    size_ranges: tuple[tuple[int, int], ...]
    weight_range: tuple[int, int]
    capacity: int
    # None means processing time drawn from [10j, 10j + 10] for 1-based family j
    duration_range: Optional[tuple[int, int]]


INSTANCE_SET_SETTINGS: dict[str, SetSettings] = {
    "K2008": SetSettings(
        n_values=(20, 40, 60, 80, 100),
        m_values=(2, 4, 6, 10),
        size_ranges=((1, 10), (2, 4), (4, 8)),
        weight_range=(1, 10),
        capacity=10,
        duration_range=None,
    ),
    "K2008u": SetSettings(
        n_values=(120, 150),
        m_values=(2, 4, 6, 10),
        size_ranges=((1, 10), (2, 4), (4, 8)),
        weight_range=(1, 10),
        capacity=10,
        duration_range=(1, 1),
    ),
    "H2017": SetSettings(
        n_values=(80, 100),
        m_values=(3, 5),
        size_ranges=((1, 50),),
        weight_range=(1, 10),
        capacity=50,
        duration_range=(1, 15),
    ),
}


@dataclass(frozen=True)
class GenSpec:
    """
    Parameters of one generated instance.

    Attributes:
        set_name (str): K2008, K2008u or H2017.
        n (int): Number of jobs.
        m (int): Number of families.
        size_range (tuple[int, int]): Inclusive job size range, one of the ranges listed for the set.
        seed (int): Non-negative 64-bit seed.
        strict (bool): Also require n and m to be values listed for the set.
    """

    set_name: str
    n: int
    m: int
    size_range: tuple[int, int]
    seed: int
    strict: bool = False

    def validate(self) -> SetSettings:
        settings: Optional[SetSettings] = INSTANCE_SET_SETTINGS.get(self.set_name)
        if settings is None:
            raise SpecMismatchException(f"Unknown set '{self.set_name}'.")
        if tuple(self.size_range) not in settings.size_ranges:
            raise SpecMismatchException(
                f"Sizes {list(self.size_range)} not allowed for {self.set_name}, "
                f"expected one of {[list(r) for r in settings.size_ranges]}."
            )
        if self.m < 1 or self.n < self.m:
            raise SpecMismatchException(f"Need n >= m >= 1, got n={self.n}, m={self.m}.")
        if not 0 <= self.seed < 2**64:
            raise SpecMismatchException(f"Seed {self.seed} is not a 64-bit unsigned integer.")
        if self.strict and (self.n not in settings.n_values or self.m not in settings.m_values):
            raise SpecMismatchException(
                f"{self.set_name} uses n in {list(settings.n_values)} and m in {list(settings.m_values)}."
            )
        return settings


def family_sizes(n: int, m: int) -> list[int]:
    base: int = n // m
    return [base] * (m - 1) + [n - base * (m - 1)]


def generate(spec: GenSpec) -> Instance:
    """
    Draws an instance of the named set. Every range is inclusive on both ends.

    Random streams come from numpy's PCG64 bit generator. The seed feeds a SeedSequence that
    is spawned into three independent child streams, one for processing times, one for weights
    and one for sizes, so changing how one field is drawn never shifts the others. Families are not drawn:
    jobs fill consecutive blocks of n // m, the last family taking the remainder.

    Args:
        spec (GenSpec): Generator parameters.

    Returns:
        Generated instance.
    """
    settings: SetSettings = spec.validate()
    duration_stream, weight_stream, size_stream = (
        np.random.Generator(np.random.PCG64(child)) for child in np.random.SeedSequence(spec.seed).spawn(3)
    )

    q: list[int] = []
    for j in range(1, spec.m + 1):
        low, high = settings.duration_range if settings.duration_range else (10 * j, 10 * j + 10)
        q.append(int(duration_stream.integers(low, high, endpoint=True)))

    family_of: list[int] = []
    for j, count in enumerate(family_sizes(spec.n, spec.m)):
        family_of.extend([j] * count)

    low_w, high_w = settings.weight_range
    w: list[int] = [int(x) for x in weight_stream.integers(low_w, high_w, size=spec.n, endpoint=True)]
    low_v, high_v = spec.size_range
    v: list[int] = [int(x) for x in size_stream.integers(low_v, high_v, size=spec.n, endpoint=True)]

    logger.debug(f"Generated {spec.set_name} instance n={spec.n} m={spec.m} seed={spec.seed}.")
    return Instance(family_of=tuple(family_of), w=tuple(w), v=tuple(v), q=tuple(q), V=settings.capacity)
