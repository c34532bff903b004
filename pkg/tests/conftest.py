import sys
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.joinpath("src")))

from instance import Batch, Instance  # noqa: E402

EXAMPLE_OPTIMUM: int = 173


@pytest.fixture
def example1() -> Instance:
    # Two unit-time families, capacity 4; jobs 1-4 in family A, jobs 5-6 in family B
    return Instance(
        family_of=(0, 0, 0, 0, 1, 1),
        w=(20, 20, 11, 10, 10, 20),
        v=(1, 1, 3, 3, 2, 2),
        q=(1, 1),
        V=4,
    )


@pytest.fixture
def example1_batches(example1: Instance) -> list[Batch]:
    return [Batch.of(example1, jobs) for jobs in ((0, 1), (4, 5), (2,), (3,))]


def random_instance(
    seed: int,
    n_range: tuple[int, int] = (4, 10),
    m_range: tuple[int, int] = (1, 3),
    capacity: int = 10,
    max_duration: int = 3,
) -> Instance:
    """
    Small random instance with every family non-empty and sizes drawn from [1, capacity].
    """
    rng: np.random.Generator = np.random.default_rng(seed)
    n: int = int(rng.integers(n_range[0], n_range[1], endpoint=True))
    m: int = int(rng.integers(m_range[0], min(m_range[1], n), endpoint=True))
    family_of: list[int] = list(range(m)) + [int(j) for j in rng.integers(0, m, size=n - m)]
    return Instance(
        family_of=tuple(family_of),
        w=tuple(int(x) for x in rng.integers(1, 10, size=n, endpoint=True)),
        v=tuple(int(x) for x in rng.integers(1, capacity, size=n, endpoint=True)),
        q=tuple(int(x) for x in rng.integers(1, max_duration, size=m, endpoint=True)),
        V=capacity,
    )


@pytest.fixture
def instance_factory() -> Callable[..., Instance]:
    return random_instance
