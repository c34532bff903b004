import pytest
from conftest import EXAMPLE_OPTIMUM

from exceptions import EC_SEARCH_ORACLE_TOO_LARGE, OracleTooLargeException
from instance import Instance, evaluate
from oracle import OracleResult, brute_force, family_partitions


def test_family_partitions(example1: Instance):
    family_a = family_partitions(example1, 0)
    assert len(family_a) == 8
    assert [(0, 1), (2,), (3,)] in family_a
    assert all(sum(example1.v[i] for i in block) <= example1.V for partition in family_a for block in partition)
    assert family_partitions(example1, 1) == [[(4, 5)], [(4,), (5,)]]
    assert family_partitions(example1, 1, max_batches=1) == [[(4, 5)]]


def test_example_optimum(example1: Instance):
    result: OracleResult = brute_force(example1)
    assert result.objective == EXAMPLE_OPTIMUM
    assert result.combinations == 16
    assert evaluate(result.schedule, example1) == EXAMPLE_OPTIMUM
    result.schedule.validate(example1)


def test_batch_limits_shrink_the_search(example1: Instance):
    assert brute_force(example1, max_batches=(4, 1)).combinations == 8


def test_cap(example1: Instance):
    with pytest.raises(OracleTooLargeException) as info:
        brute_force(example1, cap=3)
    assert info.value.error_code == EC_SEARCH_ORACLE_TOO_LARGE
