import pytest
from conftest import EXAMPLE_OPTIMUM, random_instance

from batch_enum import enumerate_all
from bnp import PAIR, VARIABLE, BnpResult, BranchDecision, select_branch, solve_bnp, tbnp
from colgen import Column
from exceptions import NoFractionalException
from instance import Instance
from lp_engine import OPTIMAL
from mip_engine import NODE_LIMIT
from oracle import brute_force
from utils import Limits


def test_pair_closest_to_half_is_chosen():
    support = [
        (Column(0, (0, 1), 1, 10.0), 0.5),
        (Column(0, (0,), 2, 5.0), 0.5),
        (Column(0, (1, 2), 3, 9.0), 0.5),
        (Column(0, (2,), 1, 4.0), 0.5),
    ]
    decision: BranchDecision = select_branch(support)
    assert decision.kind == PAIR
    assert decision.pair == (0, 1)
    assert decision.score == pytest.approx(0.5)


def test_single_job_columns_fall_back_to_variable_branching():
    # The same job split over two start periods has no pair to branch on
    first, second = Column(0, (3,), 1, 4.0), Column(0, (3,), 2, 8.0)
    decision: BranchDecision = select_branch([(first, 0.5), (second, 0.5)])
    assert decision.kind == VARIABLE
    assert decision.column == first


def test_super_columns_are_never_branched_on():
    support = [(Column(0, (0,), 0, 100.0, True), 0.5), (Column(0, (0,), 1, 1.0), 0.5)]
    assert select_branch(support).column.start == 1


def test_integral_support_has_nothing_to_branch_on():
    with pytest.raises(NoFractionalException):
        select_branch([(Column(0, (0, 1), 1, 3.0), 1.0), (Column(1, (2,), 2, 3.0), 1.0)])


def test_example_optimum(example1: Instance):
    result: BnpResult = solve_bnp(example1)
    assert result.status == OPTIMAL
    assert result.objective == EXAMPLE_OPTIMUM
    assert result.best_bound == EXAMPLE_OPTIMUM and result.gap == 0
    assert result.root_converged and result.root_lp <= EXAMPLE_OPTIMUM + 1e-6
    result.schedule.validate(example1)


@pytest.mark.parametrize("seed", range(20))
def test_matches_the_oracle(seed: int):
    inst: Instance = random_instance(seed, n_range=(3, 7))
    result: BnpResult = solve_bnp(inst)
    assert result.status == OPTIMAL
    assert result.objective == brute_force(inst).objective
    result.schedule.validate(inst)


@pytest.mark.parametrize("seed", range(5))
def test_pricing_over_batch_lists(seed: int):
    inst: Instance = random_instance(seed, n_range=(3, 6))
    result: BnpResult = solve_bnp(inst, batchless=False, batches=enumerate_all(inst))
    assert result.objective == brute_force(inst).objective


@pytest.mark.parametrize("seed", range(5))
def test_node_limit_keeps_a_valid_bound(seed: int):
    inst: Instance = random_instance(seed, n_range=(6, 8))
    optimum: int = brute_force(inst).objective
    result: BnpResult = solve_bnp(inst, Limits(node_limit=1))
    assert result.status in (OPTIMAL, NODE_LIMIT)
    assert result.node_count == 1
    assert result.best_bound <= optimum + 1e-6 <= result.objective + 1e-6
    result.schedule.validate(inst)


def test_truncated_search_with_a_generous_limit(example1: Instance):
    result: BnpResult = tbnp(example1, 60.0)
    assert result.status == OPTIMAL and result.objective == EXAMPLE_OPTIMUM


def test_two_jobs_sharing_one_batch():
    inst: Instance = Instance(family_of=(0, 0), w=(2, 3), v=(1, 1), q=(1,), V=2)
    result: BnpResult = solve_bnp(inst)
    assert result.objective == 5 and result.node_count == 1
    assert [(batch.jobs, start) for batch, start in result.schedule.batches] == [((0, 1), 1)]
