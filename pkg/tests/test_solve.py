import pytest
from conftest import EXAMPLE_OPTIMUM

from colgen import ColgenResult
from exceptions import ArgumentUnknownCommandException
from generator import GenSpec, generate
from instance import Instance, evaluate
from lp_engine import OPTIMAL, TIME_LIMIT
from solve import SolveOutcome, compute_bound, solve, solve_formulation
from utils import Limits


@pytest.mark.parametrize("method", ["oracle", "sk", "cgh", "bnp", "tbnp", "tif", "tifv", "spf"])
def test_every_method_finds_the_example_optimum(example1: Instance, method: str):
    outcome: SolveOutcome = solve(example1, method)
    assert outcome.method == method
    assert outcome.objective == EXAMPLE_OPTIMUM
    assert evaluate(outcome.schedule, example1) == outcome.objective
    outcome.schedule.validate(example1)
    assert outcome.seconds >= 0.0
    if outcome.lower_bound is not None:
        assert outcome.lower_bound <= EXAMPLE_OPTIMUM + 1e-6


def test_outcome_details(example1: Instance):
    assert solve(example1, "sk").status == "heuristic"
    assert solve(example1, "oracle").details["batchings"] == 16
    bnp: SolveOutcome = solve(example1, "bnp")
    assert bnp.status == OPTIMAL and bnp.details["root_converged"]
    assert bnp.nodes >= 1


def test_formulation_without_preprocessing(example1: Instance):
    result, schedule = solve_formulation(example1, "tif", preprocess=False)
    assert result.status == OPTIMAL
    assert evaluate(schedule, example1) == EXAMPLE_OPTIMUM


def test_unknown_method(example1: Instance):
    with pytest.raises(ArgumentUnknownCommandException):
        solve(example1, "cplex")
    with pytest.raises(ArgumentUnknownCommandException):
        solve_formulation(example1, "xyz")


def test_compute_bound(example1: Instance):
    result: ColgenResult = compute_bound(example1)
    assert result.converged
    assert 0.0 < result.lp_value <= EXAMPLE_OPTIMUM + 1e-6


@pytest.mark.parametrize("method", ["tif", "tifv", "bnp"])
def test_time_limit_is_honored_on_a_larger_instance(method: str):
    inst: Instance = generate(GenSpec("K2008", 20, 3, (1, 10), 100))
    outcome: SolveOutcome = solve(inst, method, Limits(time_limit=2.0))
    assert outcome.status in (OPTIMAL, TIME_LIMIT)
    assert outcome.seconds < 15.0
    outcome.schedule.validate(inst)
    assert evaluate(outcome.schedule, inst) == outcome.objective
