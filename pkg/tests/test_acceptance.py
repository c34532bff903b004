from functools import lru_cache

import pytest
from conftest import random_instance

from batch_enum import enumerate_all
from colgen import ColgenResult
from constants import FORMULATIONS
from formulations import build_spf
from generator import GenSpec, generate
from instance import Instance
from lp_engine import OPTIMAL, LpSolution, solve_lp
from oracle import brute_force
from preprocess import PreprocessResult, compute_bounds
from solve import SolveOutcome, compute_bound, solve
from utils import Limits

pytestmark = pytest.mark.slow

SMALL_SEEDS: range = range(200)
EXACT_METHODS: list[str] = [*FORMULATIONS, "bnp"]


@lru_cache(maxsize=None)
def small_instance(seed: int) -> Instance:
    return random_instance(1000 + seed)


@lru_cache(maxsize=None)
def optimum(seed: int) -> int:
    return brute_force(small_instance(seed)).objective


@pytest.mark.parametrize("method", EXACT_METHODS)
def test_exact_methods_match_the_oracle(method: str):
    for seed in SMALL_SEEDS:
        outcome: SolveOutcome = solve(small_instance(seed), method)
        assert outcome.status == OPTIMAL, seed
        assert outcome.objective == optimum(seed), seed


def test_batch_count_bounds_keep_an_optimum():
    for seed in SMALL_SEEDS:
        inst: Instance = small_instance(seed)
        restricted: int = brute_force(inst, max_batches=compute_bounds(inst).B).objective
        assert restricted == optimum(seed), seed


def test_root_bound_equals_the_full_relaxation():
    for seed in range(50):
        inst: Instance = random_instance(5000 + seed, n_range=(4, 12), m_range=(2, 3))
        prep: PreprocessResult = compute_bounds(inst)
        full: LpSolution = solve_lp(build_spf(inst, prep, enumerate_all(inst)))
        assert full.status == OPTIMAL, seed
        bound: ColgenResult = compute_bound(inst)
        assert bound.converged, seed
        assert bound.lp_value == pytest.approx(full.objective, abs=1e-6), seed
        assert bound.lp_value <= brute_force(inst).objective + 1e-6, seed


def test_heuristics_and_bounds_are_ordered():
    for seed in range(40):
        inst: Instance = small_instance(seed)
        best: int = optimum(seed)
        bound: float = compute_bound(inst).lp_value
        sk: int = solve(inst, "sk").objective
        ps: int = solve(inst, "ps").objective
        cgh: int = solve(inst, "cgh").objective
        tbnp: int = solve(inst, "tbnp", Limits(time_limit=10.0)).objective
        assert best <= ps <= sk, seed
        assert best <= cgh, seed
        assert best <= tbnp, seed
        assert bound <= best + 1e-6, seed


@pytest.fixture(scope="module")
def generated_runs() -> list[SolveOutcome]:
    runs: list[SolveOutcome] = []
    for seed in range(40):
        m: int = 2 + seed % 2
        inst: Instance = generate(GenSpec("K2008", 20, m, (1, 10), seed))
        runs.append(solve(inst, "bnp", Limits(time_limit=300.0)))
    return runs


def test_branch_and_price_solves_most_generated_instances(generated_runs: list[SolveOutcome]):
    solved: int = sum(1 for outcome in generated_runs if outcome.status == OPTIMAL)
    assert solved >= 0.9 * len(generated_runs)


def test_root_bound_is_tight_on_generated_instances(generated_runs: list[SolveOutcome]):
    ratios: list[float] = [
        outcome.details["root_lp"] / outcome.objective
        for outcome in generated_runs
        if outcome.status == OPTIMAL and outcome.details["root_converged"]
    ]
    assert ratios
    assert sum(ratios) / len(ratios) >= 0.95
