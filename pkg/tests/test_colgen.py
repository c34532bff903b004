import math

import numpy as np
import pytest
from conftest import EXAMPLE_OPTIMUM, random_instance

from batch_enum import enumerate_all
from branch_state import BranchState
from colgen import (
    CgConfig,
    ColgenResult,
    RestrictedMaster,
    initial_columns,
    make_column,
    run_colgen,
    super_columns,
    super_cost,
)
from config import SolverSettings
from formulations import build_spf, start_periods
from instance import Batch, Instance
from lp_engine import OPTIMAL, LpSolution, solve_lp
from oracle import brute_force
from preprocess import PreprocessResult, compute_bounds
from pricing import BatchPricer


def test_seed_pool(example1: Instance, example1_batches: list[Batch]):
    prep: PreprocessResult = compute_bounds(example1)
    columns = initial_columns(example1, prep)
    assert len(columns) == 10
    supers = [column for column in columns if column.is_super]
    assert [column.name for column in supers] == [f"super{i}" for i in range(1, 7)]
    assert all(column.cost == super_cost(example1, prep) for column in supers)
    assert sorted(column.jobs for column in columns if not column.is_super) == sorted(
        batch.jobs for batch in example1_batches
    )
    assert sum(column.cost for column in columns if not column.is_super) == EXAMPLE_OPTIMUM


def test_column_rows(example1: Instance):
    prep: PreprocessResult = compute_bounds(example1)
    column = make_column(example1, Batch.of(example1, (0, 1)), 2)
    assert column.cost == 80
    assert column.name == "z1_2_1-2"
    assert column.rows(example1, prep) == {1: 1.0, prep.H_max: 1.0, prep.H_max + 1: 1.0}
    assert super_columns(example1, prep)[2].rows(example1, prep) == {prep.H_max + 2: 1.0}


def test_example_bound(example1: Instance):
    result: ColgenResult = run_colgen(example1, compute_bounds(example1))
    assert result.converged
    assert result.lp_value <= EXAMPLE_OPTIMUM + 1e-6
    assert len(result.values) == len(result.columns)
    assert all(not column.is_super for column, _ in result.support(1e-7))


@pytest.mark.parametrize("seed", range(15))
def test_bound_equals_full_relaxation(seed: int):
    inst: Instance = random_instance(seed, n_range=(3, 7), m_range=(1, 2))
    prep: PreprocessResult = compute_bounds(inst)
    full: LpSolution = solve_lp(build_spf(inst, prep, enumerate_all(inst)))
    assert full.status == OPTIMAL
    result: ColgenResult = run_colgen(inst, prep)
    assert result.converged
    assert result.lp_value == pytest.approx(full.objective, abs=1e-6)
    assert result.lp_value <= brute_force(inst).objective + 1e-6


@pytest.mark.parametrize("seed", range(8))
def test_pricing_over_batch_lists_gives_the_same_bound(seed: int):
    inst: Instance = random_instance(seed, n_range=(4, 8))
    prep: PreprocessResult = compute_bounds(inst)
    batchless: ColgenResult = run_colgen(inst, prep)
    listed: ColgenResult = run_colgen(inst, prep, batchless=False, batches=enumerate_all(inst))
    assert listed.converged
    assert listed.lp_value == pytest.approx(batchless.lp_value, abs=1e-6)


def test_batch_lists_are_required_without_knapsack_pricing(example1: Instance):
    with pytest.raises(ValueError):
        run_colgen(example1, compute_bounds(example1), batchless=False)


def test_decisions_never_lower_the_bound():
    for seed in range(10):
        inst: Instance = random_instance(seed, n_range=(4, 7), m_range=(1, 2))
        prep: PreprocessResult = compute_bounds(inst)
        root: ColgenResult = run_colgen(inst, prep)
        jobs = inst.jobs_of[0]
        if len(jobs) < 2:
            continue
        for state in (BranchState().together(jobs[0], jobs[1]), BranchState().apart(jobs[0], jobs[1])):
            child: ColgenResult = run_colgen(inst, prep, state=state, columns=root.columns, basis_hint=root.basis)
            assert child.converged
            assert child.lp_value >= root.lp_value - 1e-6
            for column, _ in child.support(1e-7):
                assert column.is_super or state.allows(inst, column.batch(inst), column.start)


def test_restricted_master_respects_fixed_columns(example1: Instance):
    prep: PreprocessResult = compute_bounds(example1)
    fixed = Batch.of(example1, (2,))
    state: BranchState = BranchState().fix(fixed, 1)
    master = RestrictedMaster(example1, prep, initial_columns(example1, prep), state, SolverSettings())
    assert master.columns[0].jobs == (2,) and master.columns[0].start == 1
    assert [column for column in master.columns if 2 in column.jobs] == [master.columns[0]]
    solution: LpSolution = master.solve()
    assert solution.status == OPTIMAL
    assert solution.primal[0] == pytest.approx(1.0)
    assert np.all(master.duals(solution).u <= 0.0)


def test_config_rejects_an_empty_round():
    with pytest.raises(ValueError):
        CgConfig(col_number=0, super_cost=1.0)


def test_single_job_bound():
    inst: Instance = Instance(family_of=(0,), w=(1,), v=(1,), q=(1,), V=1)
    assert run_colgen(inst, compute_bounds(inst)).lp_value == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(6))
def test_nothing_prices_out_after_convergence(seed: int):
    inst: Instance = random_instance(seed, n_range=(5, 9))
    prep: PreprocessResult = compute_bounds(inst)
    result: ColgenResult = run_colgen(inst, prep)
    pricer = BatchPricer(inst, enumerate_all(inst))
    for j in range(inst.m):
        for t in start_periods(inst, prep, j):
            _, reduced = pricer.price(j, t, result.duals)
            assert reduced >= -1e-6


def test_time_limit_before_the_first_master_optimum(example1: Instance):
    prep: PreprocessResult = compute_bounds(example1)
    config: CgConfig = CgConfig.create(example1, prep, SolverSettings(), 20, time_limit=0.0)
    result: ColgenResult = run_colgen(example1, prep, config=config)
    assert not result.converged
    assert math.isnan(result.lp_value)
    assert result.rounds == 1
    assert len(result.values) == len(result.columns) == 10
    assert not result.support()
