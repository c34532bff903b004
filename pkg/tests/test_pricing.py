import itertools

import numpy as np
import pytest
from conftest import random_instance

from batch_enum import enumerate_all
from branch_state import BranchState
from instance import Batch, Instance
from pricing import (
    BatchPricer,
    DualSolution,
    price_knapsack,
    price_with_state,
    solve_knapsack,
    solve_knapsack_with_conflicts,
)


def best_subset(profits, sizes, capacity, conflicts=(), forbidden=()) -> float:
    best = 0.0
    for size in range(1, len(profits) + 1):
        for subset in itertools.combinations(range(len(profits)), size):
            if sum(sizes[k] for k in subset) > capacity or frozenset(subset) in forbidden:
                continue
            if any(a in subset and b in subset for a, b in conflicts):
                continue
            best = max(best, sum(profits[k] for k in subset))
    return best


def test_knapsack_dp_matches_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(200):
        count = int(rng.integers(1, 10))
        profits = list(rng.normal(2.0, 3.0, size=count))
        sizes = [int(s) for s in rng.integers(0, 8, size=count)]
        capacity = int(rng.integers(1, 15))
        chosen, profit = solve_knapsack(profits, sizes, capacity)
        assert profit == pytest.approx(best_subset(profits, sizes, capacity))
        assert sum(sizes[k] for k in chosen) <= capacity
        assert chosen == sorted(chosen)
        assert profit == pytest.approx(sum(profits[k] for k in chosen))


def test_knapsack_with_conflicts_matches_enumeration():
    rng = np.random.default_rng(12)
    for _ in range(200):
        count = int(rng.integers(1, 9))
        profits = list(rng.normal(2.0, 3.0, size=count))
        sizes = [int(s) for s in rng.integers(1, 6, size=count)]
        capacity = int(rng.integers(3, 12))
        pairs = list(itertools.combinations(range(count), 2))
        conflicts = [pairs[k] for k in rng.permutation(len(pairs))[: int(rng.integers(0, len(pairs) + 1))]]
        optimum, _ = solve_knapsack(profits, sizes, capacity)
        forbidden = [frozenset(optimum)] if optimum and rng.random() < 0.5 else []
        chosen, profit = solve_knapsack_with_conflicts(profits, sizes, capacity, conflicts, forbidden)
        assert profit == pytest.approx(best_subset(profits, sizes, capacity, conflicts, forbidden))
        assert not any(a in chosen and b in chosen for a, b in conflicts)
        assert frozenset(chosen) not in forbidden


def test_forbidden_optimum_may_need_a_worse_item():
    # Only set with positive profit is forbidden, so the answer includes the negative item
    chosen, profit = solve_knapsack_with_conflicts([5.0, -1.0], [1, 1], 2, [], [frozenset({0})])
    assert chosen == [0, 1] and profit == pytest.approx(4.0)


def random_duals(inst: Instance, horizon: int, seed: int) -> DualSolution:
    rng = np.random.default_rng(seed)
    return DualSolution(u=-rng.random(horizon) * 20.0, pi=rng.random(inst.n) * 60.0)


def reduced_cost(inst: Instance, jobs, start: int, duals: DualSolution) -> float:
    duration = inst.q[inst.family_of[jobs[0]]]
    completion = start + duration - 1
    return sum(inst.w[i] * completion - duals.pi[i] for i in jobs) - duals.window(start, duration)


def test_knapsack_pricing_finds_the_most_negative_column():
    for seed in range(30):
        inst = random_instance(seed, n_range=(3, 9), m_range=(1, 3))
        duals = random_duals(inst, 12, seed)
        batches = enumerate_all(inst)
        for j in range(inst.m):
            for start in (1, 4):
                jobs, rc = price_knapsack(inst, j, start, duals)
                expected = min(
                    [reduced_cost(inst, b.jobs, start, duals) for b in batches[j]]
                    + [-duals.window(start, inst.q[j])]
                )
                assert rc == pytest.approx(expected)
                if jobs:
                    assert rc == pytest.approx(reduced_cost(inst, jobs, start, duals))
                    pricer_jobs, pricer_rc = BatchPricer(inst, batches).price(j, start, duals)
                    assert pricer_rc == pytest.approx(rc)


def test_window_sums_the_running_periods():
    duals = DualSolution(u=np.array([-1.0, -2.0, -4.0]), pi=np.zeros(1))
    assert duals.window(2, 2) == pytest.approx(-6.0)


def random_state(inst: Instance, rng: np.random.Generator, batches) -> BranchState:
    state = BranchState()
    for j in range(inst.m):
        jobs = inst.jobs_of[j]
        for i, k in itertools.combinations(jobs, 2):
            draw = rng.random()
            if draw < 0.15:
                state = state.together(i, k)
            elif draw < 0.35:
                state = state.apart(i, k)
        for batch in batches[j]:
            if rng.random() < 0.1:
                state = state.forbid(batch, 2)
    return state


def test_pricing_under_branching_decisions():
    rng = np.random.default_rng(5)
    checked = 0
    for seed in range(60):
        inst = random_instance(seed, n_range=(3, 8), m_range=(1, 2))
        batches = enumerate_all(inst)
        state = random_state(inst, rng, batches)
        if not state.is_consistent(inst):
            continue
        duals = random_duals(inst, 8, seed)
        pricer = BatchPricer(inst, batches)
        for j in range(inst.m):
            allowed = [b for b in batches[j] if state.allows(inst, b, 2)]
            expected = min(
                [reduced_cost(inst, b.jobs, 2, duals) for b in allowed] + [-duals.window(2, inst.q[j])]
            )
            jobs, rc = price_with_state(inst, j, 2, duals, state)
            assert rc == pytest.approx(expected), seed
            if jobs:
                assert state.allows(inst, Batch.of(inst, jobs), 2)
            _, scanned = pricer.price(j, 2, duals, state)
            if allowed:
                assert scanned == pytest.approx(min(reduced_cost(inst, b.jobs, 2, duals) for b in allowed))
            checked += 1
    assert checked > 20
