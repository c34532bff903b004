import itertools

import numpy as np
import pytest

import mip_engine
from exceptions import MalformedModelException
from linear_model import GE, LE, LinearModel
from lp_engine import INFEASIBLE, OPTIMAL, TIME_LIMIT
from mip_engine import NODE_LIMIT, STOPPED, solve_mip
from utils import Deadline, Limits


def knapsack_model(profits: list[int], sizes: list[int], capacity: int) -> LinearModel:
    model = LinearModel("knapsack")
    for k, profit in enumerate(profits):
        model.add_binary(f"x{k}", -profit)
    model.add_row("capacity", LE, capacity, {k: size for k, size in enumerate(sizes)})
    return model


def brute_force_knapsack(profits: list[int], sizes: list[int], capacity: int) -> int:
    best = 0
    for choice in itertools.product((0, 1), repeat=len(profits)):
        if sum(s * c for s, c in zip(sizes, choice)) <= capacity:
            best = max(best, sum(p * c for p, c in zip(profits, choice)))
    return best


def test_knapsacks_match_enumeration():
    rng = np.random.default_rng(3)
    for _ in range(40):
        count = int(rng.integers(3, 10))
        profits = [int(p) for p in rng.integers(1, 20, size=count)]
        sizes = [int(s) for s in rng.integers(1, 10, size=count)]
        capacity = int(rng.integers(5, 25))
        result = solve_mip(knapsack_model(profits, sizes, capacity), integer_objective=True)
        assert result.status == OPTIMAL
        assert -result.objective == pytest.approx(brute_force_knapsack(profits, sizes, capacity))
        assert result.gap == 0.0


def test_general_integers():
    model = LinearModel("integers")
    x = model.add_variable("x", 0.0, 10.0, -1.0, integer=True)
    y = model.add_variable("y", 0.0, 10.0, -1.0, integer=True)
    model.add_row("a", LE, 7.5, {x: 2.0, y: 1.0})
    model.add_row("b", LE, 7.5, {x: 1.0, y: 2.0})
    result = solve_mip(model)
    assert result.objective == pytest.approx(-4.0)
    assert model.is_feasible(result.best_solution)


def test_infeasible():
    model = LinearModel("infeasible")
    x = model.add_binary("x")
    y = model.add_binary("y")
    model.add_row("both", GE, 1.5, {x: 1.0, y: 1.0})
    model.add_row("one", LE, 1.0, {x: 1.0, y: 1.0})
    assert solve_mip(model).status == INFEASIBLE


def test_hint_and_node_limit():
    profits = [10, 13, 7, 8, 9, 11, 12, 5]
    sizes = [5, 6, 4, 5, 5, 6, 7, 3]
    model = knapsack_model(profits, sizes, 16)
    hint = np.zeros(len(profits))
    hint[0] = 1.0
    result = solve_mip(model, Limits(node_limit=1), hint)
    assert result.status == NODE_LIMIT
    assert result.objective <= -10.0
    assert result.best_bound <= result.objective
    assert result.node_count == 1


def test_infeasible_hint_is_ignored():
    model = knapsack_model([3, 4], [2, 2], 2)
    result = solve_mip(model, incumbent_hint=np.ones(2))
    assert result.status == OPTIMAL and result.objective == pytest.approx(-4.0)


def test_callbacks():
    model = knapsack_model([10, 13, 7, 8, 9], [5, 6, 4, 5, 5], 12)
    stopped = solve_mip(model, incumbent_hint=np.zeros(5), on_node=lambda *_: True)
    assert stopped.status == STOPPED and stopped.node_count == 1

    seen: list[float] = []
    result = solve_mip(model, on_incumbent=lambda values, value: seen.append(value))
    assert result.status == OPTIMAL
    assert seen[-1] == result.objective
    assert all(a > b for a, b in zip(seen, seen[1:]))


def test_integer_variable_needs_finite_bounds():
    model = LinearModel()
    model.add_variable("x", 0.0, float("inf"), 1.0, integer=True)
    with pytest.raises(MalformedModelException):
        solve_mip(model)


class CountdownDeadline(Deadline):
    """
    Expires once it has been asked a fixed number of times.
    """

    def __init__(self, checks: int) -> None:
        super().__init__(None)
        self.checks: int = checks

    def expired(self) -> bool:
        self.checks -= 1
        return self.checks < 0


def test_time_limit_reached_inside_the_root_relaxation(monkeypatch):
    # The node loop asks once, the first simplex pivot asks next
    monkeypatch.setattr(mip_engine, "Deadline", lambda seconds: CountdownDeadline(1))
    profits = [10, 13, 7, 8, 9, 11, 12, 5]
    model = knapsack_model(profits, [5, 6, 4, 5, 5, 6, 7, 3], 16)
    hint = np.zeros(len(profits))
    hint[1] = 1.0
    result = solve_mip(model, Limits(time_limit=60.0), hint)
    assert result.status == TIME_LIMIT
    assert result.node_count == 0
    assert result.objective == pytest.approx(-13.0)
    assert result.best_bound == -np.inf
