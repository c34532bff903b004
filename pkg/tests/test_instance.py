import itertools

import pytest
from conftest import EXAMPLE_OPTIMUM

from exceptions import InfeasibleBatchingException, InfeasibleScheduleException, InvalidInstanceException
from instance import Batch, Instance, Schedule, evaluate, wspt_objective, wspt_sequence


def timed(inst: Instance, groups: list[tuple[int, ...]]) -> Schedule:
    return Schedule(tuple((Batch.of(inst, jobs), start) for start, jobs in enumerate(groups, start=1)))


def test_example_solutions(example1):
    assert evaluate(timed(example1, [(0, 1), (4, 5), (2,), (3,)]), example1) == EXAMPLE_OPTIMUM
    # Pairing by family A alone, then WSPT
    assert evaluate(timed(example1, [(0, 2), (1, 3), (4, 5)]), example1) == 181


def test_single_job():
    inst = Instance(family_of=(0,), w=(1,), v=(1,), q=(1,), V=1)
    assert evaluate(timed(inst, [(0,)]), inst) == 1


def test_unsorted_batch_completion_and_coverage(example1):
    schedule = Schedule(((Batch(0, (1, 0), 2), 1), (Batch.of(example1, (4, 5)), 2)))
    assert schedule.completion_times(example1)[0] == 1
    with pytest.raises(InfeasibleScheduleException, match="missing-job"):
        evaluate(schedule, example1)


@pytest.mark.parametrize(
    "batches, violation",
    [
        (((Batch(0, (0, 2, 3), 7), 1),), "capacity"),
        (((Batch(0, (0, 4), 3), 1),), "mixed-family"),
        (((Batch(0, (0,), 1), 1), (Batch(0, (0, 1), 2), 2)), "split-job"),
        (((Batch(0, (0, 1), 2), 1), (Batch(1, (4, 5), 4), 1)), "overlap"),
    ],
)
def test_invalid_schedules(example1, batches, violation):
    with pytest.raises(InfeasibleScheduleException) as e:
        evaluate(Schedule(batches), example1)
    assert e.value.violation == violation


def test_wspt_sequence_example(example1, example1_batches):
    shuffled = list(reversed(example1_batches))
    schedule = wspt_sequence(shuffled, example1)
    assert [batch.jobs for batch, _ in schedule.batches] == [(0, 1), (4, 5), (2,), (3,)]
    assert [start for _, start in schedule.batches] == [1, 2, 3, 4]
    assert evaluate(schedule, example1) == EXAMPLE_OPTIMUM


def test_wspt_sequence_rejects_incomplete_batching(example1, example1_batches):
    with pytest.raises(InfeasibleBatchingException, match="coverage"):
        wspt_sequence(example1_batches[:-1], example1)


def test_wspt_equal_ratios_are_symmetric():
    inst = Instance(family_of=(0, 1), w=(5, 5), v=(1, 1), q=(1, 1), V=1)
    batches = [Batch.of(inst, (0,)), Batch.of(inst, (1,))]
    assert evaluate(wspt_sequence(batches, inst), inst) == evaluate(wspt_sequence(batches[::-1], inst), inst) == 15


def test_wspt_beats_every_permutation(instance_factory):
    for seed in range(20):
        inst = instance_factory(seed, n_range=(4, 6), m_range=(1, 3))
        batches = [Batch.of(inst, (i,)) for i in range(inst.n)]
        best = evaluate(wspt_sequence(batches, inst), inst)
        for order in itertools.permutations(batches):
            clock, total = 0, 0
            for batch in order:
                clock += inst.q[batch.family]
                total += batch.weight(inst) * clock
            assert best <= total
        assert wspt_objective((b.weight(inst), inst.q[b.family]) for b in batches) == best


def test_json_round_trip_keeps_one_based_numbers(tmp_path, example1):
    path = tmp_path / "instance.json"
    example1.save(str(path))
    data = example1.to_dict()
    assert data["jobs"][4] == {"family": 2, "w": 10, "v": 2}
    assert Instance.load(str(path)) == example1


@pytest.mark.parametrize(
    "data",
    [
        {"V": 4, "q": [1], "jobs": [{"family": 1, "w": 1, "v": 5}]},
        {"V": 4, "q": [1], "jobs": [{"family": 2, "w": 1, "v": 1}]},
        {"V": 4, "q": [1, 1], "jobs": [{"family": 1, "w": 1, "v": 1}]},
        {"V": 4, "q": [1], "jobs": [{"family": 1, "w": 0, "v": 1}]},
        {"n": 2, "V": 4, "q": [1], "jobs": [{"family": 1, "w": 1, "v": 1}]},
        {"V": 4, "jobs": []},
    ],
)
def test_invalid_instances(data):
    with pytest.raises(InvalidInstanceException):
        Instance.from_dict(data)


def test_schedule_json(tmp_path, example1, example1_batches):
    schedule = wspt_sequence(example1_batches, example1)
    data = schedule.to_dict(example1)
    assert data["objective"] == EXAMPLE_OPTIMUM
    assert data["batches"][1] == {"family": 2, "start": 2, "jobs": [5, 6]}
    assert "1,2" in schedule.describe(example1)
