from conftest import random_instance

from instance import Instance
from oracle import brute_force
from preprocess import compute_bounds, trivial_bounds


def test_example_bounds(example1):
    prep = compute_bounds(example1)
    assert prep.Nb == (1, 2)
    assert prep.B == (4, 1)
    assert prep.H_max == 5
    assert prep.omega_size == 5


def test_full_size_jobs():
    inst = Instance(family_of=(0, 0, 0), w=(1, 1, 1), v=(4, 4, 4), q=(2,), V=4)
    prep = compute_bounds(inst)
    assert prep.B == (3,) and prep.H_max == 6


def test_unit_sizes_fit_one_batch():
    inst = Instance(family_of=(0, 0, 0), w=(1, 1, 1), v=(1, 1, 1), q=(2,), V=4)
    assert compute_bounds(inst).B == (1,)


def test_trivial_bounds(example1):
    prep = trivial_bounds(example1)
    assert prep.B == (4, 2) and prep.H_max == 6 and prep.omega_size == 6


def test_bounds_never_exceed_trivial_ones():
    for seed in range(100):
        inst = random_instance(seed)
        prep = compute_bounds(inst)
        assert prep.H_max <= inst.total_processing()
        for j, jobs in enumerate(inst.jobs_of):
            assert 1 <= prep.Nb[j] <= len(jobs)
            assert prep.B[j] <= len(jobs)


def test_batch_limit_keeps_the_optimum():
    for seed in range(40):
        inst = random_instance(seed, n_range=(4, 8))
        restricted = brute_force(inst, max_batches=compute_bounds(inst).B)
        assert restricted.objective == brute_force(inst).objective
