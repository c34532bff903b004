import pytest

from exceptions import SpecMismatchException
from generator import INSTANCE_SET_SETTINGS, GenSpec, family_sizes, generate


def test_same_seed_same_instance():
    spec = GenSpec("K2008", 20, 4, (1, 10), 42)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(GenSpec("K2008", 20, 4, (1, 10), 43))


@pytest.mark.parametrize("set_name, sizes", [("K2008", (2, 4)), ("K2008u", (4, 8)), ("H2017", (1, 50))])
def test_ranges_are_respected(set_name, sizes):
    settings = INSTANCE_SET_SETTINGS[set_name]
    inst = generate(GenSpec(set_name, 30, 3, sizes, 7))
    assert inst.n == 30 and inst.m == 3
    assert inst.V == settings.capacity
    assert all(sizes[0] <= v <= sizes[1] for v in inst.v)
    assert all(1 <= w <= 10 for w in inst.w)
    for j, duration in enumerate(inst.q, start=1):
        low, high = settings.duration_range if settings.duration_range else (10 * j, 10 * j + 10)
        assert low <= duration <= high


def test_families_are_split_evenly():
    assert family_sizes(20, 6) == [3, 3, 3, 3, 3, 5]
    inst = generate(GenSpec("K2008", 20, 6, (1, 10), 1))
    assert [len(jobs) for jobs in inst.jobs_of] == [3, 3, 3, 3, 3, 5]


def test_unit_durations_for_k2008u():
    inst = generate(GenSpec("K2008u", 120, 4, (1, 10), 3))
    assert inst.q == (1, 1, 1, 1)


@pytest.mark.parametrize(
    "spec",
    [
        GenSpec("K2009", 20, 4, (1, 10), 0),
        GenSpec("K2008", 20, 4, (1, 50), 0),
        GenSpec("K2008", 3, 4, (1, 10), 0),
        GenSpec("K2008", 20, 4, (1, 10), -1),
        GenSpec("K2008", 21, 4, (1, 10), 0, strict=True),
    ],
)
def test_spec_mismatch(spec):
    with pytest.raises(SpecMismatchException):
        generate(spec)


def test_non_strict_accepts_desk_sizes():
    inst = generate(GenSpec("H2017", 8, 2, (1, 50), 5))
    assert inst.n == 8


def test_size_range_does_not_shift_the_other_streams():
    narrow = generate(GenSpec("K2008", 20, 4, (2, 4), 9))
    wide = generate(GenSpec("K2008", 20, 4, (1, 10), 9))
    assert narrow.q == wide.q
    assert narrow.w == wide.w
    assert narrow.family_of == wide.family_of
    assert narrow.v != wide.v
