from branch_state import BranchState
from instance import Batch, Instance


def test_children_do_not_share_decisions(example1: Instance):
    root: BranchState = BranchState()
    together: BranchState = root.together(1, 0)
    apart: BranchState = root.apart(0, 1)
    assert root.is_empty()
    assert together.merges == {(0, 1)} and not together.conflicts
    assert apart.conflicts == {(0, 1)} and not apart.merges
    fixed: BranchState = together.fix(Batch.of(example1, (4, 5)), 1)
    assert not together.fixed and fixed.fixed_jobs() == {4, 5}
    assert fixed.occupied_periods(example1) == {1}


def test_groups_follow_merge_chains(example1: Instance):
    state: BranchState = BranchState().together(2, 3).together(0, 3)
    assert state.groups(example1, 0) == [(0, 2, 3), (1,)]
    assert state.groups(example1, 1) == [(4,), (5,)]
    # Fixed jobs leave the groups
    state = state.fix(Batch.of(example1, (4,)), 2)
    assert state.groups(example1, 1) == [(5,)]


def test_allows_checks_every_decision(example1: Instance):
    pair: Batch = Batch.of(example1, (0, 1))
    single: Batch = Batch.of(example1, (0,))
    assert BranchState().allows(example1, pair, 1)

    merged: BranchState = BranchState().together(0, 1)
    assert merged.allows(example1, pair, 1)
    assert not merged.allows(example1, single, 1)
    assert merged.allows(example1, Batch.of(example1, (2,)), 1)

    separated: BranchState = BranchState().apart(0, 1)
    assert not separated.allows(example1, pair, 1)
    assert separated.allows(example1, single, 1)

    forbidden: BranchState = BranchState().forbid(pair, 2)
    assert not forbidden.allows(example1, pair, 2)
    assert forbidden.allows(example1, pair, 1)
    assert forbidden.forbidden_at(0, 2) == {(0, 1)}
    assert forbidden.forbidden_at(0, 1) == set()

    fixed: BranchState = BranchState().fix(Batch.of(example1, (4, 5)), 1)
    assert not fixed.allows(example1, pair, 1)
    assert fixed.allows(example1, pair, 2)
    assert not fixed.allows(example1, Batch.of(example1, (5,)), 3)


def test_consistency(example1: Instance):
    assert BranchState().is_consistent(example1)
    assert not BranchState().together(0, 1).apart(0, 1).is_consistent(example1)
    # Merging 0-2 and 1-2 puts 0 and 1 in one group even though they must be apart
    assert not BranchState().apart(0, 1).together(0, 2).together(1, 2).is_consistent(example1)
    overlapping: Instance = Instance(family_of=(0, 1), w=(1, 1), v=(1, 1), q=(2, 3), V=2)
    state: BranchState = BranchState().fix(Batch.of(overlapping, (0,)), 1)
    assert state.fix(Batch.of(overlapping, (1,)), 3).is_consistent(overlapping)
    assert not state.fix(Batch.of(overlapping, (1,)), 2).is_consistent(overlapping)
