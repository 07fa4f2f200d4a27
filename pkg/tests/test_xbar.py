import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lingalg.fibmatrix import fib
from lingalg.xbar import (
    FTree,
    NodeState,
    Rule,
    TreeSizeError,
    ancestor_at,
    count_states,
    grow,
    parents_consistent_with,
    state_counts,
    symmetric,
    validate,
)


def fib_oracle(n):
    """Independent Fibonacci oracle with F(1) = F(2) = 1."""
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a if n >= 1 else 0


def totals(counts):
    return [z + o for z, o in counts]


def test_grow_depth3_counts():
    assert totals(grow(3).counts) == [1, 1, 2, 3]


def test_grow_depth0_is_single_zero_root():
    t = grow(0)
    assert len(t) == 1
    assert t.nodes[0].state is NodeState.ZERO
    assert totals(t.counts) == [1]


def test_grow_depth10_counts():
    assert totals(grow(10).counts) == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_counts_match_fib_oracle_to_25():
    counts = state_counts(25)
    for n, (z, o) in enumerate(counts):
        assert z + o == fib_oracle(n + 1)
    # and against the matrix-power route
    for n, (z, o) in enumerate(counts):
        assert z + o == fib(n + 1)


def test_count_states_step3():
    t = grow(3)
    assert count_states(t, 3) == (1, 2)
    assert count_states(t, 0) == (1, 0)


def test_count_states_step6():
    # oracle: (p, q) -> (q, p+q) recurrence, run independently
    z, o = 1, 0
    for _ in range(6):
        z, o = o, z + o
    assert (z, o) == (5, 8)
    assert count_states(grow(6), 6) == (5, 8)


def test_count_states_recurrence_links_consecutive_steps():
    t = grow(12)
    for n in range(12):
        z, o = count_states(t, n)
        assert count_states(t, n + 1) == (o, z + o)


def test_count_states_out_of_range():
    t = grow(4)
    with pytest.raises(ValueError):
        count_states(t, 5)
    with pytest.raises(ValueError):
        count_states(t, -1)


def test_state_counts_matches_grown_tree():
    assert state_counts(14) == list(grow(14).counts)


def test_grow_validates_branching_table():
    validate(grow(9))


def test_node_cap_enforced():
    with pytest.raises(TreeSizeError):
        grow(28)  # needs fib(31)-1 = 1346268 nodes > 2^20
    with pytest.raises(TreeSizeError):
        grow(12, node_cap=100)
    with pytest.raises(TreeSizeError):
        grow(31)
    # counts-only has no such limit
    assert len(state_counts(200)) == 201


def test_backward_ambiguity_for_one():
    assert parents_consistent_with(NodeState.ONE) == frozenset(
        {(NodeState.ZERO, Rule.EXCITE), (NodeState.ONE, Rule.PERSIST)}
    )
    assert len(parents_consistent_with(NodeState.ONE)) == 2


def test_backward_unique_for_zero():
    assert parents_consistent_with(NodeState.ZERO) == frozenset(
        {(NodeState.ONE, Rule.DECAY)}
    )


def test_irreversibility_witness_and_ariadne_thread():
    # some ONE node at step >= 2 has two admissible local parents, yet the
    # stored links name exactly one ancestor at every earlier step
    t = grow(6)
    witness = next(
        n for n in t.nodes if n.state is NodeState.ONE and n.step >= 2
    )
    assert len(parents_consistent_with(witness.state)) == 2
    for earlier in range(witness.step):
        anc = ancestor_at(t, witness.id, earlier)
        assert anc.step == earlier
        # replaying the stored rule from the ancestor's parent is consistent
        if anc.parent is not None:
            parent = t.nodes[anc.parent]
            assert (parent.state, anc.rule) in parents_consistent_with(anc.state)


def test_ancestor_at_range_check():
    t = grow(3)
    leaf = max(t.nodes, key=lambda n: n.step)
    with pytest.raises(ValueError):
        ancestor_at(t, leaf.id, leaf.step + 1)


def test_symmetric_flips_root_and_counts():
    t = grow(3)
    s = symmetric(t)
    assert s.nodes[0].state is NodeState.ONE
    assert totals(s.counts) == [1, 1, 2, 3]
    # zeros and ones swap
    assert [(o, z) for z, o in t.counts] == list(s.counts)


def test_symmetric_is_involution():
    t = grow(5)
    assert symmetric(symmetric(t)) == t


def test_symmetric_satisfies_mirror_table():
    validate(symmetric(grow(7)))


def test_state_counts_mirrored_matches_symmetric_tree():
    s = symmetric(grow(9))
    assert state_counts(9, root_state=NodeState.ONE) == list(s.counts)


@settings(max_examples=30, deadline=None)
@given(depth=st.integers(min_value=0, max_value=12))
def test_totals_are_fibonacci(depth):
    t = grow(depth)
    for n in range(depth + 1):
        z, o = count_states(t, n)
        assert z + o == fib_oracle(n + 1)


@settings(max_examples=30, deadline=None)
@given(depth=st.integers(min_value=1, max_value=10), data=st.data())
def test_random_node_consistent_with_parent(depth, data):
    t = grow(depth)
    node = data.draw(st.sampled_from([n for n in t.nodes if n.parent is not None]))
    parent = t.nodes[node.parent]
    assert node.step == parent.step + 1
    assert (parent.state, node.rule) in parents_consistent_with(node.state)


@settings(max_examples=20, deadline=None)
@given(depth=st.integers(min_value=0, max_value=10))
def test_state_counts_equals_materialized(depth):
    assert state_counts(depth) == list(grow(depth).counts)
