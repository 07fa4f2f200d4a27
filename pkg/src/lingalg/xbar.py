"""Binary tree grown by the two-level ladder dynamics.

A ZERO node can only be excited; a ONE node either decays or persists.
The trivial "stay in ZERO" move is excluded (it is dynamically equivalent
to nothing happening), so ZERO nodes have exactly one child and ONE nodes
two.  Per-step population counts then follow the Fibonacci progression,
which the tests cross-check against the exact matrix identities in
:mod:`lingalg.fibmatrix`.

Growth is breadth-first with deterministic ids: at a ONE node the DECAY
child is created before the PERSIST child.  A finished tree is immutable;
``symmetric`` returns the state/rule mirror image (the dynamics started
from ONE with the ladder roles exchanged).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .fibmatrix import fib

DEFAULT_NODE_CAP = 2**20
MAX_MATERIALIZED_DEPTH = 30


class TreeSizeError(RuntimeError):
    """Materializing the requested tree would exceed the node budget."""


class NodeState(Enum):
    ZERO = "zero"
    ONE = "one"


class Rule(Enum):
    EXCITE = "excite"
    DECAY = "decay"
    PERSIST = "persist"


# children of a node, as (rule, child state) pairs in left-to-right order
BRANCHING = {
    NodeState.ZERO: ((Rule.EXCITE, NodeState.ONE),),
    NodeState.ONE: ((Rule.DECAY, NodeState.ZERO), (Rule.PERSIST, NodeState.ONE)),
}

# the same table after exchanging ZERO <-> ONE and EXCITE <-> DECAY
MIRROR_BRANCHING = {
    NodeState.ONE: ((Rule.DECAY, NodeState.ZERO),),
    NodeState.ZERO: ((Rule.EXCITE, NodeState.ONE), (Rule.PERSIST, NodeState.ZERO)),
}


@dataclass(frozen=True)
class FTreeNode:
    id: int
    state: NodeState
    step: int
    parent: Optional[int]  # None for the root
    rule: Optional[Rule]  # rule that produced this node; None for the root


class FTree:
    """Immutable id-indexed tree with per-step (zeros, ones) counts."""

    def __init__(self, nodes: tuple[FTreeNode, ...], depth: int, root_state: NodeState):
        self.nodes = nodes
        self.depth = depth
        self.root_state = root_state
        counts = [[0, 0] for _ in range(depth + 1)]
        for node in nodes:
            counts[node.step][0 if node.state is NodeState.ZERO else 1] += 1
        self.counts = tuple((z, o) for z, o in counts)

    def __eq__(self, other):
        if not isinstance(other, FTree):
            return NotImplemented
        return self.depth == other.depth and self.nodes == other.nodes

    def __len__(self):
        return len(self.nodes)

    def children(self, node_id: int) -> tuple[FTreeNode, ...]:
        return tuple(n for n in self.nodes if n.parent == node_id)


def state_counts(depth: int, root_state: NodeState = NodeState.ZERO) -> list[tuple[int, int]]:
    """Per-step (zeros, ones) up to ``depth`` by the recurrence alone.

    No nodes are materialized, so arbitrary depths are fine.  One step
    maps (p zeros, q ones) to (q, p+q); the mirrored dynamics (ONE root)
    swaps the two roles.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    mirrored = root_state is not NodeState.ZERO
    zeros, ones = (0, 1) if mirrored else (1, 0)
    out = [(zeros, ones)]
    for _ in range(depth):
        if mirrored:
            zeros, ones = zeros + ones, zeros
        else:
            zeros, ones = ones, zeros + ones
        out.append((zeros, ones))
    return out


def grow(depth: int, node_cap: int = DEFAULT_NODE_CAP) -> FTree:
    """Materialize the tree to ``depth`` steps, breadth-first.

    Refuses trees whose node count (a Fibonacci partial sum) would exceed
    ``node_cap``, and any depth beyond MAX_MATERIALIZED_DEPTH; use
    ``state_counts`` for counts at larger depths.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if depth > MAX_MATERIALIZED_DEPTH:
        raise TreeSizeError(
            f"depth {depth} > {MAX_MATERIALIZED_DEPTH}; use state_counts for counts only"
        )
    predicted = fib(depth + 3) - 1  # sum of per-step totals F(1)..F(depth+1)
    if predicted > node_cap:
        raise TreeSizeError(
            f"depth {depth} needs {predicted} nodes, over the cap {node_cap}"
        )

    nodes = [FTreeNode(id=0, state=NodeState.ZERO, step=0, parent=None, rule=None)]
    frontier = [nodes[0]]
    for _ in range(depth):
        next_frontier = []
        for parent in frontier:
            for rule, child_state in BRANCHING[parent.state]:
                child = FTreeNode(
                    id=len(nodes),
                    state=child_state,
                    step=parent.step + 1,
                    parent=parent.id,
                    rule=rule,
                )
                nodes.append(child)
                next_frontier.append(child)
        frontier = next_frontier
    return FTree(tuple(nodes), depth, NodeState.ZERO)


def count_states(tree: FTree, step: int) -> tuple[int, int]:
    """(zeros, ones) at ``step``; raises ValueError outside 0..tree.depth."""
    if not 0 <= step <= tree.depth:
        raise ValueError(f"step {step} outside 0..{tree.depth}")
    return tree.counts[step]


def parents_consistent_with(state: NodeState) -> frozenset[tuple[NodeState, Rule]]:
    """All (parent state, rule) pairs that could have produced ``state``.

    A ONE admits two local inversions (excited from ZERO, or persisted),
    so the way backwards is ambiguous without the stored parent links; a
    ZERO can only come from a decayed ONE.  A parentless ZERO is the root,
    which is not a (parent, rule) pair and so does not appear here.
    """
    if state is NodeState.ONE:
        return frozenset({(NodeState.ZERO, Rule.EXCITE), (NodeState.ONE, Rule.PERSIST)})
    return frozenset({(NodeState.ONE, Rule.DECAY)})


def ancestor_at(tree: FTree, node_id: int, step: int) -> FTreeNode:
    """Walk the stored parent links back to the unique ancestor at ``step``."""
    node = tree.nodes[node_id]
    if not 0 <= step <= node.step:
        raise ValueError(f"step {step} outside 0..{node.step}")
    while node.step > step:
        node = tree.nodes[node.parent]
    return node


_FLIP_STATE = {NodeState.ZERO: NodeState.ONE, NodeState.ONE: NodeState.ZERO}
_FLIP_RULE = {Rule.EXCITE: Rule.DECAY, Rule.DECAY: Rule.EXCITE, Rule.PERSIST: Rule.PERSIST}


def symmetric(tree: FTree) -> FTree:
    """Mirror image: every state flipped, EXCITE and DECAY exchanged.

    Ids, steps and parent links are untouched, so the map is an involution.
    """
    nodes = tuple(
        FTreeNode(
            id=n.id,
            state=_FLIP_STATE[n.state],
            step=n.step,
            parent=n.parent,
            rule=None if n.rule is None else _FLIP_RULE[n.rule],
        )
        for n in tree.nodes
    )
    return FTree(nodes, tree.depth, _FLIP_STATE[tree.root_state])


def validate(tree: FTree) -> None:
    """Check every node against the branching table for its root state.

    Raises AssertionError on the first violation; used by tests and the
    self-check path, not by ``grow`` itself.
    """
    table = BRANCHING if tree.root_state is NodeState.ZERO else MIRROR_BRANCHING
    root = tree.nodes[0]
    assert root.step == 0 and root.parent is None and root.rule is None
    assert root.state is tree.root_state
    for node in tree.nodes:
        expected = table[node.state] if node.step < tree.depth else ()
        got = tuple((c.rule, c.state) for c in tree.children(node.id))
        assert got == expected, f"node {node.id}: {got} != {expected}"
        if node.parent is not None:
            parent = tree.nodes[node.parent]
            assert node.step == parent.step + 1
            assert (node.rule, node.state) in table[parent.state]
