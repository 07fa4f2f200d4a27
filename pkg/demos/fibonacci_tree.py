"""Grow the two-level branching tree and watch Fibonacci come out.

A ZERO node can only be excited to ONE; a ONE node either decays back or
persists.  That single asymmetry (nothing happens is not a move) makes
the per-step population counts walk the Fibonacci progression, and it
makes the process irreversible: you cannot tell where a ONE came from
without the stored thread of parent links.
"""

from lingalg import fibmatrix
from lingalg.xbar import (
    NodeState,
    ancestor_at,
    count_states,
    grow,
    parents_consistent_with,
    state_counts,
    symmetric,
)

# ---------------------------------------------------------------------
# grow a small tree and read off the counts
# ---------------------------------------------------------------------
tree = grow(10)
print("per-step totals:", [z + o for z, o in tree.counts])
print("zeros/ones at step 6:", count_states(tree, 6))

# the exact matrix powers give the same numbers
print("matrix-route totals:", [fibmatrix.fib(n + 1) for n in range(11)])

# counts-only mode has no materialization limit
deep = state_counts(80)
print("step-80 total has", len(str(sum(deep[-1]))), "digits")

# ---------------------------------------------------------------------
# going backwards is ambiguous; the stored links are not
# ---------------------------------------------------------------------
print("\nlocal inversions of a ONE:", sorted(
    (s.value, r.value) for s, r in parents_consistent_with(NodeState.ONE)
))
print("local inversions of a ZERO:", sorted(
    (s.value, r.value) for s, r in parents_consistent_with(NodeState.ZERO)
))

witness = next(n for n in tree.nodes if n.state is NodeState.ONE and n.step >= 4)
thread = [ancestor_at(tree, witness.id, k).id for k in range(witness.step + 1)]
print(f"node {witness.id} at step {witness.step}: unique ancestor thread {thread}")

# ---------------------------------------------------------------------
# the mirrored dynamics: exchange the states and the ladder roles
# ---------------------------------------------------------------------
mirror = symmetric(tree)
print("\nmirror root state:", mirror.nodes[0].state.value)
print("mirror totals unchanged:", [z + o for z, o in mirror.counts])
print("involution:", symmetric(mirror) == tree)
