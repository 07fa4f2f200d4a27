"""Collective ladder on symmetric N-element states, and its large-N limit.

The pair (N, l) stands for the normalized symmetric superposition of N
two-level elements with l excited.  The collective raising and lowering
operators act with square-root coefficients; rescaled by 1/sqrt(N) their
commutator expectation drifts from the su(2) value to the e(2) value 1
as N grows, which is the algebra contraction that turns a pile of
elements into a coherent collective mode.
"""

import math

from lingalg.dicke import (
    DickeState,
    contraction_deviation,
    hp_correction,
    hp_operators,
    order_parameter,
    sigma_minus,
    sigma_plus,
)

# ---------------------------------------------------------------------
# ladder actions on a small collection
# ---------------------------------------------------------------------
s = DickeState(N=4, l=1)
up, down = sigma_plus(s), sigma_minus(s)
print(f"raise {s}: coefficient {up.coefficient:.6f} -> {up.state}")
print(f"lower {s}: coefficient {down.coefficient:.6f} -> {down.state}")
print("top of the ladder annihilates:", sigma_plus(DickeState(4, 4)))

print("\norder parameter l - N/2:")
for l in range(5):
    print(f"  l={l}: {order_parameter(DickeState(4, l)):+.1f}")

# ---------------------------------------------------------------------
# the bosonic (Holstein-Primakoff) factorization
# ---------------------------------------------------------------------
s = DickeState(N=4, l=1)
boson_up = hp_operators(s, "plus")
composed = math.sqrt(s.N) * boson_up.coefficient * hp_correction(s)
print(f"\nsqrt(N) * S+ * correction = {composed:.6f}")
print(f"collective sigma+ directly = {sigma_plus(s).coefficient:.6f}")

# ---------------------------------------------------------------------
# contraction: the rescaled commutator approaches the e(2) value
# ---------------------------------------------------------------------
print("\n|<[S-, S+]> - 1| at fixed l = 10:")
for N in (10, 100, 10_000, 1_000_000):
    print(f"  N = {N:>9,}: {contraction_deviation(N, 10):.3e}")
print("(equals 2l/N exactly; the su(2) ladder becomes a free boson pair)")
