"""Collective ladder dynamics on symmetric N-particle states.

A state is just the pair (N, l): N two-level elements of which l are
excited, i.e. the normalized symmetric superposition over all placements.
The collective raising/lowering operators act on the l-ladder with the
square-root coefficients below; the Holstein-Primakoff pair S+/S- is the
bosonic realization whose 1/sqrt(N) rescaling contracts the su(2)
relations to e(2) as N grows.  States are never stored as 2^N vectors
here; the test suite carries an explicit 2^N oracle for N <= 10.
"""

import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class DickeState:
    """Symmetric state of N two-level elements with l excited, 0 <= l <= N."""

    N: int
    l: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if not 0 <= self.l <= self.N:
            raise ValueError(f"l must be in 0..{self.N}, got {self.l}")


@dataclass(frozen=True)
class LadderResult:
    """Coefficient and target of a ladder action; state is None iff annihilated."""

    coefficient: float
    state: Optional[DickeState]

    def __post_init__(self):
        if (self.state is None) != (self.coefficient == 0.0):
            raise ValueError("annihilation must pair a zero coefficient with no state")


_ANNIHILATED = LadderResult(0.0, None)


def sigma_plus(s: DickeState) -> LadderResult:
    """Collective raise: sqrt(l+1) sqrt(N-l) |l+1>; annihilates at l = N."""
    if s.l == s.N:
        return _ANNIHILATED
    coeff = math.sqrt(s.l + 1) * math.sqrt(s.N - s.l)
    return LadderResult(coeff, DickeState(s.N, s.l + 1))


def sigma_minus(s: DickeState) -> LadderResult:
    """Collective lower: sqrt(N-(l-1)) sqrt(l) |l-1>; annihilates at l = 0."""
    if s.l == 0:
        return _ANNIHILATED
    coeff = math.sqrt(s.N - (s.l - 1)) * math.sqrt(s.l)
    return LadderResult(coeff, DickeState(s.N, s.l - 1))


def order_parameter(s: DickeState) -> float:
    """Expectation of the collective s3: l - N/2.

    Nonzero values signal the broken symmetry; the value labels which
    sector the state sits in.
    """
    return s.l - s.N / 2


def hp_operators(s: DickeState, which: str) -> LadderResult:
    """Holstein-Primakoff bosonic ladder: 'plus' -> sqrt(l+1) |l+1>,
    'minus' -> sqrt(l) |l-1>.

    Storage keeps l <= N, so 'plus' at l = N (where the collective
    operator would have annihilated anyway) is a ValueError rather than a
    silent cutoff.
    """
    if which == "plus":
        if s.l == s.N:
            raise ValueError(
                f"S+ at l = N = {s.N} leaves the stored ladder (l <= N)"
            )
        return LadderResult(math.sqrt(s.l + 1), DickeState(s.N, s.l + 1))
    if which == "minus":
        if s.l == 0:
            return _ANNIHILATED
        return LadderResult(math.sqrt(s.l), DickeState(s.N, s.l - 1))
    raise ValueError(f"which must be 'plus' or 'minus', got {which!r}")


def hp_correction(s: DickeState) -> float:
    """Diagonal factor sqrt(1 - l/N) of the operator sqrt(1 - S+S-/N).

    The collective operators factor through the bosonic ones as
    sigma+ = sqrt(N) S+ C and sigma- = sqrt(N) C S-, with this correction
    applied in matrix order (rightmost factor acts first).
    """
    return math.sqrt(1 - s.l / s.N)


def contraction_deviation(N: int, l: int) -> float:
    """|<l|[S-, S+]|l> - 1| for the rescaled ladder S+- = sigma+- / sqrt(N).

    The products are integer-exact before the single division, so the
    value equals 2l/N to machine precision; it vanishes as N grows at
    fixed l, which is the e(2) contraction.
    """
    s = DickeState(N, l)  # validates the pair
    raise_then_lower = (s.l + 1) * (s.N - s.l)  # <l| sigma- sigma+ |l>
    lower_then_raise = s.l * (s.N - s.l + 1)  # <l| sigma+ sigma- |l>
    expectation = (raise_then_lower - lower_then_raise) / s.N
    return abs(expectation - 1.0)
