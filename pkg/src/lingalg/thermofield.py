"""Doubled-mode algebra on a truncated two-mode Fock space.

Every mode A gets a partner copy At ("tilde") living on the second tensor
factor; mixing a mode with its partner's creation operator through the
hyperbolic rotation

    A(theta)  = A cosh(theta)  - At^dag sinh(theta)
    At(theta) = At cosh(theta) - A^dag  sinh(theta)

defines a squeeze-parameter family of vacua |0(theta)>, the states the
rotated operators annihilate.  On the pair basis these vacua have
amplitudes tanh^n(theta)/cosh(theta) on |n, n> and nothing off-diagonal,
which makes number expectations, overlaps, pair-weight distributions,
entropy and free energy available both as operator expectations and as
closed-form series; the module computes the operator routes where cheap
and cross-checks them against the series.

Finite-cutoff policy: occupation is truncated at ``n_max`` per mode and
every theta-dependent operation first checks the geometric tail bound
tanh(theta)^(2(n_max+1)); if the bound exceeds the configured tolerance a
:class:`CutoffError` is raised instead of returning silently degraded
numbers.

Basis convention: the composite index is n_A * (n_max + 1) + n_At, i.e.
the non-tilde occupation is the major index.  Dense operators are plain
float64 ndarrays of dimension (n_max + 1)^2: every ladder combination in
this basis is real-valued, so the adjoint is the plain transpose and the
real representation halves memory traffic.  The one genuinely imaginary
object, the squeeze generator, is kept complex (and sparse).

Multi-mode quantities are never tensored across modes: the vacuum
factorizes exactly per mode, so overlaps multiply and numbers/entropies
add (:class:`ThetaVacuum` and :func:`foliation_overlap` implement that
reduction).
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.linalg import expm_multiply

DEFAULT_N_MAX = 60
DEFAULT_TAIL_TOL = 1e-8

# dense two-mode matrices are (n_max+1)^2 square; cap the dimension so a
# single operator stays around a quarter GB
_MAX_DENSE_DIM = 4096


class CutoffError(ValueError):
    """The truncation cannot support the requested theta to tolerance."""


@dataclass(frozen=True)
class FockCutoff:
    """Per-mode occupation cutoff and the tail tolerance enforced with it."""

    n_max: int = DEFAULT_N_MAX
    tail_tol: float = DEFAULT_TAIL_TOL

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if not self.tail_tol > 0:
            raise ValueError(f"tail_tol must be > 0, got {self.tail_tol}")

    @property
    def dim(self) -> int:
        return self.n_max + 1


def tail_bound(theta: float, cutoff: FockCutoff) -> float:
    """Geometric weight beyond the cutoff: tanh(|theta|)^(2(n_max+1))."""
    return math.tanh(abs(theta)) ** (2 * (cutoff.n_max + 1))


def _require_tail(theta: float, cutoff: FockCutoff) -> float:
    tb = tail_bound(theta, cutoff)
    if tb > cutoff.tail_tol:
        raise CutoffError(
            f"tail bound {tb:.3e} exceeds {cutoff.tail_tol:.1e} at "
            f"theta={theta}, n_max={cutoff.n_max}; raise n_max"
        )
    return tb


def _require_dense(cutoff: FockCutoff) -> int:
    dim2 = cutoff.dim**2
    if dim2 > _MAX_DENSE_DIM:
        raise CutoffError(
            f"dense two-mode dimension {dim2} exceeds {_MAX_DENSE_DIM}; "
            "reduce n_max for matrix-valued operations"
        )
    return dim2


def _ladder_entries(dim: int):
    """Sparse triplets (rows, cols, vals) of A and At on the pair basis.

    Dense matrices are assembled by scattering these into fresh zero
    arrays: the zeros are lazily mapped, so construction touches only the
    populated pages instead of streaming the whole (dim^2)^2 array.
    """
    n = np.repeat(np.arange(1, dim), dim)
    m = np.tile(np.arange(dim), dim - 1)
    a = ((n - 1) * dim + m, n * dim + m, np.sqrt(n))
    n2 = np.repeat(np.arange(dim), dim - 1)
    m2 = np.tile(np.arange(1, dim), dim)
    at = (n2 * dim + (m2 - 1), n2 * dim + m2, np.sqrt(m2))
    return a, at


def _scatter(dim: int, *triplets) -> np.ndarray:
    M = np.zeros((dim * dim, dim * dim))
    for rows, cols, vals in triplets:
        M[rows, cols] = vals
    return M


@lru_cache(maxsize=2)
def _annihilators(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """(A, At) as dense real matrices, n_A-major basis."""
    a, at = _ladder_entries(dim)
    A = _scatter(dim, a)
    At = _scatter(dim, at)
    A.setflags(write=False)
    At.setflags(write=False)
    return A, At


def ladder_ops(cutoff: FockCutoff) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(A, A^dag, At, At^dag) on the truncated two-mode space."""
    dim = cutoff.dim
    _require_dense(cutoff)
    (ar, ac, av), (tr, tc, tv) = _ladder_entries(dim)
    return (
        _scatter(dim, (ar, ac, av)),
        _scatter(dim, (ac, ar, av)),
        _scatter(dim, (tr, tc, tv)),
        _scatter(dim, (tc, tr, tv)),
    )


def bogoliubov(theta: float, cutoff: FockCutoff) -> tuple[np.ndarray, np.ndarray]:
    """The rotated pair (A(theta), At(theta)) as dense matrices.

    The A-lowering and the partner-raising entries live at disjoint
    positions, so each output is one scatter pass.
    """
    _require_tail(theta, cutoff)
    _require_dense(cutoff)
    dim = cutoff.dim
    c, s = math.cosh(theta), math.sinh(theta)
    (ar, ac, av), (tr, tc, tv) = _ladder_entries(dim)
    A_th = _scatter(dim, (ar, ac, c * av), (tc, tr, -s * tv))  # c A - s At^dag
    At_th = _scatter(dim, (tr, tc, c * tv), (ac, ar, -s * av))  # c At - s A^dag
    return A_th, At_th


def squeeze_generator(cutoff: FockCutoff) -> sparse.csr_matrix:
    """Hermitian generator G = -i (A^dag At^dag - A At), sparse.

    exp(i theta G) maps the bare vacuum to |0(theta)> and implements the
    hyperbolic rotation of the operators.
    """
    dim = cutoff.dim
    rows, cols, vals = [], [], []
    for n in range(dim - 1):
        for m in range(dim - 1):
            # pair creation |n,m> -> |n+1,m+1>
            amp = math.sqrt((n + 1) * (m + 1))
            rows.append((n + 1) * dim + (m + 1))
            cols.append(n * dim + m)
            vals.append(-1j * amp)
            # pair annihilation is the adjoint
            rows.append(n * dim + m)
            cols.append((n + 1) * dim + (m + 1))
            vals.append(1j * amp)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(dim**2, dim**2))


def theta_vacuum_vector(theta: float, cutoff: FockCutoff) -> np.ndarray:
    """The squeezed vacuum: amplitude tanh^n/cosh on |n, n>, zero elsewhere."""
    _require_tail(theta, cutoff)
    dim = cutoff.dim
    amps = np.tanh(theta) ** np.arange(dim) / math.cosh(theta)
    v = np.zeros(dim**2)
    v[np.arange(dim) * dim + np.arange(dim)] = amps
    return v


def theta_vacuum_via_generator(theta: float, cutoff: FockCutoff) -> np.ndarray:
    """exp(i theta G)|0,0> computed by sparse matrix exponential action."""
    _require_tail(theta, cutoff)
    e0 = np.zeros(cutoff.dim**2, dtype=complex)
    e0[0] = 1.0
    return expm_multiply(1j * theta * squeeze_generator(cutoff), e0)


def number_expectation(theta: float, cutoff: FockCutoff) -> float:
    """<0(theta)| A^dag A |0(theta)>, the sinh^2 condensate density.

    Also evaluates the route through the rotated tilde operators,
    sinh^2 <At(theta) At(theta)^dag>: the non-tilde number receives its
    only contribution through the partner mode.  Disagreement beyond the
    tail scale raises CutoffError.
    """
    tb = _require_tail(theta, cutoff)
    _require_dense(cutoff)
    v = theta_vacuum_vector(theta, cutoff)
    A, At = _annihilators(cutoff.dim)
    Av = A @ v
    direct = float(Av @ Av)

    # At(theta)^dag v = cosh At^dag v - sinh A v, all real vectors
    c, s = math.cosh(theta), math.sinh(theta)
    w = c * (At.T @ v) - s * Av
    tilde_route = s**2 * float(w @ w)
    if abs(direct - tilde_route) > max(1e-9, 1e3 * tb):
        raise CutoffError(
            f"number routes disagree ({direct!r} vs {tilde_route!r}); "
            "cutoff too small for this theta"
        )
    return direct


def foliation_overlap(
    thetas_a: Sequence[float], thetas_b: Sequence[float], cutoff: FockCutoff
) -> float:
    """Product over modes of <0(theta_b_k)|0(theta_a_k)>.

    Each factor is at most 1 and equals 1/cosh of the per-mode mismatch,
    so the product decays exponentially in the number of mismatched
    modes: distinct theta-sets become orthogonal sectors as modes
    accumulate.
    """
    if len(thetas_a) != len(thetas_b):
        raise ValueError(
            f"mode counts differ: {len(thetas_a)} vs {len(thetas_b)}"
        )
    out = 1.0
    for ta, tb_ in zip(thetas_a, thetas_b):
        va = theta_vacuum_vector(ta, cutoff)
        vb = theta_vacuum_vector(tb_, cutoff)
        out *= float(va @ vb)
    return out


def weights(theta: float, cutoff: FockCutoff) -> np.ndarray:
    """Pair-number weights W_n = tanh^(2n)/cosh^2 for n = 0..n_max.

    Sums to 1 minus the tail bound; strictly decreasing in n whenever
    theta is nonzero.
    """
    t2 = math.tanh(theta) ** 2
    return t2 ** np.arange(cutoff.dim) / math.cosh(theta) ** 2


def entropy(theta: float, cutoff: FockCutoff, operator_check: bool = True) -> float:
    """Mixing entropy -sum W_n ln W_n of the traced-out partner mode, in nats.

    The sign convention is the nonnegative thermodynamic one.  With
    ``operator_check`` (default) the expectation of the entropy operator
    -(A^dag A ln sinh^2 - A A^dag ln cosh^2) is evaluated as well; the two
    agree to the tail scale, and the operator route is what fixes the
    sign: it comes out equal to -sum W_n ln W_n, not its negative.  The
    check is skipped at theta = 0 where ln sinh^2 diverges (the entropy
    itself is exactly 0 there).
    """
    tb = _require_tail(theta, cutoff)
    w = weights(theta, cutoff)
    nz = w[w > 0]
    series = float(-(nz * np.log(nz)).sum())
    if operator_check and theta != 0.0:
        _require_dense(cutoff)
        v = theta_vacuum_vector(theta, cutoff)
        A, _ = _annihilators(cutoff.dim)
        n_a = float(np.linalg.norm(A @ v) ** 2)
        # A^dag v without materializing A^dag: (v^dag A)^dag
        aadag = float(np.linalg.norm(v @ A) ** 2)
        ln_sh2 = math.log(math.sinh(theta) ** 2)
        ln_ch2 = math.log(math.cosh(theta) ** 2)
        op_route = -(n_a * ln_sh2 - aadag * ln_ch2)
        if abs(op_route - series) > max(1e-9, 1e3 * tb):
            raise CutoffError(
                f"entropy routes disagree ({series!r} vs {op_route!r}); "
                "cutoff too small for this theta"
            )
    return series


def free_energy(theta: float, omega: float, beta: float, cutoff: FockCutoff) -> float:
    """<H - S/beta> in |0(theta)> for a single mode of energy omega.

    Evaluated from the pair-weight series (energy omega * sum n W_n,
    entropy -sum W_n ln W_n), which keeps a theta-scan cheap; both series
    equal the operator expectations up to the tail bound.
    """
    if omega <= 0:
        raise ValueError(f"omega must be > 0, got {omega}")
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    _require_tail(theta, cutoff)
    w = weights(theta, cutoff)
    energy = omega * float((np.arange(cutoff.dim) * w).sum())
    nz = w[w > 0]
    s = float(-(nz * np.log(nz)).sum())
    return energy - s / beta


def stationary_theta(omega: float, beta: float) -> float:
    """The squeeze parameter minimizing the free energy at (omega, beta).

    Solves d(free energy)/d(theta) = 0, which lands the mode occupation
    sinh^2 on the Bose distribution 1/(exp(beta omega) - 1).
    """
    if omega <= 0 or beta <= 0:
        raise ValueError("omega and beta must be > 0")
    return math.asinh(math.sqrt(1.0 / math.expm1(beta * omega)))


@dataclass(frozen=True)
class HeatReport:
    """Finite-difference audit of dE = dS/beta along a theta path."""

    theta_star: float
    stationary_residual: float  # max |dE/dt - dS/(beta dt)| where the path is nearest theta_star
    max_residual: float  # same, over every interior sample
    samples: int


def heat_relation_check(
    theta_path: Sequence[tuple[float, float]],
    omega: float,
    beta: float,
    cutoff: FockCutoff,
) -> HeatReport:
    """Check dE/dt = (1/beta) dS/dt along a sampled path theta(t).

    Central differences of the energy omega*sum(n W_n) and the entropy
    series are compared at every interior sample.  The relation is the
    stationarity condition of the free energy, so it holds (to the
    finite-difference error) only where the path crosses the stationary
    theta for the supplied (omega, beta); the report therefore quotes the
    residual at the samples nearest that crossing alongside the global
    maximum.  A beta inconsistent with the path simply yields a large
    stationary residual, not an error.
    """
    if len(theta_path) < 3:
        raise ValueError(f"need at least 3 samples, got {len(theta_path)}")
    ts = [t for t, _ in theta_path]
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("degenerate path: times must be strictly increasing")
    thetas = [th for _, th in theta_path]
    _require_tail(max(thetas, key=abs), cutoff)
    if omega <= 0 or beta <= 0:
        raise ValueError("omega and beta must be > 0")

    ns = np.arange(cutoff.dim)
    energies, entropies = [], []
    for th in thetas:
        w = weights(th, cutoff)
        energies.append(omega * float((ns * w).sum()))
        nz = w[w > 0]
        entropies.append(float(-(nz * np.log(nz)).sum()))

    th_star = stationary_theta(omega, beta)
    residuals = []
    dists = []
    for i in range(1, len(theta_path) - 1):
        dt = ts[i + 1] - ts[i - 1]
        de = (energies[i + 1] - energies[i - 1]) / dt
        ds = (entropies[i + 1] - entropies[i - 1]) / dt
        residuals.append(abs(de - ds / beta))
        dists.append(abs(thetas[i] - th_star))

    dmin = min(dists)
    stationary = max(r for r, d in zip(residuals, dists) if d <= dmin + 1e-12)
    return HeatReport(
        theta_star=th_star,
        stationary_residual=stationary,
        max_residual=max(residuals),
        samples=len(theta_path),
    )


@dataclass(frozen=True)
class ModeReport:
    """Per-mode summary of a theta-vacuum: overlap, number, entropy, weights."""

    theta: float
    overlap_with_bare: float
    number_expectation: float
    entropy: float
    weights: tuple[float, ...]
    tail_bound: float


def mode_report(theta: float, cutoff: FockCutoff) -> ModeReport:
    """Series-route summary for one mode (cheap enough for many modes)."""
    tb = _require_tail(theta, cutoff)
    v = theta_vacuum_vector(theta, cutoff)
    w = weights(theta, cutoff)
    nz = w[w > 0]
    return ModeReport(
        theta=theta,
        overlap_with_bare=float(v[0]),
        number_expectation=float((np.arange(cutoff.dim) * w).sum()),
        entropy=float(-(nz * np.log(nz)).sum()),
        weights=tuple(float(x) for x in w),
        tail_bound=tb,
    )


@dataclass(frozen=True)
class ThetaVacuum:
    """A theta-set, one squeeze parameter per mode, plus its cutoff.

    The optional tag is a user-facing label for the sector (which concept
    or reading the theta-set encodes); it enters no computation.
    """

    thetas: tuple[float, ...]
    cutoff: FockCutoff = FockCutoff()
    tag: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(float(t) for t in self.thetas))
        for t in self.thetas:
            _require_tail(t, self.cutoff)

    def mode_reports(self) -> list[ModeReport]:
        return [mode_report(t, self.cutoff) for t in self.thetas]

    def total_number(self) -> float:
        """Mode occupations add across the factorized modes."""
        return sum(r.number_expectation for r in self.mode_reports())

    def total_entropy(self) -> float:
        """Entropies add across the factorized modes."""
        return sum(r.entropy for r in self.mode_reports())

    def overlap_with(self, other: "ThetaVacuum") -> float:
        return foliation_overlap(self.thetas, other.thetas, self.cutoff)
