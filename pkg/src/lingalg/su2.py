"""Exact 2x2 su(2) constants: half-weighted sigma matrices, unit-entry
ladder matrices, and the two basis kets.

Convention: ``SIGMA1``, ``SIGMA2``, ``SIGMA3`` carry the 1/2 prefactor while
``SIGMA_PLUS``/``SIGMA_MINUS`` are the unit-entry raising/lowering matrices
[[0,1],[0,0]] and [[0,0],[1,0]].  This mixed normalisation is the one that
satisfies [s3, s+-] = +- s+- and [s-, s+] = -2 s3 exactly, and it is the
combination every downstream module assumes.

All entries are dyadic rationals, so double-precision arithmetic on these
constants is exact.
"""

import numpy as np

SIGMA1 = 0.5 * np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = 0.5 * np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = 0.5 * np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)

# ground state (0,1)^T and excited state (1,0)^T
KET0 = np.array([0, 1], dtype=complex)
KET1 = np.array([1, 0], dtype=complex)

for _m in (SIGMA1, SIGMA2, SIGMA3, IDENTITY, SIGMA_PLUS, SIGMA_MINUS, KET0, KET1):
    _m.setflags(write=False)
del _m

_BY_NAME = {
    "S1": SIGMA1,
    "S2": SIGMA2,
    "S3": SIGMA3,
    "ID": IDENTITY,
    "PLUS": SIGMA_PLUS,
    "MINUS": SIGMA_MINUS,
}


def pauli(which: str) -> np.ndarray:
    """Return one of the named constants: S1, S2, S3, ID, PLUS, MINUS.

    The returned array is the shared read-only constant.
    """
    try:
        return _BY_NAME[which.upper()]
    except KeyError:
        raise ValueError(
            f"unknown matrix {which!r}; expected one of {sorted(_BY_NAME)}"
        ) from None


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """ab - ba."""
    return a @ b - b @ a


def apply(m: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Matrix-vector product m @ k."""
    return m @ k
