import numpy as np
import pytest

from lingalg import su2
from lingalg.fibmatrix import fib, fib_matrix, fib_pow, mat_mul


def fib_recurrence(n):
    """Independent oracle: plain addition recurrence, F(0) = 0."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def test_fib_matrix_entries():
    assert fib_matrix() == ((1, 1), (1, 0))


def test_fib_matrix_assembles_from_su2_constants():
    # half identity + half-weighted sigma3 + twice half-weighted sigma1
    assembled = 0.5 * su2.IDENTITY + su2.SIGMA3 + 2 * su2.SIGMA1
    assert np.array_equal(assembled, np.array(fib_matrix(), dtype=complex))


def test_fib_matrix_determinant():
    ((a, b), (c, d)) = fib_matrix()
    assert a * d - b * c == -1


def test_fib_pow_printed_table():
    # powers 1..6 and their I/F decompositions
    expected = {
        1: ((1, 1), (1, 0)),
        2: ((2, 1), (1, 1)),
        3: ((3, 2), (2, 1)),
        4: ((5, 3), (3, 2)),
        5: ((8, 5), (5, 3)),
        6: ((13, 8), (8, 5)),
    }
    for n, m in expected.items():
        assert fib_pow(n) == m


def test_fib_pow_30():
    assert fib_pow(30) == ((1346269, 832040), (832040, 514229))


def test_fib_pow_rejects_nonpositive():
    with pytest.raises(ValueError):
        fib_pow(0)
    with pytest.raises(ValueError):
        fib_pow(-3)


@pytest.mark.parametrize("n", [0, 1, 2, 7, 30, 50, 93, 200])
def test_fib_against_recurrence(n):
    assert fib(n) == fib_recurrence(n)


def test_fib_small_values():
    assert fib(0) == 0
    assert fib(7) == 13
    assert fib(50) == 12586269025
    assert [fib(n) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    with pytest.raises(ValueError):
        fib(-1)


def test_decomposition_identity():
    # F^n = F(n-1) I + F(n) F, entrywise
    for n in range(1, 41):
        fn, fn1 = fib(n), fib(n - 1)
        expected = (
            (fn1 + fn * 1, fn * 1),
            (fn * 1, fn1),
        )
        assert fib_pow(n) == expected


def test_power_addition_law():
    # F^n F^m = F^(n+m): matrix powers compose additively
    for n in range(1, 41, 4):
        for m in range(1, 41, 5):
            assert mat_mul(fib_pow(n), fib_pow(m)) == fib_pow(n + m)
