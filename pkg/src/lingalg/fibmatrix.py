"""Exact integer identities of the Fibonacci matrix [[1,1],[1,0]].

Matrices are 2x2 tuples of Python ints, so every result is exact at any
size (no fixed-width overflow exists to guard against).  ``fib_pow`` uses
exponentiation by squaring; the tests cross-check it against the plain
addition recurrence.
"""

IntMatrix2 = tuple[tuple[int, int], tuple[int, int]]

_F: IntMatrix2 = ((1, 1), (1, 0))
_I: IntMatrix2 = ((1, 0), (0, 1))


def fib_matrix() -> IntMatrix2:
    """The matrix [[1,1],[1,0]] whose powers generate the Fibonacci numbers."""
    return _F


def mat_mul(a: IntMatrix2, b: IntMatrix2) -> IntMatrix2:
    """Exact 2x2 integer matrix product."""
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def fib_pow(n: int) -> IntMatrix2:
    """n-th power of the Fibonacci matrix, n >= 1, by squaring.

    The result is [[F(n+1), F(n)], [F(n), F(n-1)]] with F(0) = 0.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    result = _I
    base = _F
    e = n
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def fib(n: int) -> int:
    """F(n) with F(0) = 0, F(1) = F(2) = 1, read off the matrix power."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return 0
    return fib_pow(n)[1][0]
