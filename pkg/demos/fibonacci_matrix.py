"""Exact identities of the Fibonacci matrix F = [[1,1],[1,0]].

F^n packs three consecutive Fibonacci numbers into one 2x2 integer
matrix and satisfies F^n = F(n-1) I + F(n) F; fast squaring gives exact
values at any index because the entries are Python ints.
"""

from lingalg.fibmatrix import fib, fib_matrix, fib_pow, mat_mul

print("F =", fib_matrix())

for n in range(1, 7):
    m = fib_pow(n)
    print(f"F^{n} = {m}  =  {fib(n - 1)} I + {fib(n)} F")

# the addition law F^n F^m = F^(n+m) comes free with matrix powers
lhs = mat_mul(fib_pow(9), fib_pow(16))
print("\nF^9 F^16 == F^25:", lhs == fib_pow(25))

# exactness at large index (no floating point anywhere)
print("F(250) =", fib(250))
print("digits:", len(str(fib(250))))
