# Cumulants of Tr J restricted to the first N rows, by path counting.
#
# The free Jacobi matrix (a_n = 1/2, b_n = 0) is Toeplitz away from row 0,
# so its right-limit is the Laurent matrix of (z + 1/z)/2 and every cumulant
# above the second vanishes once N is past the boundary.

from fractions import Fraction

from boefluct import band_matrix as bm
from boefluct import path_cumulants as pc
from boefluct import right_limits as rl

J = bm.free_jacobi()
x = (0, 1)

print("N   C2      C3   C4")
for N in (1, 2, 3, 5, 10, 20):
    row = [pc.cumulant_paths(J, x, n, N) for n in (2, 3, 4)]
    print(f"{N:<3} {str(row[0]):<7} {str(row[1]):<4} {row[2]}")

# The same numbers from the trace expansion of log det.
print("trace route, N=10:", [str(pc.cumulant_traces(J, x, n, 10)) for n in (2, 3, 4)])

# A Hermite matrix is not Toeplitz; its cumulants of x^3 - x are nonzero at
# finite N and the two routes agree to rounding.
H = rl.hermite_jacobi(8)
F = (0, -1, 0, 1)
for n in (2, 3, 4):
    a = pc.cumulant_paths(H, F, n, 8)
    b = pc.cumulant_traces(H, F, n, 8)
    print(f"hermite N=8, n={n}: paths {a:.12f}  traces {b:.12f}")

# Only one path contributes to C2 for the free matrix: N-1 -> N -> N-1.
M = bm.apply_polynomial(J, x, (0, 20))
c = pc.comb.lambda_n(2)[0]
print("paths in Gamma at N=10:", list(pc.enumerate_gamma(M, 2, c, 10)))
assert pc.cumulant_paths(J, x, 2, 10) == Fraction(1, 4)
