# A right-limit that is not Laurent gives non-Gaussian limits.
#
# Take a_n alternating 1/2, 1/4 and b_n = 0.  The cumulants of Tr J on the
# first N rows freeze once N is even and past the boundary, and the fourth
# one is not zero.  The third one is: with b = 0 the graph is bipartite, so
# there are no closed paths of odd length.  Put something on the diagonal
# and the third cumulant appears too.

from fractions import Fraction

from boefluct import band_matrix as bm
from boefluct import path_cumulants as pc
from boefluct import right_limits as rl
from boefluct.laurent import chebyshev_symbol

a = (Fraction(1, 2), Fraction(1, 4))
x = (0, 1)

for b in ((0,), (Fraction(1, 3), 0)):
    semi = rl.periodic_jacobi(a, b)
    bi = rl.periodic_jacobi(a, b, kind=bm.BI)
    print(f"b = {[str(v) for v in b]}")
    for n in (2, 3, 4):
        finite = [str(pc.cumulant_paths(semi, x, n, N)) for N in (8, 10, 12)]
        print(f"  n={n}: C_N at N=8,10,12 {finite}   varpi {pc.varpi(bi, x, n)}")

# The free Jacobi matrix, for contrast, is Laurent in the limit.
print("free: varpi_4 =", pc.varpi(bm.laurent(chebyshev_symbol()), x, 4))
