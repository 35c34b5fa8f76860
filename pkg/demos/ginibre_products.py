# Square singular values of X_m ... X_1 for complex Ginibre factors.
#
# The recurrence matrix has m + 1 subdiagonals and one superdiagonal; its
# diagonals converge like 1/N to the elementary symmetric polynomials of theta.

import sys

from boefluct import ensembles as en
from boefluct import ginibre as gin

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 1000

for m in (1, 2, 3):
    sym = gin.limit_symbol((1,) * (m + 1))
    print(f"m={m}: symbol {sym}  variance of Tr {gin.mop_variance((0, 1), (1,) * (m + 1))}")

print()
print("m=2, deviations |J_{N,N-k} - e_{k+1}| along N = 200, 400, 800")
for row in gin.right_limit_rate_check(gin.GinibreParams(2, 200), [200, 400, 800]):
    devs = "  ".join(f"{d:.2e}" for d in row.deviations)
    print(f"  k={row.k:+d}  {devs}  exponent {row.exponent}")

print()
for m, N in ((1, 80), (2, 50)):
    p = gin.GinibreParams(m, N)
    s, _ = en.clt_experiment("ginibre", N, samples, seed=5, F=(0, 1), params=p)
    print(f"m={m}, N={N}: var {s.variance:.3f} +- {s.variance_se:.3f}, theory {s.theory_variance}, "
          f"skewness z {s.z_scores['skewness']:+.2f}")

# theta below one: rectangular factors.
print("theta = (1, 1/2):", gin.limit_symbol((1, 0.5)), "variance", gin.mop_variance((0, 1), (1, 0.5)))
