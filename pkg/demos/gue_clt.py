# Fluctuations of Tr H and Tr H^2 for GUE matrices, against the symbol z + 1/z.
#
# Run with a smaller sample count for a quick look:  python3 demos/gue_clt.py 500

import sys

from boefluct import ensembles as en
from boefluct import laurent as la

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
N = 100

for name, F in (("x", (0, 1)), ("x^2", (0, 0, 1)), ("x^3 - x", (0, -1, 0, 1))):
    s, _ = en.clt_experiment("gue", N, samples, seed=1, F=F)
    z = ", ".join(f"{k} {v:+.2f}" for k, v in s.z_scores.items())
    print(f"{name:8} var {s.variance:.4f} +- {s.variance_se:.4f}  theory {s.theory_variance:.4f}"
          f"  finite-N {s.finite_n_variance:.4f}  z: {z}")

# A statistic that is not a polynomial: the limit variance is read off a
# Chebyshev interpolant, and the double-integral bound is printed next to it.
s, _ = en.clt_experiment("gue", N, samples, seed=2, f=lambda x: abs(x) ** 3)
print(f"|x|^3    var {s.variance:.4f} +- {s.variance_se:.4f}  theory {s.theory_variance:.4f}"
      f"  bound {s.variance_bound:.4f}")

# Four formulas for the same limit variance on the interval [-1, 1].
print(la.variance_report((0, -3, 0, 4), la.chebyshev_symbol()).to_json())
