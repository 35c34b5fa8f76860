# Toeplitz determinants of exp(lambda f) and the strong Szego limit.

from boefluct import laurent as la
from boefluct import szego as sz
from boefluct.laurent import LaurentPoly

cases = [
    ("2 cos t", LaurentPoly({-1: 1, 1: 1}), 0.3),
    ("2 cos 2t", LaurentPoly({-2: 1, 2: 1}), 0.2),
    ("cos t + cos 2t + 1/2", LaurentPoly({-2: 0.5, -1: 0.5, 0: 0.5, 1: 0.5, 2: 0.5}), 0.7),
]
for name, f, lam in cases:
    rep = sz.szego_limit_check(f, lam, [2, 4, 8, 16, 32])
    devs = "  ".join(f"{d:.1e}" for d in rep.deviations)
    print(f"{name:22} target {rep.target:.6f}  deviations {devs}")

# Limiting cumulants of Tr f(U) for Haar U: half the H^{1/2} norm at order 2,
# zero beyond.
f = LaurentPoly({-2: 1, -1: 1, 1: 1, 2: 1})
print("H^1/2 norm / 2 =", la.h12_norm(f) / 2)
for n in (2, 3, 4, 5):
    print(f"  order {n}: {sz.cue_cumulant_limit(f, n)}")
