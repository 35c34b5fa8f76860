import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from boefluct import ensembles as en
from boefluct import laurent as la
from boefluct import szego as sz
from boefluct.laurent import LaurentPoly

F = Fraction
TWO_COS = LaurentPoly({-1: 1, 1: 1})


def bessel_i0(x, terms=40):
    return sum((x / 2) ** (2 * k) / math.factorial(k) ** 2 for k in range(terms))


def test_lambda_zero():
    assert sz.toeplitz_det(TWO_COS, 0.0, 12) == pytest.approx(0.0, abs=1e-14)


def test_single_entry_is_bessel():
    assert sz.symbol_coefficients(TWO_COS, 0.3)[0].real == pytest.approx(bessel_i0(0.6), rel=1e-14)
    assert sz.toeplitz_det(TWO_COS, 0.3, 1) == pytest.approx(math.log(bessel_i0(0.6)), rel=1e-13)


def test_constant_symbol():
    rep = sz.szego_limit_check(LaurentPoly({0: F(3, 2)}), 0.4, [5, 10, 20])
    assert rep.target == 0
    assert max(rep.deviations) < 1e-12
    assert rep.log_det[-1] == pytest.approx(0.4 * 1.5 * 20, rel=1e-13)


def test_szego_targets():
    rep = sz.szego_limit_check(TWO_COS, 0.3, [10, 20, 40])
    assert rep.target == pytest.approx(0.09)
    assert rep.deviations[-1] <= 1e-4
    rep2 = sz.szego_limit_check(LaurentPoly({-2: 1, 2: 1}), 0.2, [10, 20, 40])
    assert rep2.target == pytest.approx(0.08)
    assert rep2.deviations[-1] <= 1e-4


def test_deviations_nonincreasing():
    f = LaurentPoly({-2: 0.5, -1: 1, 0: 0.3, 1: 1, 2: 0.5})
    rep = sz.szego_limit_check(f, 0.5, [2, 4, 8, 16, 32])
    assert all(b <= a + 1e-14 for a, b in zip(rep.deviations, rep.deviations[1:]))
    assert rep.deviations[-1] < 1e-10


def test_errors():
    with pytest.raises(ValueError):
        sz.toeplitz_det(LaurentPoly({1: 1}), 0.3, 5)
    with pytest.raises(ValueError):
        sz.toeplitz_det(TWO_COS, 0.3, 0)
    with pytest.raises(ValueError):
        sz.toeplitz_det(TWO_COS, 0.3, 100, modes=128)


def test_cue_cumulant_examples():
    assert sz.cue_cumulant_limit(TWO_COS, 2) == 1
    assert sz.cue_cumulant_limit(TWO_COS, 3) == 0
    assert sz.cue_cumulant_limit(LaurentPoly({-2: 1, -1: 1, 1: 1, 2: 1}), 4) == 0


rational_symbols = st.dictionaries(st.integers(-3, 3), st.fractions(-2, 2, max_denominator=4), min_size=1, max_size=4)


@settings(max_examples=30, deadline=None)
@given(rational_symbols)
def test_second_cumulant_is_half_norm(coeffs):
    # real-valued on the circle: f_{-k} = f_k
    sym = {}
    for k, v in coeffs.items():
        sym[abs(k)] = sym[-abs(k)] = v
    f = LaurentPoly(sym)
    assert sz.cue_cumulant_limit(f, 2) == la.h12_norm(f) / 2


def test_half_norm_needs_real_symbol():
    assert sz.cue_cumulant_limit(LaurentPoly({1: 1}), 2) == 0
    assert la.h12_norm(LaurentPoly({1: 1})) == 1


@settings(max_examples=15, deadline=None)
@given(rational_symbols, st.integers(3, 5))
def test_higher_cumulants_vanish(coeffs, n):
    assert sz.cue_cumulant_limit(LaurentPoly(coeffs), n) == 0


def test_heine_identity_by_monte_carlo():
    # E_CUE[exp(λ Ξ(f))] = D_N[e^{λ f}]
    lam, N, samples = 0.3, 40, 2000
    vals = en.run_samples("cue", N, samples, seed=99, symbol=TWO_COS)
    w = np.exp(lam * vals)
    est = math.log(w.mean())
    se = w.std(ddof=1) / math.sqrt(samples) / w.mean()
    assert abs(est - sz.toeplitz_det(TWO_COS, lam, N)) <= 4 * se
