from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from boefluct import band_matrix as bm
from boefluct import laurent as la
from boefluct import right_limits as rl
from boefluct.band_matrix import BandMatrixError, GrowthProfile


def test_principal_block_free_jacobi():
    B = bm.principal_block(bm.free_jacobi(), 2)
    assert B.tolist() == [[0, Fraction(1, 2)], [Fraction(1, 2), 0]]


def test_principal_block_single_entry():
    J = rl.hermite_jacobi(7)
    assert bm.principal_block(J, 1).tolist() == [[J.entry(0, 0)]]


def test_principal_block_unanchored():
    M = bm.laurent(la.chebyshev_symbol(), origin=None)
    with pytest.raises(BandMatrixError, match="unanchored"):
        bm.principal_block(M, 3)


def test_hermite_entry_against_gauss_hermite_stieltjes():
    # orthogonalize directly on Gauss-Hermite nodes rescaled to the weight exp(-4 x^2 / 2)
    x, w = np.polynomial.hermite.hermgauss(40)
    a, _ = rl.stieltjes(x / np.sqrt(2.0), w, 3)
    assert bm.principal_block(rl.hermite_jacobi(4), 2)[0, 1] == pytest.approx(a[0], abs=1e-14)
    assert a[0] == pytest.approx(0.5, abs=1e-14)


def test_semi_infinite_rejects_negative_indices():
    with pytest.raises(BandMatrixError):
        bm.free_jacobi().entry(-1, 0)


def test_entries_vanish_outside_band():
    J = rl.hermite_jacobi(5)
    assert all(J.entry(i, j) == 0 for i in range(12) for j in range(12) if abs(i - j) >= 2)


def test_stored_window_is_bit_identical():
    A = np.random.default_rng(0).normal(size=(6, 6))
    M = bm.from_dense(A)
    assert all(M.entry(i, j) == M.entry(i, j) == A[i, j] for i in range(6) for j in range(6) if abs(i - j) < M.bandwidth)


def test_window_json_round_trip():
    J = rl.hermite_jacobi(3)
    M = bm.apply_polynomial(J, (0, 0, 1), (0, 6))
    back = bm.BandMatrix.from_json(M.to_json())
    np.testing.assert_array_equal(back.block(0, 6), M.block(0, 6))
    assert set(M.to_json()) >= {"kind", "bandwidth", "origin", "rows"}


def test_apply_identity_polynomial():
    J = rl.hermite_jacobi(6)
    np.testing.assert_array_equal(bm.apply_polynomial(J, (0, 1), (2, 8)).block(2, 8), J.block(2, 8))


def test_free_jacobi_square():
    M = bm.apply_polynomial(bm.free_jacobi(), (0, 0, 1), (0, 8))
    assert M.entry(0, 0) == Fraction(1, 4)
    assert all(M.entry(i, i) == Fraction(1, 2) for i in range(1, 8))


def test_laurent_square_is_symbol_square():
    s = la.chebyshev_symbol()
    M = bm.apply_polynomial(bm.laurent(s), (0, 0, 1), (-5, 5))
    target = s * s
    assert all(M.entry(i, j) == target[i - j] for i in range(-5, 5) for j in range(-5, 5))


def test_apply_rejects_window_below_zero():
    with pytest.raises(BandMatrixError, match="below index 0"):
        bm.apply_polynomial(bm.free_jacobi(), (0, 1), (-1, 3))


def test_growth_examples():
    free = bm.free_jacobi()
    assert bm.verify_growth(free, GrowthProfile(1.0, 0.0), 10, (-3, 4))
    assert not bm.verify_growth(free, GrowthProfile(0.1, 0.0), 10, (-3, 4))
    N = 30
    assert bm.verify_growth(rl.hermite_jacobi(N), GrowthProfile(2.0, 1.0), N, (-N, N + 1))


def test_growth_profile_validation():
    with pytest.raises(ValueError):
        GrowthProfile(0.0)
    with pytest.raises(ValueError):
        GrowthProfile(1.0, -1.0)


def _random_band(seed, W, size):
    rng = np.random.default_rng(seed)
    A = rng.uniform(-1, 1, (size, size))
    i, j = np.indices(A.shape)
    A[np.abs(i - j) >= W] = 0.0
    return bm.BandMatrix(kind=bm.SEMI, bandwidth=W, window=A, origin=0)


poly_st = st.lists(st.integers(-3, 3), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), poly_st)
def test_bandwidth_composition(seed, W, F):
    J = _random_band(seed, W, 40)
    M = bm.apply_polynomial(J, F, (10, 20))
    d = max(len(F) - 1, 0)
    block = M.block(10, 20)
    i, j = np.indices(block.shape)
    assert M.bandwidth <= d * (W - 1) + 1
    assert np.all(block[np.abs(i - j) > d * (W - 1)] == 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), poly_st, st.integers(0, 3))
def test_padding_independence(seed, W, F, extra):
    J = _random_band(seed, W, 60)
    d = max(len(F) - 1, 0)
    p = d * (W - 1) + extra
    a = bm.apply_polynomial(J, F, (15, 25), padding=p).block(15, 25)
    b = bm.apply_polynomial(J, F, (15, 25), padding=p + 1).block(15, 25)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-13)


symbol_st = st.dictionaries(st.integers(-2, 2), st.fractions(-3, 3, max_denominator=4), min_size=1, max_size=4)


@settings(max_examples=30, deadline=None)
@given(symbol_st, poly_st)
def test_laurent_output_is_diagonally_constant(coeffs, F):
    s = la.LaurentPoly(coeffs)
    M = bm.apply_polynomial(bm.laurent(s), F, (-6, 6))
    for k in range(-5, 6):
        diag = {M.entry(i, i - k) for i in range(-6, 6) if -6 <= i - k < 6}
        assert len(diag) <= 1
