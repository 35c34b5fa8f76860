from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from boefluct import chebyshev_basis as cb
from boefluct import laurent as la
from boefluct import polynomials as poly

F = Fraction


@pytest.mark.parametrize("n", range(0, 9))
def test_alpha_is_symbol_power_coefficient(n):
    p = la.chebyshev_symbol() ** n if n else la.LaurentPoly({0: 1})
    assert all(cb.alpha_nk(n, k) == p[k] for k in range(-n - 1, n + 2))


def test_build_examples():
    d = cb.build_basis(3)
    assert d.Y[0] == (0, 2)
    assert d.c[0] == 0 and d.c[2] == 0
    assert d.c[1] == F(1, 2)
    assert d.A[1][1] == F(1, 4)
    assert poly.normalize(d.Y[1]) == (-2, 0, 4)


def test_leading_diagonal():
    d = cb.build_basis(8)
    assert all(d.A[n - 1][n - 1] == F(1, 2**n) for n in range(1, 9))
    assert all(d.A[i][j] == 0 for i in range(8) for j in range(i + 1, 8))
    assert d.Delta == [F(n) for n in range(1, 9)]


def test_basis_is_chebyshev():
    assert cb.basis_is_chebyshev(cb.build_basis(8))


def test_covariance_examples():
    lhs, rhs, equal = cb.covariance_factorization(8)
    assert equal
    assert lhs[0][0] == F(1, 4)
    assert lhs[1][1] == F(1, 8)
    assert lhs[0][1] == 0


def test_gram_examples():
    G, equal = cb.gram_check(8)
    assert equal
    assert G[0][0] == 2 and G[4][4] == 2 and G[0][1] == 0
    np.testing.assert_allclose(cb.gram_quadrature(8), 2 * np.eye(8), atol=1e-12)


def test_monomial_expansion():
    assert cb.monomial_expansion_check(8)


def test_covariance_is_mixed_variance_coefficient():
    # Var(x^n + t x^m) = Var(x^n) + 2 t Cov + t^2 Var(x^m)
    lhs, _, _ = cb.covariance_factorization(6)
    s = la.chebyshev_symbol()
    for n in range(1, 7):
        for m in range(1, 7):
            xn = (0,) * n + (1,)
            xm = (0,) * m + (1,)
            v0 = la.variance_fourier(xn, s)
            v1 = la.variance_fourier(poly.add(xn, xm), s)
            vm = la.variance_fourier(xm, s)
            assert (v1 - v0 - vm) / 2 == lhs[n - 1][m - 1]


def test_basis_diagonalizes_covariance():
    # Var Ξ(Y_j) = 4 Var Ξ(T_j) = j
    s = la.chebyshev_symbol()
    Y = cb.build_basis(6).Y
    for i in range(6):
        for j in range(6):
            cov = (la.variance_fourier(poly.add(Y[i], Y[j]), s) - la.variance_fourier(Y[i], s)
                   - la.variance_fourier(Y[j], s)) / 2
            assert cov == (i + 1 if i == j else 0)


def test_arcsine_moments_against_quadrature():
    x, w = np.polynomial.chebyshev.chebgauss(32)
    for k in range(12):
        assert float(cb.arcsine_moment(k)) == pytest.approx(np.sum(w * x**k) / np.pi, abs=1e-14)


def test_json_shape():
    data = cb.build_basis(2).to_json()
    assert data["A"] == [["1/2", "0"], ["0", "1/4"]]


def test_build_rejects_zero():
    with pytest.raises(ValueError):
        cb.build_basis(0)
