"""The binomial matrix ``α^n_k`` and the Chebyshev basis that diagonalizes the
limiting covariance of ``(Ξ(x), Ξ(x^2), ...)`` on the symbol ``(z+1/z)/2``.

``α^n_k`` is the coefficient of ``z^k`` in ``((z + 1/z)/2)^n``.  With ``A`` the
lower-triangular matrix ``(α^n_k)_{n,k>=1}`` and ``c_n = α^n_0``, the basis
``Y = A^{-1}(X - c)`` is ``Y_n = 2 T_n`` and the covariance is ``A Δ A^T``
with ``Δ = diag(n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polynomials as poly
from .laurent import chebyshev_symbol


def alpha_nk(n: int, k: int) -> Fraction:
    k = abs(k)
    if k > n or (n - k) % 2:
        return Fraction(0)
    return Fraction(math.comb(n, (n - k) // 2), 2**n)


@dataclass
class ChebyshevBasisData:
    n_max: int
    A: list  # A[n-1][k-1] = α^n_k
    c: list  # c[n-1] = α^n_0
    Delta: list
    Y: list  # Y[n-1] = coefficient tuple of Y_n

    def to_json(self) -> dict:
        s = lambda M: [[str(v) for v in row] for row in M]
        return {
            "n_max": self.n_max,
            "A": s(self.A),
            "c": [str(v) for v in self.c],
            "Delta": [str(v) for v in self.Delta],
            "Y": [[str(v) for v in y] for y in self.Y],
        }


def _zeros(n: int) -> list:
    return [[Fraction(0)] * n for _ in range(n)]


def build_basis(n_max: int) -> ChebyshevBasisData:
    """Exact ``A``, ``c`` and ``Y``; ``Y`` by forward substitution on ``A Y = X - c``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    A = [[alpha_nk(n, k) if k <= n else Fraction(0) for k in range(1, n_max + 1)] for n in range(1, n_max + 1)]
    c = [alpha_nk(n, 0) for n in range(1, n_max + 1)]
    Y: list = []
    for n in range(1, n_max + 1):
        rhs = tuple([Fraction(0)] * n + [Fraction(1)])  # x^n
        rhs = poly.add(rhs, (-c[n - 1],))
        for k in range(1, n):
            rhs = poly.add(rhs, poly.scale(Y[k - 1], -A[n - 1][k - 1]))
        Y.append(poly.scale(rhs, 1 / A[n - 1][n - 1]))
    return ChebyshevBasisData(n_max, A, c, [Fraction(n) for n in range(1, n_max + 1)], Y)


def basis_is_chebyshev(data: ChebyshevBasisData) -> bool:
    return all(poly.normalize(data.Y[n - 1]) == poly.scale(poly.chebyshev_t(n), 2) for n in range(1, data.n_max + 1))


def _matmul(X: list, Y: list) -> list:
    n, m, p = len(X), len(Y), len(Y[0])
    return [[sum((X[i][k] * Y[k][j] for k in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def _transpose(X: list) -> list:
    return [list(r) for r in zip(*X)]


def covariance_factorization(n_max: int) -> tuple[list, list, bool]:
    """``(LHS, RHS, equal)`` with ``LHS_{nm} = Σ_{k>0} k α^n_k α^m_{-k}`` and ``RHS = A Δ A^T``.

    The left side reads ``α`` off the Laurent powers of ``(z+1/z)/2``; the
    right side uses the closed form in ``A``.
    """
    s = chebyshev_symbol()
    powers = [s**n for n in range(1, n_max + 1)]
    lhs = _zeros(n_max)
    for i, p in enumerate(powers):
        for j, q in enumerate(powers):
            lhs[i][j] = sum((k * p[k] * q[-k] for k in range(1, n_max + 1)), Fraction(0))
    data = build_basis(n_max)
    D = _zeros(n_max)
    for i in range(n_max):
        D[i][i] = data.Delta[i]
    rhs = _matmul(_matmul(data.A, D), _transpose(data.A))
    return lhs, rhs, lhs == rhs


def arcsine_moment(k: int) -> Fraction:
    """``∫ x^k dν`` for the arcsine probability measure ``dx / (π sqrt(1 - x^2))``."""
    return alpha_nk(k, 0)


def gram_check(n_max: int) -> tuple[list, bool]:
    """Gram matrix ``∫ Y_i Y_j dν`` (exact, from moments) and whether it is ``2 I``."""
    Y = build_basis(n_max).Y
    G = _zeros(n_max)
    for i in range(n_max):
        for j in range(n_max):
            prod = poly.multiply(Y[i], Y[j])
            G[i][j] = sum((Fraction(v) * arcsine_moment(k) for k, v in enumerate(prod)), Fraction(0))
    target = [[Fraction(2) if i == j else Fraction(0) for j in range(n_max)] for i in range(n_max)]
    return G, G == target


def gram_quadrature(n_max: int, nodes: int = 64) -> np.ndarray:
    """Floating Gauss–Chebyshev evaluation of the same Gram matrix."""
    Y = build_basis(n_max).Y
    x, w = np.polynomial.chebyshev.chebgauss(nodes)
    w = w / np.pi
    V = np.array([poly.evaluate(poly.to_float(y), x) for y in Y])
    return (V * w) @ V.T


def monomial_expansion_check(n_max: int) -> bool:
    """``x^n = α^n_0 + Σ_{k>=1} α^n_k Y_k`` as polynomials, ``n <= n_max``."""
    data = build_basis(n_max)
    for n in range(1, n_max + 1):
        acc = (data.c[n - 1],)
        for k in range(1, n + 1):
            acc = poly.add(acc, poly.scale(data.Y[k - 1], data.A[n - 1][k - 1]))
        if poly.normalize(acc) != poly.normalize(tuple([0] * n + [1])):
            return False
    return True
