"""Toeplitz determinants ``D_N[e^{λ f}]`` and the strong Szegő limit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import toeplitz

from . import laurent as la
from .laurent import LaurentPoly
from .path_cumulants import laurent_varpi_via_g


def symbol_coefficients(f: LaurentPoly, lam: float, modes: int = 1024) -> np.ndarray:
    """Fourier coefficients ``c_k`` of ``exp(λ f(e^{iθ}))``; index ``k mod modes``."""
    theta = 2 * np.pi * np.arange(modes) / modes
    g = np.exp(lam * f.on_circle(theta).real)
    return np.fft.fft(g) / modes


def toeplitz_det(f: LaurentPoly, lam: float, N: int, modes: int = 1024) -> float:
    """``log det (c_{i-j})_{0<=i,j<N}`` for the symbol ``e^{λ f}``.

    The coefficients come from the trapezoid rule on ``modes`` points; the
    log-determinant is accumulated from Cholesky pivots.
    """
    if not f.is_self_adjoint():
        raise ValueError("toeplitz_det requires a self-adjoint symbol")
    if N < 1:
        raise ValueError("N must be at least 1")
    if modes < 4 * (N + f.radius()):
        raise ValueError(f"modes must be at least 4 (N + support width) = {4 * (N + f.radius())}")
    c = symbol_coefficients(f, lam, modes).real
    col = c[:N]
    T = toeplitz(col)  # symmetric since c_k = c_{-k}
    try:
        L = np.linalg.cholesky(T)
    except np.linalg.LinAlgError:
        raise ValueError("symbol not positive") from None
    piv = np.diagonal(L)
    if np.any(piv <= 0):
        raise ValueError("symbol not positive")
    return float(2 * np.sum(np.log(piv)))


@dataclass
class SzegoReport:
    N_values: list
    log_det: list
    target: float
    deviations: list
    lam: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def szego_limit_check(f: LaurentPoly, lam: float, N_values: Sequence[int], modes: int = 1024) -> SzegoReport:
    """Deviations ``|log D_N - λ N f_0 - (λ^2/2) Σ|n||f_n|^2|`` along ``N_values``."""
    target = lam * lam / 2 * float(la.h12_norm(f))
    f0 = float(f[0])
    logs, devs = [], []
    for N in N_values:
        ld = toeplitz_det(f, lam, N, modes)
        logs.append(ld)
        devs.append(abs(ld - lam * N * f0 - target))
    return SzegoReport(list(N_values), logs, target, devs, lam)


def cue_cumulant_limit(f: LaurentPoly, n: int):
    """``Σ f_{ω_1} ... f_{ω_n} G_n(ω)`` over zero-sum tuples."""
    return laurent_varpi_via_g(f, (0, 1), n)
