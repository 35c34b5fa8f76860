"""Recurrence data for squared singular values of products of complex Ginibre matrices.

Factor ``X_j`` is ``N_j x N_{j-1}`` with ``N_j = N + η_j`` (``η_0 = 0``).  The
biorthogonal recurrence has one upper and ``m`` lower diagonals with

    α_{n,-k} = (1/(k+1)!) Σ_i (-1)^i C(k+1, i) Π_{l=0}^m (n + η_l - i + 1)

and the normalized matrix ``J_{n,n-k} = N^k α_{n,-k} / M(N)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import band_matrix as bm
from .band_matrix import BandMatrix
from .laurent import LaurentPoly, variance_fourier
from .polynomials import Number


@dataclass(frozen=True)
class GinibreParams:
    """Product of ``m`` factors at base size ``N``.

    Give ``eta`` (integers), or ``theta`` with ``θ_0 = 1`` in which case
    ``η_l = round(N/θ_l) - N``.  With only ``eta``, ``θ_l = N/(N + η_l)``.
    """

    m: int
    N: int
    eta: Optional[tuple] = None
    theta: Optional[tuple] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one factor")
        if self.N < 1:
            raise ValueError("N must be at least 1")
        eta, theta = self.eta, self.theta
        if eta is None and theta is None:
            eta = (0,) * self.m
        if theta is not None:
            theta = tuple(theta)
            _check_theta(theta, self.m)
            if eta is None:
                eta = tuple(round(self.N / t) - self.N for t in theta[1:])
        eta = tuple(int(e) for e in eta)
        if len(eta) != self.m:
            raise ValueError(f"expected {self.m} values of eta, got {len(eta)}")
        if any(e < 0 for e in eta):
            raise ValueError("eta must be nonnegative")
        if theta is None:
            theta = (Fraction(1),) + tuple(Fraction(self.N, self.N + e) for e in eta)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "theta", theta)

    @property
    def dims(self) -> tuple:
        return (self.N,) + tuple(self.N + e for e in self.eta)

    @property
    def M(self) -> int:
        return math.prod(self.N + e for e in self.eta)


def _check_theta(theta: Sequence, m: int) -> None:
    if len(theta) != m + 1:
        raise ValueError(f"expected {m + 1} values of theta")
    if theta[0] != 1:
        raise ValueError("theta_0 must equal 1")
    if any(not (0 < t <= 1) for t in theta):
        raise ValueError("theta values must lie in (0, 1]")


def _alpha_raw(n: int, k: int, eta: Sequence[int]) -> int:
    etas = (0, *eta)
    total = 0
    for i in range(k + 2):
        total += (-1) ** i * math.comb(k + 1, i) * math.prod(n + e - i + 1 for e in etas)
    q, rem = divmod(total, math.factorial(k + 1))
    return q if rem == 0 else Fraction(total, math.factorial(k + 1))


def alpha(n: int, k: int, eta: Sequence[int]):
    """``α_{n,-k}`` exactly, for ``n >= m`` and ``k >= -1``; zero for ``k > m``."""
    m = len(eta)
    if k < -1:
        raise ValueError("k must be at least -1")
    if n < m:
        raise ValueError(f"alpha requires n >= m (n={n}, m={m})")
    return _alpha_raw(n, k, eta)


def recurrence_matrix(p: GinibreParams, exact: bool = False) -> BandMatrix:
    """``J_{n,n-k} = N^k α_{n,-k}/M(N)`` for ``-1 <= k <= m``.

    Rows ``n < m`` use the same closed form.
    """
    N, M, eta, m = p.N, p.M, p.eta, p.m
    zero = Fraction(0) if exact else 0.0

    def gen(i: int, j: int):
        k = i - j
        if k < -1 or k > m:
            return zero
        val = Fraction(N) ** k * _alpha_raw(i, k, eta) / M
        return val if exact else float(val)

    return BandMatrix(kind=bm.SEMI, bandwidth=m + 2, generator=gen, label=f"ginibre(m={m}, eta={eta}, N={N})",
                      exact=exact)


def elementary_symmetric(values: Sequence, r: int):
    if r == 0:
        return 1
    return sum((math.prod(c) for c in combinations(values, r)), 0)


def limit_symbol(theta: Sequence) -> LaurentPoly:
    """``z^m Π_l (z^{-1} + θ_l)``: coefficient of ``z^k`` is ``e_{k+1}(θ)``, ``-1 <= k <= m``."""
    theta = tuple(theta)
    m = len(theta) - 1
    _check_theta(theta, m)
    return LaurentPoly({k: elementary_symmetric(theta, k + 1) for k in range(-1, m + 1)})


def mop_variance(F: Sequence[Number], theta: Sequence) -> Number:
    return variance_fourier(F, limit_symbol(theta))


@dataclass
class RateRow:
    k: int
    target: float
    deviations: list
    ratios: list  # dev(N_{i+1}) / dev(N_i)
    exponent: Optional[float]  # fitted p in dev ~ c N^{-p}; None if exactly converged
    converged: bool

    def to_json(self) -> dict:
        return {"k": self.k, "target": self.target, "deviations": self.deviations, "ratios": self.ratios,
                "exponent": self.exponent, "converged": self.converged}


def right_limit_rate_check(p: GinibreParams, N_values: Sequence[int], halving_tol: float = 0.2) -> list:
    """Deviations ``|J_{N,N-k} - e_{k+1}(θ)|`` along ``N_values`` for every diagonal.

    With dyadic ``N_values`` a diagonal is ``converged`` when each successive
    deviation ratio lies in ``0.5 (1 ± halving_tol)``, or when the deviations
    are exactly zero throughout.  ``η`` is held fixed at ``p.eta``.
    """
    Ns = list(N_values)
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("N_values must be increasing")
    theta = tuple(Fraction(1) for _ in range(p.m + 1)) if all(e == 0 for e in p.eta) else p.theta
    sym = limit_symbol(theta)
    rows = []
    for k in range(-1, p.m + 1):
        target = sym[k]
        devs = []
        for N in Ns:
            J = recurrence_matrix(GinibreParams(p.m, N, eta=p.eta), exact=True)
            devs.append(abs(J.entry(N, N - k) - target))
        ratios = [float(b / a) if a != 0 else (0.0 if b == 0 else math.inf) for a, b in zip(devs, devs[1:])]
        if all(d == 0 for d in devs):
            exponent, ok = None, True
        else:
            pos = [(N, float(d)) for N, d in zip(Ns, devs) if d > 0]
            exponent = None
            if len(pos) >= 2:
                exponent = float(-np.polyfit(np.log([a for a, _ in pos]), np.log([b for _, b in pos]), 1)[0])
            ok = all(abs(r - 0.5) <= 0.5 * halving_tol for r in ratios)
        rows.append(RateRow(k, float(target), [float(d) for d in devs], ratios, exponent, ok))
    return rows


def ginibre_family(m: int, eta: Optional[Sequence[int]] = None):
    eta = tuple(eta) if eta is not None else (0,) * m
    return lambda N: recurrence_matrix(GinibreParams(m, N, eta=eta))
