"""Right-limit windows of Jacobi/band matrix families and the classical inputs.

A family is any callable ``N -> BandMatrix`` (the matrix ``J^(N)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import band_matrix as bm
from .band_matrix import BandMatrix
from .laurent import LaurentPoly

Family = Callable[[int], BandMatrix]
NO_LIMIT = "no-limit"
NOT_LAURENT = "not-laurent"


@dataclass(frozen=True)
class RightLimitWindow:
    """``values[i + r, j + r] = J^(N)(N + i, N + j)`` for ``|i|, |j| <= r``."""

    radius: int
    values: np.ndarray
    source_N: int

    def at(self, i: int, j: int):
        return self.values[i + self.radius, j + self.radius]

    def to_json(self) -> dict:
        rows = [[str(v) if isinstance(v, Fraction) else float(v) for v in row] for row in self.values]
        return {"radius": self.radius, "source_N": self.source_N, "values": rows}


@dataclass(frozen=True)
class RightLimitResult:
    limit: RightLimitWindow
    rates: np.ndarray  # fitted decay exponents p in |W_N - L| ~ c N^{-p}; nan where exact
    deviations: np.ndarray  # max |W_N - L| per N
    N_values: tuple


def extract_window(family: Family, N: int, r: int) -> RightLimitWindow:
    J = family(N)
    if J.kind == bm.SEMI and N <= r:
        raise ValueError("window underflows row 0")
    size = 2 * r + 1
    vals = np.empty((size, size), dtype=object if J.exact else float)
    for i in range(-r, r + 1):
        for j in range(-r, r + 1):
            vals[i + r, j + r] = J.entry(N + i, N + j)
    return RightLimitWindow(r, vals, N)


def _as_float(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=float)


def detect_right_limit(family: Family, N_sequence: Sequence[int], r: int, tol: float = 1e-3):
    """Diagnose convergence of the windows along ``N_sequence``.

    Assumes an ``O(1/N)`` leading error and removes it by Richardson
    extrapolation over consecutive pairs, ``L ≈ (N_2 W_2 - N_1 W_1)/(N_2 - N_1)``.
    The limit is accepted when the last two extrapolants (or, with only two
    sizes, the two raw windows) agree within ``tol`` relative to ``1 + |L|``.
    Returns a :class:`RightLimitResult` or ``NO_LIMIT``.
    """
    Ns = list(N_sequence)
    if len(Ns) < 2 or any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("N_sequence must be increasing with at least two entries")
    wins = [_as_float(extract_window(family, N, r).values) for N in Ns]
    if len(Ns) == 2:
        est = [wins[0], wins[1]]
    else:
        est = [(N2 * W2 - N1 * W1) / (N2 - N1) for N1, N2, W1, W2 in zip(Ns, Ns[1:], wins, wins[1:])]
    L = est[-1]
    if np.any(np.abs(est[-1] - est[-2]) > tol * (1 + np.abs(L))):
        return NO_LIMIT
    # raw windows that already coincide are exact limits; keep them bit-for-bit
    if all(np.array_equal(w, wins[-1]) for w in wins):
        L = wins[-1]
    devs = np.array([np.abs(w - L) for w in wins])
    rates = np.full(L.shape, np.nan)
    logN = np.log(np.array(Ns, dtype=float))
    for idx in np.ndindex(L.shape):
        d = devs[(slice(None), *idx)]
        if np.all(d > 0):
            rates[idx] = -np.polyfit(logN, np.log(d), 1)[0]
    limit = RightLimitWindow(r, L, Ns[-1])
    return RightLimitResult(limit, rates, devs.reshape(len(Ns), -1).max(axis=1), tuple(Ns))


def is_laurent(w: RightLimitWindow, tol: float = 1e-9) -> Union[LaurentPoly, str]:
    """Symbol read off the diagonals, or ``NOT_LAURENT``.

    A diagonal counts as constant when every entry is within ``tol`` of its
    mean; the coefficient is that mean.  Exactly-zero diagonals are dropped.
    """
    vals = w.values
    size = vals.shape[0]
    coeffs = {}
    exact = vals.dtype == object and all(isinstance(v, (int, Fraction)) for v in vals.flat)
    for k in range(-(size - 1), size):
        diag = [vals[i, i - k] for i in range(size) if 0 <= i - k < size]
        if exact:
            mean = sum(diag, Fraction(0)) / len(diag)
            spread = max(abs(v - mean) for v in diag)
        else:
            d = np.array(diag, dtype=float)
            mean = float(d.mean())
            spread = float(np.max(np.abs(d - mean)))
        if spread > tol:
            return NOT_LAURENT
        if mean != 0:
            coeffs[k] = mean
    return LaurentPoly(coeffs)


def laurent_window(s: LaurentPoly, r: int, N: int = 0) -> RightLimitWindow:
    return extract_window(lambda _: bm.laurent(s), N, r)


# ---------------------------------------------------------------------------
# Families and constructors

def hermite_jacobi(N: int) -> BandMatrix:
    """Jacobi matrix of the weight ``exp(-N x^2/2)``: ``a_n = sqrt((n+1)/N)``, ``b_n = 0``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return bm.jacobi(lambda n: math.sqrt((n + 1) / N), lambda n: 0.0, label=f"hermite(N={N})")


def free_family(N: int) -> BandMatrix:
    return bm.free_jacobi()


def periodic_jacobi(a: Sequence, b: Sequence = (0,), kind: str = bm.SEMI) -> BandMatrix:
    """``a_n = a[n mod p]``, ``b_n = b[n mod q]``; bi-infinite when ``kind`` says so."""
    a = tuple(a)
    b = tuple(b)
    exact = all(isinstance(v, (int, Fraction)) for v in a + b)
    conv = Fraction if exact else float
    label = "periodic(a=[{}], b=[{}])".format(", ".join(map(str, a)), ", ".join(map(str, b)))
    return bm.jacobi(lambda n: conv(a[n % len(a)]), lambda n: conv(b[n % len(b)]),
                     label=label, exact=exact, kind=kind, origin=0)


def alternating_family(N: int) -> BandMatrix:
    """``a_n = 1/2 + (-1)^n/4``: a right-limit exists only along a fixed parity of ``N``."""
    return periodic_jacobi((Fraction(3, 4), Fraction(1, 4)))


def diagonal_family(N: int) -> BandMatrix:
    """``b_n = n/N`` and no off-diagonal."""
    return BandMatrix(kind=bm.SEMI, bandwidth=1, generator=lambda i, j: i / N, label=f"diag(N={N})")


def stieltjes(nodes: Sequence[float], weights: Sequence[float], degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Recurrence coefficients ``(a_0..a_{degree-1}, b_0..b_degree)`` of a discrete measure.

    Discretized Stieltjes procedure carried out with orthonormal vectors on
    the nodes; mass is normalized to one first.
    """
    x = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    if np.any(w <= 0):
        raise ValueError("indefinite measure or degree too high")
    if degree < 0 or 2 * degree > len(x):
        raise ValueError("indefinite measure or degree too high")
    w = w / w.sum()
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    a = np.zeros(degree)
    b = np.zeros(degree + 1)
    a_prev = 0.0
    for k in range(degree + 1):
        b[k] = np.sum(w * x * q * q)
        if k == degree:
            break
        r = (x - b[k]) * q - a_prev * q_prev
        nrm2 = np.sum(w * r * r)
        if not nrm2 > 1e-28 * max(1.0, float(np.max(x * x))):
            raise ValueError("indefinite measure or degree too high")
        a[k] = math.sqrt(nrm2)
        q_prev, q = q, r / a[k]
        a_prev = a[k]
    return a, b


def jacobi_from_moments(nodes: Sequence[float], weights: Sequence[float], degree: int) -> BandMatrix:
    """Tridiagonal window (rows ``0..degree``) built by :func:`stieltjes`."""
    a, b = stieltjes(nodes, weights, degree)
    size = degree + 1
    A = np.diag(b)
    if degree:
        A += np.diag(a, 1) + np.diag(a, -1)
    return BandMatrix(kind=bm.SEMI, bandwidth=2, window=A, origin=0, label="stieltjes")
