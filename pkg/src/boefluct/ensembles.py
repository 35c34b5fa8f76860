"""Seeded samplers for GUE, CUE and Ginibre products, and empirical cumulants.

Sample ``i`` of a run with seed ``s`` draws from its own Philox stream keyed by
``(s, i)``, so any subset of samples can be regenerated independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import band_matrix as bm
from . import ginibre as gin
from . import laurent as la
from . import path_cumulants as pc
from . import polynomials as poly
from . import right_limits as rl
from .ginibre import GinibreParams
from .laurent import LaurentPoly


def rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


@dataclass(frozen=True)
class EnsembleSample:
    points: np.ndarray
    N: int
    ensemble: str
    seed: int
    index: int = 0


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    # E|g|^2 = 1
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def sample_gue(N: int, seed: int, index: int = 0, support_pm1: bool = False) -> EnsembleSample:
    """Eigenvalues of ``H`` with density ``∝ exp(-N Tr H^2 / 2)``.

    Spectrum fills ``[-2, 2]``; ``support_pm1`` halves the points.
    """
    rng = rng_for(seed, index)
    G = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    H = (G + G.conj().T) / (2 * math.sqrt(N))
    ev = np.linalg.eigvalsh(H)
    if support_pm1:
        ev = ev / 2
    return EnsembleSample(ev, N, "gue", seed, index)


def haar_unitary(N: int, rng: np.random.Generator) -> np.ndarray:
    Z = _complex_gaussian(rng, (N, N))
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def sample_cue(N: int, seed: int, index: int = 0) -> EnsembleSample:
    """Eigenangles in ``[-π, π]`` of a Haar unitary (QR with phase correction)."""
    U = haar_unitary(N, rng_for(seed, index))
    ang = np.sort(np.angle(np.linalg.eigvals(U)))
    return EnsembleSample(ang, N, "cue", seed, index)


def sample_ginibre_product(p: GinibreParams, seed: int, index: int = 0) -> EnsembleSample:
    """Eigenvalues of ``W* W / M(N)`` with ``W = X_m ... X_1``."""
    rng = rng_for(seed, index)
    dims = p.dims
    W = _complex_gaussian(rng, (dims[1], dims[0]))
    for j in range(2, p.m + 1):
        W = _complex_gaussian(rng, (dims[j], dims[j - 1])) @ W
    sv = np.linalg.svd(W, compute_uv=False)
    pts = np.sort(sv**2 / p.M)
    return EnsembleSample(pts, p.N, "ginibre", seed, index)


# ---------------------------------------------------------------------------
# Empirical cumulants

def _kstats(m2, m3, m4, n):
    k2 = n / (n - 1) * m2
    k3 = n * n / ((n - 1) * (n - 2)) * m3
    k4 = n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3))
    return k2, k3, k4


def _shape(k2, k3, k4):
    with np.errstate(divide="ignore", invalid="ignore"):
        return k3 / k2**1.5, k4 / k2**2


@dataclass
class SimSummary:
    sample_count: int
    mean: float
    mean_se: float
    variance: float
    variance_se: float
    skewness: Optional[float]
    skewness_se: Optional[float]
    excess_kurtosis: Optional[float]
    excess_kurtosis_se: Optional[float]
    theory_variance: Optional[float] = None
    finite_n_variance: Optional[float] = None
    variance_bound: Optional[float] = None
    z_scores: dict = field(default_factory=dict)

    def with_theory(self, theory_variance: Optional[float], finite_n_variance: Optional[float] = None,
                    variance_bound: Optional[float] = None) -> "SimSummary":
        self.theory_variance = None if theory_variance is None else float(theory_variance)
        self.finite_n_variance = None if finite_n_variance is None else float(finite_n_variance)
        self.variance_bound = variance_bound
        z = {}
        if self.theory_variance is not None and self.variance_se > 0:
            z["variance"] = (self.variance - self.theory_variance) / self.variance_se
        if self.skewness is not None and self.skewness_se:
            z["skewness"] = self.skewness / self.skewness_se
        if self.excess_kurtosis is not None and self.excess_kurtosis_se:
            z["excess_kurtosis"] = self.excess_kurtosis / self.excess_kurtosis_se
        self.z_scores = z
        return self

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def empirical_cumulants(samples: Sequence[float]) -> SimSummary:
    """k-statistics ``k_2, k_3, k_4`` with leave-one-out jackknife standard errors.

    Skewness and excess kurtosis are ``k_3/k_2^{3/2}`` and ``k_4/k_2^2``; they
    are reported only from four samples on.
    """
    x = np.asarray(samples, dtype=float)
    n = x.size
    if n < 2:
        raise ValueError("need at least 2 samples")
    mu = x.mean()
    y = x - mu
    P = [np.sum(y**r) for r in range(5)]
    m2 = P[2] / n
    k2 = n / (n - 1) * m2
    mean_se = math.sqrt(k2 / n)
    # leave-one-out central moments via shifted power sums
    d = -y / (n - 1)
    R = [P[r] - y**r for r in range(5)]
    c2 = (R[2] - 2 * d * R[1] + d * d * R[0]) / (n - 1)
    c3 = (R[3] - 3 * d * R[2] + 3 * d**2 * R[1] - d**3 * R[0]) / (n - 1)
    c4 = (R[4] - 4 * d * R[3] + 6 * d**2 * R[2] - 4 * d**3 * R[1] + d**4 * R[0]) / (n - 1)

    def jk(vals):
        vals = np.asarray(vals, dtype=float)
        if not np.all(np.isfinite(vals)):
            return math.nan  # some leave-one-out sample is degenerate
        return math.sqrt((n - 1) / n * np.sum((vals - vals.mean()) ** 2))

    if n < 5:
        var_loo = (n - 1) / (n - 2) * c2 if n > 2 else None
        var_se = jk(var_loo) if var_loo is not None else 0.0
        return SimSummary(n, float(mu), mean_se, float(k2), var_se, None, None, None, None)
    k2, k3, k4 = _kstats(m2, P[3] / n, P[4] / n, n)
    g1, g2 = _shape(k2, k3, k4)
    l2, l3, l4 = _kstats(c2, c3, c4, n - 1)
    h1, h2 = _shape(l2, l3, l4)
    var_se = jk(l2)
    if k2 > 0:
        return SimSummary(n, float(mu), mean_se, float(k2), var_se, float(g1), jk(h1), float(g2), jk(h2))
    return SimSummary(n, float(mu), mean_se, float(k2), var_se, None, None, None, None)


# ---------------------------------------------------------------------------
# CLT experiments

ENSEMBLES = ("gue", "cue", "ginibre")


def _statistic(points: np.ndarray, F=None, f=None, symbol: Optional[LaurentPoly] = None) -> float:
    if symbol is not None:
        return float(np.sum(symbol.on_circle(points)).real)
    if f is not None:
        return float(np.sum(f(points)))
    return float(np.sum(poly.evaluate(poly.to_float(F), points)))


def run_samples(ensemble: str, N: int, samples: int, seed: int, F=None, f=None, symbol=None,
                params: Optional[GinibreParams] = None, support_pm1: bool = False) -> np.ndarray:
    """Statistic values ``Ξ_N(F)`` (or ``Ξ_N(f)``, or ``Re Ξ_N(symbol)`` for CUE), one per sample."""
    if ensemble not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {ensemble!r}")
    out = np.empty(samples)
    for i in range(samples):
        if ensemble == "gue":
            pts = sample_gue(N, seed, i, support_pm1).points
        elif ensemble == "cue":
            pts = sample_cue(N, seed, i).points
        else:
            pts = sample_ginibre_product(params or GinibreParams(1, N), seed, i).points
        out[i] = _statistic(pts, F, f, symbol)
    return out


def theory_overlay(ensemble: str, N: int, F=None, f=None, symbol=None, params=None, support_pm1: bool = False):
    """``(limit variance, exact finite-N variance, limsup bound)``; entries may be ``None``."""
    if ensemble == "gue":
        s = la.chebyshev_symbol() if support_pm1 else LaurentPoly({-1: 1, 1: 1})
        if F is not None:
            finite = pc.cumulant_paths(_scaled_hermite(N, support_pm1), F, 2, N)
            return float(la.variance_fourier(F, s)), float(finite), None
        if f is not None:
            g = f if support_pm1 else (lambda u: f(2 * u))
            return la.sigma_chebyshev_function(g), None, la.variance_upper_bound(g)
        return None, None, None
    if ensemble == "cue":
        if symbol is not None:
            return float(la.h12_norm(symbol)), None, None
        return None, None, None
    p = params or GinibreParams(1, N)
    if F is not None:
        finite = pc.cumulant_paths(gin.recurrence_matrix(p), F, 2, N)
        return float(gin.mop_variance(F, p.theta)), float(finite), None
    return None, None, None


def _scaled_hermite(N: int, support_pm1: bool):
    J = rl.hermite_jacobi(N)
    if not support_pm1:
        return J
    return bm.jacobi(lambda n: math.sqrt((n + 1) / N) / 2, lambda n: 0.0, label=f"hermite/2(N={N})")


def clt_experiment(ensemble: str, N: int, samples: int, seed: int, F=None, f=None, symbol=None,
                   params: Optional[GinibreParams] = None, support_pm1: bool = False):
    """Run the sampler, summarize the statistic and attach the theory variance.

    Returns ``(summary, values)``.  The overlay is the symbol variance for
    polynomial statistics, the Chebyshev-interpolant variance plus the limsup
    bound for smooth non-polynomial ``f`` on GUE, and the ``H^{1/2}`` norm on
    CUE.
    """
    if ensemble == "ginibre" and params is None:
        params = GinibreParams(1, N)
    values = run_samples(ensemble, N, samples, seed, F, f, symbol, params, support_pm1)
    summary = empirical_cumulants(values)
    theory, finite, bound = theory_overlay(ensemble, N, F, f, symbol, params, support_pm1)
    return summary.with_theory(theory, finite, bound), values
