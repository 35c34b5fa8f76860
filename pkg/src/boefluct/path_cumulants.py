"""Cumulants of polynomial linear statistics as signed sums over lattice paths.

For ``M = F(J)`` the n-th cumulant of ``Ξ_N(F)`` is

    C^n_N[F] = Σ_{c ∈ Λ_n} Ω(c) Σ_{π ∈ Γ^n_N(M)} Π_i M[π(i), π(i-1)]

where ``Γ^n_ω`` holds the closed paths ``π(0) = π(n) < ω`` whose position at
some checkpoint of ``c`` is ``>= ω``.  The trace expansion of ``log det`` is
kept alongside as an independent oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from . import band_matrix as bm
from . import combinatorics as comb
from . import polynomials as poly
from .band_matrix import BandMatrix, GrowthProfile
from .combinatorics import Composition
from .laurent import LaurentPoly, compose
from .polynomials import Number


def _reach(n: int, D: int) -> int:
    # a path must climb ω - π(0) and come back within n steps of size <= D
    return (n * D) // 2


def _materialize(J: BandMatrix, F: Sequence[Number], n: int, omega: int):
    """``F(J)`` on every vertex a path in ``Γ^n_ω`` can visit."""
    F = poly.normalize(F)
    d = poly.degree(F)
    D = d * (J.bandwidth - 1)
    r = _reach(n, D)
    lo, hi = omega - r, omega + r
    if J.kind == bm.SEMI:
        lo = max(0, lo)
    hi = max(hi, lo + 1)
    M = bm.apply_polynomial(J, F, (lo, hi))
    return M, lo, hi, D


def _zero_like(exact: bool):
    return Fraction(0) if exact else 0.0


def _composition_sums(A: np.ndarray, lo: int, omega: int, n: int, exact: bool) -> dict:
    """Per-composition path sums by dynamic programming over (start, vertex, hit).

    ``A`` is the dense block of ``M`` on ``[lo, lo + len(A))``.  Rows of the
    state arrays index the start vertex ``s < ω``; a path contributes only if
    it is back at ``s`` after ``n`` steps with the hit flag raised.
    """
    V = A.shape[0]
    starts = list(range(lo, min(omega, lo + V)))
    out = {}
    if not starts:
        return {c: _zero_like(exact) for c in comb.lambda_n(n)}
    S = len(starts)
    AT = A.T
    above = np.arange(lo, lo + V) >= omega
    init = np.zeros((S, V), dtype=object if exact else float)
    if exact:
        init[...] = Fraction(0)
    for r, s in enumerate(starts):
        init[r, s - lo] = Fraction(1) if exact else 1.0
    rows = np.arange(S)
    cols = np.array([s - lo for s in starts])
    for c in comb.lambda_n(n):
        cps = set(c.checkpoints)
        X0 = init.copy()
        X1 = np.zeros_like(init)
        if exact:
            X1[...] = Fraction(0)
        for step in range(1, n + 1):
            X0 = X0 @ AT
            X1 = X1 @ AT
            if step in cps:
                X1[:, above] = X1[:, above] + X0[:, above]
                X0[:, above] = Fraction(0) if exact else 0.0
        out[c] = sum(X1[rows, cols], _zero_like(exact))
    return out


def _combine(sums: dict, exact: bool):
    total = _zero_like(exact)
    for c, v in sums.items():
        w = comb.mho(c)
        total += w * v if exact else float(w) * v
    return total


def enumerate_gamma(M: BandMatrix, n: int, c: Composition, omega: int,
                    window: Optional[tuple[int, int]] = None) -> Iterator[tuple[tuple, Number]]:
    """Depth-first enumeration of ``Γ^n_ω(M)`` for the composition ``c``.

    Starts with ``ω - π(0) > n (W_M - 1)/2`` are skipped, and a branch is
    abandoned once it can no longer reach ``ω`` by the last open checkpoint
    or get back to ``π(0)`` by step ``n``.  ``window`` limits the vertex range
    (defaults to the stored range of ``M``, if any).
    """
    if n < 2:
        raise ValueError("paths are defined for n >= 2")
    D = M.bandwidth - 1
    if D == 0:
        return
    r = _reach(n, D)
    lo = omega - r
    if M.kind == bm.SEMI:
        lo = max(0, lo)
    hi = omega + r
    if window is None and M.window is not None:
        window = M.stored_range()
    if window is not None:
        lo, hi = max(lo, window[0]), min(hi, window[1])
    cps = c.checkpoints
    last_cp = cps[-1]
    cp_set = set(cps)

    def dfs(path: list, weight, hit: bool):
        step = len(path) - 1
        v = path[-1]
        s = path[0]
        if step == n:
            if v == s and hit:
                yield tuple(path), weight
            return
        for u in range(max(lo, v - D), min(hi, v + D + 1)):
            w = M.entry(u, v)
            if w == 0:
                continue
            t = step + 1
            h = hit or (t in cp_set and u >= omega)
            if not h and (t >= last_cp or omega - u > (last_cp - t) * D):
                continue
            if abs(u - s) > (n - t) * D:
                continue
            path.append(u)
            yield from dfs(path, weight * w, h)
            path.pop()

    for s in range(max(lo, omega - r), omega):
        one = Fraction(1) if M.exact else 1.0
        yield from dfs([s], one, False)


def cumulant_paths(J: BandMatrix, F: Sequence[Number], n: int, N: int, method: str = "dp"):
    """``C^n_N[F]`` from the path expansion; ``n >= 2``.

    Exact (``Fraction``) when ``J`` and ``F`` are rational.  ``method="dfs"``
    walks the paths one by one instead of the default dynamic program.
    """
    if n < 2:
        raise ValueError("cumulant_paths needs n >= 2; use cumulant_traces for the mean")
    if N < 1:
        raise ValueError("N must be at least 1")
    return _root_sum(J, F, n, N, method)


def _root_sum(J: BandMatrix, F: Sequence[Number], n: int, omega: int, method: str):
    M, lo, hi, D = _materialize(J, F, n, omega)
    exact = M.exact
    if method == "dp":
        A = M.window
        return _combine(_composition_sums(A, lo, omega, n, exact), exact)
    if method == "dfs":
        sums = {}
        for c in comb.lambda_n(n):
            acc = _zero_like(exact)
            for _, w in enumerate_gamma(M, n, c, omega, window=(lo, hi)):
                acc += w
            sums[c] = acc
        return _combine(sums, exact)
    raise ValueError(f"unknown method {method!r}")


def count_paths(J: BandMatrix, F: Sequence[Number], n: int, omega: int) -> int:
    """``Σ_c |Γ^n_ω|`` over ``Λ_n`` counting paths along nonzero entries of ``F(J)``."""
    M, lo, _, _ = _materialize(J, F, n, omega)
    A = np.vectorize(lambda v: 1 if v != 0 else 0, otypes=[object])(M.window)
    sums = _composition_sums(A, lo, omega, n, exact=True)
    return int(sum(sums.values()))


def cumulant_traces(J: BandMatrix, F: Sequence[Number], n: int, N: int):
    """``Σ_l ((-1)^(l+1)/l) Σ_k (n!/Π k_i!) Tr[P M^{k_1} P ... P M^{k_l} P]``.

    ``P`` projects onto indices ``0..N-1`` (or ``origin..origin+N-1`` for a
    bi-infinite matrix).  Powers of ``M = F(J)`` are taken on a block padded by
    ``n deg F (W - 1)`` so the ``N x N`` corners are exact.
    """
    if n < 1 or N < 1:
        raise ValueError("need n >= 1 and N >= 1")
    F = poly.normalize(F)
    d = poly.degree(F)
    pad = n * d * (J.bandwidth - 1)
    if J.kind == bm.SEMI:
        base, lo = 0, 0
    else:
        if J.origin is None:
            raise bm.BandMatrixError("unanchored")
        base = J.origin
        lo = base - pad
    hi = base + N + pad
    exact = J.exact and poly.is_exact(F)
    A = J.block(lo, hi)
    if exact:
        A = A.astype(object)
        Fc = tuple(Fraction(c) for c in F)
    else:
        A = A.astype(float)
        Fc = poly.to_float(F)
    Mb = poly.matrix_polynomial(Fc, A)
    a = base - lo
    blocks = {}
    P = Mb
    for k in range(1, n + 1):
        blocks[k] = P[a : a + N, a : a + N]
        if k < n:
            P = P @ Mb
    total = _zero_like(exact)
    for ell in range(1, n + 1):
        sign = Fraction((-1) ** (ell + 1), ell)
        inner = _zero_like(exact)
        for ks in comb.compositions(n, ell):
            prod = blocks[ks[0]]
            for k in ks[1:]:
                prod = prod @ blocks[k]
            tr = sum(np.diagonal(prod), _zero_like(exact))
            inner += comb.multinomial(ks) * tr
        total += sign * inner if exact else float(sign) * inner
    return total


def varpi(M: BandMatrix, F: Sequence[Number], n: int, omega: int = 0, method: str = "dp"):
    """``ϖ^n_ω(F(M))`` for a bi-infinite ``M``: the path sum rooted at ``ω``."""
    if M.kind != bm.BI:
        raise ValueError("varpi is defined on bi-infinite matrices")
    if n < 2:
        raise ValueError("varpi needs n >= 2")
    return _root_sum(M, F, n, omega, method)


def cumulant_bound(F: Sequence[Number], g: GrowthProfile, W: int, n: int) -> float:
    """``n! exp(n (log(2 d C A W^2) + α W^d))`` with ``A = max |F_k|``."""
    F = poly.normalize(F)
    d = poly.degree(F)
    if d < 1:
        raise ValueError("bound needs deg F >= 1")
    A = max(abs(float(c)) for c in F)
    CF = math.log(2 * d * g.C * A * W * W) + g.alpha * W**d
    return math.factorial(n) * math.exp(n * CF)


def laurent_varpi_via_g(s: LaurentPoly, F: Sequence[Number], n: int, method: str = "dp"):
    """``Σ p_{ω_1}...p_{ω_n} G_n(ω)`` over zero-sum tuples, ``p = F(s)``.

    The default runs, per composition, a dynamic program over (partial sum,
    running checkpoint maximum).  ``method="brute"`` enumerates the tuples and
    calls ``G_n`` directly.
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    p = compose(F, s)
    exact = p.is_exact()
    zero = _zero_like(exact)
    supp = p.support()
    if not supp:
        return zero
    if method == "brute":
        total = zero
        for tup in itertools.product(supp, repeat=n - 1):
            last = -sum(tup)
            if p[last] == 0:
                continue
            w = p[last]
            for k in tup:
                w = w * p[k]
            g = comb.g_n((*tup, last))
            total += w * g if exact else w * float(g)
        return total
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    R = max(abs(k) for k in supp)
    total = zero
    for c in comb.lambda_n(n):
        cps = set(c.checkpoints)
        state = {(0, 0): Fraction(1) if exact else 1.0}
        for step in range(1, n + 1):
            nxt: dict = {}
            remaining = n - step
            for (S, m), w in state.items():
                for k in supp:
                    S2 = S + k
                    if abs(S2) > remaining * R:
                        continue
                    m2 = max(m, S2) if step in cps else m
                    key = (S2, m2)
                    nxt[key] = nxt.get(key, zero) + w * p[k]
            state = nxt
        acc = sum((w * m for (S, m), w in state.items() if S == 0 and m > 0), zero)
        wc = comb.mho(c)
        total += wc * acc if exact else float(wc) * acc
    return total


@dataclass
class CumulantReport:
    N: int
    n: int
    value_paths: Number
    value_traces: Number
    paths_enumerated: int
    agreement: float

    def to_json(self) -> dict:
        def num(v):
            if isinstance(v, Fraction):
                return str(v) if v.denominator != 1 else int(v)
            return float(v)

        return {
            "N": self.N,
            "n": self.n,
            "value_paths": num(self.value_paths),
            "value_traces": num(self.value_traces),
            "paths_enumerated": self.paths_enumerated,
            "agreement": self.agreement,
        }


def cumulant_report(J: BandMatrix, F: Sequence[Number], n: int, N: int) -> CumulantReport:
    vp = cumulant_paths(J, F, n, N)
    vt = cumulant_traces(J, F, n, N)
    count = count_paths(J, F, n, N)
    return CumulantReport(N, n, vp, vt, count, float(abs(vp - vt)))
