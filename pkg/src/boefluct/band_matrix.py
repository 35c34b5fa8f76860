"""Band matrices: recurrence matrices, their polynomial images and right-limits.

Indices are global.  ``semi_infinite`` matrices live on ``{0, 1, 2, ...}``,
``bi_infinite`` ones on all of ``Z``.  A matrix is either backed by a generator
``(i, j) -> value`` or by a stored dense window whose top-left corner sits at
global index ``origin``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import polynomials as poly
from .laurent import LaurentPoly
from .polynomials import Number

SEMI = "semi_infinite"
BI = "bi_infinite"


class BandMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class GrowthProfile:
    C: float
    alpha: float = 0.0

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("growth constant C must be positive")
        if self.alpha < 0:
            raise ValueError("growth rate alpha must be nonnegative")

    def bound(self, i: int, j: int) -> float:
        return self.C * math.exp(self.alpha * max(0, i, j))


@dataclass(frozen=True, eq=False)
class BandMatrix:
    kind: str
    bandwidth: int
    generator: Optional[Callable[[int, int], Number]] = None
    window: Optional[np.ndarray] = None
    origin: Optional[int] = 0
    label: str = ""
    exact: bool = False

    def __post_init__(self):
        if self.kind not in (SEMI, BI):
            raise BandMatrixError(f"unknown kind {self.kind!r}")
        if self.bandwidth < 1:
            raise BandMatrixError("bandwidth must be positive")
        if (self.generator is None) == (self.window is None):
            raise BandMatrixError("exactly one of generator or window is required")
        if self.window is not None:
            if self.origin is None:
                raise BandMatrixError("stored windows need an origin")
            if self.kind == SEMI and self.origin < 0:
                raise BandMatrixError("semi-infinite window cannot start below row 0")
            self.window.setflags(write=False)

    def entry(self, i: int, j: int) -> Number:
        if self.kind == SEMI and (i < 0 or j < 0):
            raise BandMatrixError(f"negative index ({i}, {j}) on a semi-infinite matrix")
        if abs(i - j) >= self.bandwidth:
            return Fraction(0) if self.exact else 0.0
        if self.generator is not None:
            return self.generator(i, j)
        r, c = i - self.origin, j - self.origin
        h = self.window.shape[0]
        if not (0 <= r < h and 0 <= c < h):
            raise BandMatrixError(f"entry ({i}, {j}) outside stored window [{self.origin}, {self.origin + h})")
        return self.window[r, c]

    def stored_range(self) -> Optional[tuple[int, int]]:
        if self.window is None:
            return None
        return self.origin, self.origin + self.window.shape[0]

    def block(self, lo: int, hi: int) -> np.ndarray:
        """Dense block of rows and columns ``lo..hi-1`` (global indices)."""
        n = hi - lo
        if self.window is not None:
            s0, s1 = self.stored_range()
            if lo >= s0 and hi <= s1:
                return np.array(self.window[lo - s0 : hi - s0, lo - s0 : hi - s0], copy=True)
        out = np.empty((n, n), dtype=object) if self.exact else np.zeros((n, n))
        if self.exact:
            out[...] = Fraction(0)
        W = self.bandwidth
        for r in range(n):
            for c in range(max(0, r - W + 1), min(n, r + W)):
                out[r, c] = self.entry(lo + r, lo + c)
        return out

    def to_json(self, window: Optional[tuple[int, int]] = None) -> dict:
        if window is None:
            if self.window is None:
                raise BandMatrixError("generator-backed matrices need an explicit window to serialize")
            window = self.stored_range()
        lo, hi = window
        B = self.block(lo, hi)
        rows = [[_json_number(v) for v in row] for row in B]
        return {"kind": self.kind, "bandwidth": self.bandwidth, "origin": lo, "rows": rows, "label": self.label}

    @classmethod
    def from_json(cls, data: dict) -> "BandMatrix":
        rows = data["rows"]
        exact = any(isinstance(v, str) for row in rows for v in row) or all(
            isinstance(v, int) for row in rows for v in row
        )
        if exact:
            arr = np.array([[Fraction(v) for v in row] for row in rows], dtype=object)
        else:
            arr = np.array(rows, dtype=float)
        return cls(
            kind=data["kind"],
            bandwidth=int(data["bandwidth"]),
            window=arr,
            origin=int(data["origin"]),
            label=data.get("label", ""),
            exact=exact,
        )


def _json_number(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    return v


# ---------------------------------------------------------------------------
# Constructors

def jacobi(a: Callable[[int], Number], b: Callable[[int], Number], label: str = "", exact: bool = False,
           kind: str = SEMI, origin: Optional[int] = 0) -> BandMatrix:
    """Symmetric tridiagonal matrix with ``J_{n,n+1} = J_{n+1,n} = a_n`` and ``J_{nn} = b_n``."""

    def gen(i: int, j: int):
        if i == j:
            return b(i)
        return a(min(i, j))

    return BandMatrix(kind=kind, bandwidth=2, generator=gen, label=label, exact=exact, origin=origin)


def free_jacobi() -> BandMatrix:
    half = Fraction(1, 2)
    return jacobi(lambda n: half, lambda n: Fraction(0), label="free", exact=True)


def laurent(s: LaurentPoly, origin: Optional[int] = 0, label: str = "") -> BandMatrix:
    """Laurent matrix ``L_{ij} = s_{i-j}`` on ``Z``."""
    exact = s.is_exact()
    zero = Fraction(0) if exact else 0.0
    coeffs = s.coeffs

    def gen(i: int, j: int):
        return coeffs.get(i - j, zero)

    return BandMatrix(kind=BI, bandwidth=s.radius() + 1, generator=gen, origin=origin,
                      label=label or "laurent", exact=exact)


def from_dense(rows, kind: str = SEMI, origin: int = 0, label: str = "", bandwidth: Optional[int] = None) -> BandMatrix:
    """Wrap an explicit finite window; bandwidth is inferred from the nonzeros."""
    arr = np.array(rows, dtype=object if _all_rational(rows) else float)
    if arr.dtype == object:
        arr = np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr
    if bandwidth is None:
        bandwidth = infer_bandwidth(arr)
    return BandMatrix(kind=kind, bandwidth=bandwidth, window=arr, origin=origin, label=label,
                      exact=arr.dtype == object)


def _all_rational(rows) -> bool:
    return all(isinstance(v, (int, Fraction)) for row in rows for v in row)


def infer_bandwidth(arr: np.ndarray) -> int:
    n = arr.shape[0]
    W = 1
    for i in range(n):
        for j in range(n):
            if arr[i, j] != 0:
                W = max(W, abs(i - j) + 1)
    return W


def shifted(M: BandMatrix, shift: int, kind: str = BI) -> BandMatrix:
    """``(i, j) -> M(i + shift, j + shift)``; recenters a matrix at row ``shift``."""
    return BandMatrix(kind=kind, bandwidth=M.bandwidth, generator=lambda i, j: M.entry(i + shift, j + shift),
                      origin=0, label=f"{M.label}@{shift}", exact=M.exact)


# ---------------------------------------------------------------------------
# Operations

def principal_block(M: BandMatrix, N: int) -> np.ndarray:
    """``P_N M P_N`` as a dense ``N x N`` array (rows and columns ``0..N-1``).

    For a bi-infinite matrix the block starts at its declared origin.
    """
    if N < 1:
        raise BandMatrixError("N must be at least 1")
    if M.kind == BI and M.origin is None:
        raise BandMatrixError("unanchored")
    start = 0 if M.kind == SEMI else M.origin
    return M.block(start, start + N)


def apply_polynomial(J: BandMatrix, F: Sequence[Number], window: tuple[int, int],
                     padding: Optional[int] = None) -> BandMatrix:
    """``F(J)`` restricted to the half-open index range ``window``.

    The block of ``J`` is enlarged by ``deg F * (W - 1)`` on each side (clipped
    at row 0 for semi-infinite ``J``); a length-``d`` path between two window
    indices cannot leave that enlarged block, so the result is exact.
    """
    lo, hi = window
    if hi <= lo:
        raise BandMatrixError("empty window")
    if J.kind == SEMI and lo < 0:
        raise BandMatrixError("window extends below index 0")
    F = poly.normalize(F)
    d = poly.degree(F)
    W = J.bandwidth
    pad = d * (W - 1) if padding is None else padding
    if pad < d * (W - 1):
        raise BandMatrixError("padding too small for exactness")
    big_lo = lo - pad
    if J.kind == SEMI:
        big_lo = max(0, big_lo)
    big_hi = hi + pad
    B = J.block(big_lo, big_hi)
    exact = J.exact and poly.is_exact(F)
    if exact:
        B = B.astype(object)
        Fc = tuple(Fraction(c) for c in F)
    else:
        if B.dtype == object:
            B = B.astype(float)
        Fc = poly.to_float(F)
    R = poly.matrix_polynomial(Fc, B)
    inner = R[lo - big_lo : hi - big_lo, lo - big_lo : hi - big_lo]
    return BandMatrix(kind=J.kind, bandwidth=d * (W - 1) + 1, window=np.array(inner, copy=True), origin=lo,
                      label=f"F({J.label})", exact=exact)


def verify_growth(J: BandMatrix, g: GrowthProfile, N: int, window: tuple[int, int]) -> bool:
    """``|J(N+i, N+j)| <= C exp(α max(0, i, j))`` for ``i, j`` in ``window``."""
    lo, hi = window
    for i in range(lo, hi):
        for j in range(lo, hi):
            if J.kind == SEMI and (N + i < 0 or N + j < 0):
                continue
            if abs(i - j) >= J.bandwidth:
                continue
            if abs(float(J.entry(N + i, N + j))) > g.bound(i, j):
                return False
    return True
