"""Laurent polynomial symbols and the variance formulas built on them."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import polynomials as poly
from .polynomials import Number, ParseError


class LaurentPoly:
    """Finitely supported map ``k -> coefficient of z^k``.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        self._c = {int(k): v for k, v in (coeffs or {}).items() if v != 0}

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def constant(cls, c: Number) -> "LaurentPoly":
        return cls({0: c})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def __getitem__(self, k: int) -> Number:
        return self._c.get(k, 0)

    def support(self) -> list[int]:
        return sorted(self._c)

    def radius(self) -> int:
        return max((abs(k) for k in self._c), default=0)

    def is_zero(self) -> bool:
        return not self._c

    def is_exact(self) -> bool:
        return poly.is_exact(self._c.values())

    def is_self_adjoint(self, tol: float = 0.0) -> bool:
        """Real coefficients with ``c_k = c_{-k}`` (a real function on the circle)."""
        for k, v in self._c.items():
            if isinstance(v, complex) and v.imag != 0:
                return False
            if abs(v - self[-k]) > tol:
                return False
        return True

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({format_symbol(self)})"

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out: dict = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, z):
        """Evaluate at complex ``z`` (scalar or array)."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for k, v in self._c.items():
            acc = acc + complex(v) * z**k
        return acc

    def on_circle(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        acc = np.zeros(theta.shape, dtype=complex)
        for k, v in self._c.items():
            acc += complex(v) * np.exp(1j * k * theta)
        return acc

    def derivative_on_circle(self, theta) -> np.ndarray:
        """``d/dθ p(e^{iθ})``."""
        theta = np.asarray(theta, dtype=float)
        acc = np.zeros(theta.shape, dtype=complex)
        for k, v in self._c.items():
            acc += 1j * k * complex(v) * np.exp(1j * k * theta)
        return acc

    def to_float(self) -> "LaurentPoly":
        return LaurentPoly({k: float(v) for k, v in self._c.items()})

    def to_json(self) -> dict:
        return {str(k): _json_number(self._c[k]) for k in sorted(self._c)}

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> "LaurentPoly":
        return cls({int(k): _from_json_number(v) for k, v in data.items()})


def _coerce(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x)


def _json_number(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


def _from_json_number(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def chebyshev_symbol() -> LaurentPoly:
    """``(z + 1/z)/2``, the right-limit symbol of the free Jacobi matrix."""
    return LaurentPoly({-1: Fraction(1, 2), 1: Fraction(1, 2)})


# ---------------------------------------------------------------------------
# Text form "{-1: 1, 0: 3}"

_ENTRY = re.compile(r"\s*([+-]?\d+)\s*:\s*([^,}]+?)\s*(,|})")


def parse_symbol(text: str) -> LaurentPoly:
    """Parse ``"{-1: 1, 0: 3, 1: 3, 2: 1}"``; coefficients may be ``1/2`` or ``0.25``."""
    s = text.strip()
    if not s.startswith("{"):
        raise ParseError("symbol must start with '{'", text, len(text) - len(text.lstrip()))
    offset = text.index("{") + 1
    if s == "{}":
        return LaurentPoly()
    pos = offset
    coeffs: dict = {}
    while True:
        m = _ENTRY.match(text, pos)
        if m is None:
            raise ParseError("expected 'degree: coefficient'", text, pos)
        k = int(m.group(1))
        if k in coeffs:
            raise ParseError(f"duplicate degree {k}", text, m.start(1))
        try:
            c = poly.parse_number(m.group(2))
        except ParseError as exc:
            raise ParseError("bad coefficient", text, m.start(2) + exc.position) from None
        coeffs[k] = int(c) if c.denominator == 1 else c
        pos = m.end()
        if m.group(3) == "}":
            break
    if text[pos:].strip():
        raise ParseError("trailing characters", text, pos)
    return LaurentPoly(coeffs)


def format_symbol(p: LaurentPoly) -> str:
    items = []
    for k in p.support():
        v = p[k]
        items.append(f"{k}: {v}")
    return "{" + ", ".join(items) + "}"


# ---------------------------------------------------------------------------
# Composition and Fourier data

def compose(F: Sequence[Number], s: LaurentPoly) -> LaurentPoly:
    """``F(s)`` by Horner's scheme in the Laurent ring."""
    acc = LaurentPoly.constant(F[-1])
    for c in reversed(F[:-1]):
        acc = acc * s + c
    return acc


def fourier_coeff(p: LaurentPoly, k: int, quadrature_points: Optional[int] = None) -> Number:
    """Coefficient of ``z^k``.

    With ``quadrature_points`` the value is recomputed by the trapezoid rule on
    the unit circle and returned as a float; the rule is exact once the point
    count exceeds the width of the support.
    """
    if quadrature_points is None:
        return p[k]
    M = quadrature_points
    theta = 2 * np.pi * np.arange(M) / M
    val = np.mean(p.on_circle(theta) * np.exp(-1j * k * theta))
    return val.real if abs(val.imag) < 1e-12 else val


def variance_fourier(F: Sequence[Number], s: LaurentPoly) -> Number:
    """``Σ_{k≥1} k F(s)_k F(s)_{-k}``; exact for rational input."""
    p = compose(F, s)
    return sum((k * p[k] * p[-k] for k in p.support() if k > 0), 0)


def variance_devinatz(F: Sequence[Number], s: LaurentPoly, grid: int = 512) -> float:
    """Double integral of the squared difference quotient of ``F(s(e^{iθ}))``.

    Trapezoid rule on the torus; the diagonal takes the limit value
    ``|d/dθ F(s(e^{iθ}))|^2``.  The integrand is a trigonometric polynomial, so
    the rule is exact up to rounding once ``grid`` exceeds its degree.
    """
    if not s.is_self_adjoint():
        raise ValueError("devinatz requires self-adjoint symbol")
    g = compose(F, s)
    theta = 2 * np.pi * np.arange(grid) / grid
    vals = g.on_circle(theta).real
    dvals = g.derivative_on_circle(theta)
    z = np.exp(1j * theta)
    num = vals[:, None] - vals[None, :]
    den = z[:, None] - z[None, :]
    np.fill_diagonal(den, 1.0)
    q = np.abs(num / den) ** 2
    np.fill_diagonal(q, np.abs(dvals) ** 2)
    h = 2 * np.pi / grid
    return float(q.sum() * h * h / (8 * np.pi**2))


def chebyshev_coefficients(F: Sequence[Number]) -> list:
    """``c_k(F)`` with ``F = c_0/2 + Σ_{k≥1} c_k T_k``, computed exactly.

    Uses ``x T_0 = T_1`` and ``x T_k = (T_{k+1} + T_{k-1})/2``.
    """
    half = Fraction(1, 2) if poly.is_exact(F) else 0.5
    a: list = [F[-1]]  # F = Σ a_k T_k during Horner
    for c in reversed(F[:-1]):
        b = [0] * (len(a) + 1)
        for k, v in enumerate(a):
            if k == 0:
                b[1] += v
            else:
                b[k + 1] += v * half
                b[k - 1] += v * half
        b[0] += c
        a = b
    out = [2 * a[0]] + a[1:]
    return list(poly.normalize(out))


def sigma_chebyshev(F: Sequence[Number]) -> Number:
    """``(1/4) Σ k c_k(F)^2``."""
    c = chebyshev_coefficients(F)
    total = sum((k * c[k] * c[k] for k in range(1, len(c))), 0)
    return total * Fraction(1, 4) if poly.is_exact(F) else total / 4


def variance_h12(F: Sequence[Number], grid: int = 256) -> float:
    """Weighted double integral over ``[-1,1]^2`` with Gauss–Chebyshev nodes.

    The Chebyshev weight absorbs ``1/sqrt(1-x^2)``; what remains,
    ``|ΔF/Δx|^2 (1 - xy)``, is a polynomial, so the rule is exact for
    ``grid > deg F``.
    """
    j = np.arange(1, grid + 1)
    x = np.cos((2 * j - 1) * np.pi / (2 * grid))
    Ff = poly.to_float(F)
    fx = poly.evaluate(Ff, x)
    dfx = poly.evaluate(poly.derivative(Ff), x)
    num = fx[:, None] - fx[None, :]
    den = x[:, None] - x[None, :]
    np.fill_diagonal(den, 1.0)
    q = (num / den) ** 2
    np.fill_diagonal(q, dfx**2)
    q *= 1.0 - x[:, None] * x[None, :]
    w = np.pi / grid
    return float(q.sum() * w * w / (4 * np.pi**2))


def variance_upper_bound(f, grid: int = 256, fprime=None) -> float:
    """``(4/π^2) ∬ |(f(x)-f(y))/(x-y)|^2 dx dy / (sqrt(1-x^2) sqrt(1-y^2))``.

    ``f`` is a coefficient tuple or a vectorized callable on ``[-1, 1]``.  For
    callables without ``fprime`` the diagonal uses a central difference.
    """
    j = np.arange(1, grid + 1)
    x = np.cos((2 * j - 1) * np.pi / (2 * grid))
    if callable(f):
        fx = np.asarray(f(x), dtype=float)
        if fprime is not None:
            dfx = np.asarray(fprime(x), dtype=float)
        else:
            h = 1e-6
            dfx = (np.asarray(f(x + h), dtype=float) - np.asarray(f(x - h), dtype=float)) / (2 * h)
    else:
        Ff = poly.to_float(f)
        fx = poly.evaluate(Ff, x)
        dfx = poly.evaluate(poly.derivative(Ff), x)
    num = fx[:, None] - fx[None, :]
    den = x[:, None] - x[None, :]
    np.fill_diagonal(den, 1.0)
    q = (num / den) ** 2
    np.fill_diagonal(q, dfx**2)
    w = np.pi / grid
    return float(q.sum() * w * w * 4 / np.pi**2)


def sigma_chebyshev_function(f, degree: int = 64) -> float:
    """``(1/4) Σ k c_k^2`` for a smooth callable, via its Chebyshev interpolant.

    Reads the coefficients straight from the interpolant (no monomial
    round-trip, which is ill-conditioned at high degree).
    """
    cheb = np.polynomial.chebyshev.chebinterpolate(f, degree)
    k = np.arange(len(cheb))
    return float(np.sum(k * cheb**2) / 4)


def kernel_identity(theta: float, phi: float) -> tuple[float, float]:
    """Both sides of the circle-to-interval kernel simplification."""
    lhs = 1 / abs(np.exp(1j * theta) - np.exp(1j * phi)) ** 2 + 1 / abs(np.exp(1j * theta) - np.exp(-1j * phi)) ** 2
    rhs = (1 - math.cos(theta) * math.cos(phi)) / (math.cos(theta) - math.cos(phi)) ** 2
    return float(lhs), float(rhs)


def symbol_power_via_paths(s: LaurentPoly, n: int) -> LaurentPoly:
    """``s^n`` as a sum of weighted length-``n`` paths ``0 -> j`` on the Laurent graph.

    A step from ``u`` to ``v`` carries weight ``L_{vu} = s_{v-u}``.
    """
    if n < 1:
        raise ValueError("power must be at least 1")
    steps = s.support()
    out: dict = {}
    for walk in itertools.product(steps, repeat=n):
        w = 1
        for d in walk:
            w = w * s[d]
        j = sum(walk)
        out[j] = out.get(j, 0) + w
    return LaurentPoly(out)


def h12_norm(f: LaurentPoly) -> Number:
    """``Σ |n| |f_n|^2``."""
    return sum((abs(k) * abs(f[k]) ** 2 for k in f.support()), 0)


@dataclass
class VarianceReport:
    fourier_value: Number
    devinatz_value: Optional[float] = None
    chebyshev_value: Optional[Number] = None
    h12_value: Optional[float] = None
    negative: bool = False
    max_pairwise_gap: float = field(init=False)

    def __post_init__(self):
        vals = [float(v) for v in self.values()]
        self.max_pairwise_gap = max(vals) - min(vals) if vals else 0.0
        self.negative = float(self.fourier_value) < 0

    def values(self) -> list:
        return [v for v in (self.fourier_value, self.devinatz_value, self.chebyshev_value, self.h12_value) if v is not None]

    def to_json(self) -> dict:
        return {
            "fourier_value": _json_number(self.fourier_value),
            "devinatz_value": self.devinatz_value,
            "chebyshev_value": _json_number(self.chebyshev_value),
            "h12_value": self.h12_value,
            "max_pairwise_gap": self.max_pairwise_gap,
            "negative": self.negative,
        }


def variance_report(F: Sequence[Number], s: LaurentPoly, devinatz_grid: int = 512, h12_grid: int = 256) -> VarianceReport:
    """All applicable variance formulas for ``F`` on symbol ``s``.

    The interval formulas only apply to the Chebyshev symbol ``(z+1/z)/2``;
    the torus formula only to self-adjoint symbols.
    """
    fv = variance_fourier(F, s)
    dv = variance_devinatz(F, s, devinatz_grid) if s.is_self_adjoint() else None
    cv = hv = None
    if s == chebyshev_symbol() or s.to_float() == chebyshev_symbol().to_float():
        cv = sigma_chebyshev(F)
        hv = variance_h12(F, h12_grid)
    return VarianceReport(fv, dv, cv, hv)
