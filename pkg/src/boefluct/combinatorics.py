"""Composition calculus and exact verifiers for the random-walk identities.

Everything here runs in ``fractions.Fraction``; the identities are exact
cancellations and floating point would hide a wrong sign.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import polynomials as poly

PERMUTATION_CAP = 8


@dataclass(frozen=True)
class Composition:
    """A checkpoint set ``n_1 < ... < n_l < n`` together with its parts ``k``."""

    n: int
    checkpoints: tuple
    parts: tuple

    @property
    def ell(self) -> int:
        return len(self.checkpoints)

    @classmethod
    def from_checkpoints(cls, n: int, checkpoints: Sequence[int]) -> "Composition":
        cps = tuple(checkpoints)
        if not cps or any(b <= a for a, b in zip(cps, cps[1:])) or cps[0] < 1 or cps[-1] >= n:
            raise ValueError(f"invalid checkpoints {cps} for n={n}")
        return cls(n, cps, psi_inverse(n, cps))

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Composition":
        ks = tuple(parts)
        if len(ks) < 2 or any(k < 1 for k in ks):
            raise ValueError("a composition in Λ_n has at least two positive parts")
        return cls(sum(ks), psi(ks), ks)


def psi(parts: Sequence[int]) -> tuple:
    """Parts ``(k_1, ..., k_{l+1})`` to checkpoints ``(k_1, k_1+k_2, ...)``."""
    return tuple(itertools.accumulate(parts))[:-1]


def psi_inverse(n: int, checkpoints: Sequence[int]) -> tuple:
    edges = (0, *checkpoints, n)
    return tuple(b - a for a, b in zip(edges, edges[1:]))


@lru_cache(maxsize=None)
def lambda_n(n: int) -> tuple:
    """All ``2^(n-1) - 1`` elements of ``Λ_n``, by size then lexicographically."""
    if n < 2:
        return ()
    out = []
    for size in range(1, n):
        for cps in itertools.combinations(range(1, n), size):
            out.append(Composition(n, cps, psi_inverse(n, cps)))
    return tuple(out)


def multinomial(parts: Sequence[int]) -> int:
    out = math.factorial(sum(parts))
    for k in parts:
        out //= math.factorial(k)
    return out


def mho(c: Composition) -> Fraction:
    """``Ω = (-1)^(l+1)/(l+1) · n!/(k_1! ... k_{l+1}!)``."""
    ell = c.ell
    return Fraction((-1) ** (ell + 1), ell + 1) * multinomial(c.parts)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def g_n(x: Sequence) -> Fraction:
    """``Σ_{Λ_n} Ω · max{0, partial sums at the checkpoints}``."""
    x = [_frac(v) for v in x]
    n = len(x)
    if n < 2:
        raise ValueError("G_n needs n >= 2")
    partial = list(itertools.accumulate(x))
    total = Fraction(0)
    for c in lambda_n(n):
        m = max(Fraction(0), *(partial[k - 1] for k in c.checkpoints))
        if m:
            total += mho(c) * m
    return total


def _require_zero_sum(x: Sequence[Fraction]) -> None:
    if sum(x) != 0:
        raise ValueError("zero-sum required")


def _check_cap(n: int) -> None:
    if n > PERMUTATION_CAP:
        raise ValueError(f"permutation sums are capped at n <= {PERMUTATION_CAP}")


def mcl_symmetrized(x: Sequence) -> Fraction:
    """``Σ_σ G_n(x_σ)``: equals ``|x_1|`` for ``n = 2`` and ``0`` for ``n >= 3``."""
    x = [_frac(v) for v in x]
    _require_zero_sum(x)
    _check_cap(len(x))
    return sum((g_n(p) for p in itertools.permutations(x)), Fraction(0))


def m_max(x: Sequence) -> Fraction:
    """``max{x_1, x_1+x_2, ..., x_1+...+x_n}``."""
    return max(itertools.accumulate(_frac(v) for v in x))


def _pos(u: Fraction) -> Fraction:
    return u if u > 0 else Fraction(0)


def dhk_both_sides(x: Sequence) -> tuple[Fraction, Fraction]:
    """``Σ_σ m(0, x_σ)`` against ``Σ_k (1/k) Σ_σ (x_σ(1)+...+x_σ(k))^+``."""
    x = [_frac(v) for v in x]
    _check_cap(len(x))
    n = len(x)
    lhs = rhs = Fraction(0)
    for p in itertools.permutations(x):
        lhs += m_max((0, *p))
        partial = list(itertools.accumulate(p))
        for k in range(1, n + 1):
            rhs += _pos(partial[k - 1]) / k
    return lhs, rhs


def rs_both_sides(x: Sequence) -> tuple[Fraction, Fraction]:
    """``Σ_σ m(x_σ)`` against ``(n/4) Σ_F (|F|-1)!(n-|F|-1)! |Σ_F x|`` for zero-sum ``x``."""
    x = [_frac(v) for v in x]
    _require_zero_sum(x)
    _check_cap(len(x))
    n = len(x)
    lhs = sum((m_max(p) for p in itertools.permutations(x)), Fraction(0))
    rhs = Fraction(0)
    for size in range(1, n):
        w = math.factorial(size - 1) * math.factorial(n - size - 1)
        for F in itertools.combinations(range(n), size):
            rhs += w * abs(sum(x[i] for i in F))
    return lhs, rhs * Fraction(n, 4)


def spitzer_check(distribution: Sequence[tuple], n: int) -> tuple[Fraction, Fraction]:
    """Exact ``E[max(S_0..S_n)]`` against ``Σ_k E[S_k^+]/k`` for an i.i.d. walk.

    Both sides are computed by propagating the exact law of the walk (joint law
    of ``(S_k, max)`` for the left side), so cost grows with the number of
    reachable values rather than ``|support|^n``.
    """
    dist = [(_frac(v), _frac(p)) for v, p in distribution]
    if sum(p for _, p in dist) != 1:
        raise ValueError("probabilities must sum to 1")
    if any(p < 0 for _, p in dist):
        raise ValueError("probabilities must be nonnegative")
    if n < 1:
        raise ValueError("n must be positive")
    joint = {(Fraction(0), Fraction(0)): Fraction(1)}
    rhs = Fraction(0)
    for k in range(1, n + 1):
        nxt: dict = {}
        for (s, m), p in joint.items():
            for v, q in dist:
                if q == 0:
                    continue
                s2 = s + v
                key = (s2, max(m, s2))
                nxt[key] = nxt.get(key, Fraction(0)) + p * q
        joint = nxt
        marg: dict = {}
        for (s, _), p in joint.items():
            marg[s] = marg.get(s, Fraction(0)) + p
        rhs += sum((_pos(s) * p for s, p in marg.items()), Fraction(0)) / k
    lhs = sum((m * p for (_, m), p in joint.items()), Fraction(0))
    return lhs, rhs


def compositions(n: int, parts: int) -> Iterable[tuple]:
    """All ordered ways to write ``n`` as ``parts`` positive integers."""
    for cuts in itertools.combinations(range(1, n), parts - 1):
        yield psi_inverse(n, cuts)


def mobius_identity(n: int) -> Fraction:
    """``Σ_l ((-1)^(l+1)/l) Σ_{k_1+...+k_l=n} n!/(k_1!...k_l!)``, which is ``1_{n=1}``."""
    if n < 1:
        raise ValueError("n must be positive")
    total = Fraction(0)
    for ell in range(1, n + 1):
        inner = sum(multinomial(k) for k in compositions(n, ell))
        total += Fraction((-1) ** (ell + 1), ell) * inner
    return total


def binomial_identity_check(R: Sequence, n: int) -> tuple[Fraction, Fraction]:
    """``Σ_k (-1)^(n-k) C(n,k) R(k)`` against ``R^(n)(0)`` for ``deg R <= n``."""
    R = poly.normalize([_frac(c) for c in R])
    if n < 0:
        raise ValueError("n must be nonnegative")
    if poly.degree(R) > n:
        raise ValueError("degree exceeds order")
    lhs = sum((Fraction((-1) ** (n - k) * math.comb(n, k)) * poly.evaluate(R, Fraction(k)) for k in range(n + 1)),
              Fraction(0))
    rhs = Fraction(math.factorial(n)) * (R[n] if n < len(R) else 0)
    return lhs, rhs


def sign_reversal_both_sides(x: Sequence) -> tuple[Fraction, Fraction]:
    """``Σ_σ m(-x_σ)`` and ``Σ_σ m(x_σ)``; equal when ``Σ x = 0``."""
    x = [_frac(v) for v in x]
    _check_cap(len(x))
    a = sum((m_max([-v for v in p]) for p in itertools.permutations(x)), Fraction(0))
    b = sum((m_max(p) for p in itertools.permutations(x)), Fraction(0))
    return a, b


def certificate(identity: str, n: int, inp, lhs, rhs) -> dict:
    """JSON-ready record ``{identity, n, input, lhs, rhs, equal}``."""
    return {
        "identity": identity,
        "n": n,
        "input": [str(v) if isinstance(v, Fraction) else v for v in inp] if isinstance(inp, (list, tuple)) else inp,
        "lhs": str(lhs),
        "rhs": str(rhs),
        "equal": lhs == rhs,
    }
