"""Real polynomials as ascending coefficient tuples, plus a small exact parser.

A polynomial ``F(x) = c_0 + c_1 x + ... + c_d x^d`` is stored as the tuple
``(c_0, ..., c_d)``.  Coefficients are ``int``/``Fraction`` when exact and
``float`` otherwise; every helper here preserves that distinction.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

import numpy as np

Number = Union[int, Fraction, float]
Poly = tuple


class ParseError(ValueError):
    """Raised for malformed polynomial or symbol text; carries the offset."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


def normalize(coeffs: Sequence[Number]) -> Poly:
    """Strip trailing zeros; the zero polynomial is ``(0,)``."""
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


def degree(F: Sequence[Number]) -> int:
    F = normalize(F)
    return 0 if F == (0,) else len(F) - 1


def is_exact(F: Sequence[Number]) -> bool:
    return all(isinstance(c, Rational) for c in F)


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12) if x != int(x) else Fraction(int(x))
    return Fraction(x)


def add(F: Sequence[Number], G: Sequence[Number]) -> Poly:
    n = max(len(F), len(G))
    return normalize([(F[i] if i < len(F) else 0) + (G[i] if i < len(G) else 0) for i in range(n)])


def scale(F: Sequence[Number], a: Number) -> Poly:
    return normalize([a * c for c in F])


def multiply(F: Sequence[Number], G: Sequence[Number]) -> Poly:
    out: list = [0] * (len(F) + len(G) - 1)
    for i, a in enumerate(F):
        if a == 0:
            continue
        for j, b in enumerate(G):
            out[i + j] += a * b
    return normalize(out)


def power(F: Sequence[Number], n: int) -> Poly:
    out: Poly = (1,)
    for _ in range(n):
        out = multiply(out, F)
    return out


def derivative(F: Sequence[Number]) -> Poly:
    return normalize([k * F[k] for k in range(1, len(F))]) if len(F) > 1 else (0,)


def evaluate(F: Sequence[Number], x):
    """Horner evaluation; ``x`` may be a scalar or a numpy array (elementwise)."""
    acc = 0 * x + F[-1]
    for c in reversed(F[:-1]):
        acc = acc * x + c
    return acc


def matrix_polynomial(F: Sequence[Number], A: np.ndarray) -> np.ndarray:
    """Evaluate ``F(A)`` for a square array by Horner's scheme.

    Works for float and object (``Fraction``) arrays alike.
    """
    n = A.shape[0]
    if A.dtype == object:
        eye = np.empty((n, n), dtype=object)
        eye[...] = Fraction(0)
        for i in range(n):
            eye[i, i] = Fraction(1)
    else:
        eye = np.eye(n, dtype=A.dtype)
    R = eye * F[-1]
    for c in reversed(F[:-1]):
        R = R @ A + eye * c
    return R


def chebyshev_t(k: int) -> Poly:
    """Exact coefficients of the Chebyshev polynomial of the first kind."""
    if k < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    prev, cur = (Fraction(1),), (Fraction(0), Fraction(1))
    if k == 0:
        return normalize(prev)
    for _ in range(k - 1):
        prev, cur = cur, add(scale(multiply((0, 2), cur), 1), scale(prev, -1))
    return normalize(cur)


def to_float(F: Sequence[Number]) -> Poly:
    return tuple(float(c) for c in F)


# ---------------------------------------------------------------------------
# Text <-> polynomial

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<cheb>T\d+)|(?P<var>x)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unexpected character", text, pos + (len(text[pos:]) - len(text[pos:].lstrip())))
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    # expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)*
    # unary := ('-'|'+') unary | power ; power := atom (('^'|'**') integer)?
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = add(p, q if op == "+" else scale(q, -1))
        return p

    def term(self):
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            pos = self.peek()[2]
            q = self.unary()
            if op == "*":
                p = multiply(p, q)
            else:
                if degree(q) > 0 or q[0] == 0:
                    raise ParseError("division by a non-constant or zero", self.text, pos)
                p = scale(p, Fraction(1) / q[0])
        return p

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return scale(self.unary(), -1)
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num" or not val.isdigit():
                raise ParseError("exponent must be a nonnegative integer", self.text, pos)
            base = power(base, int(val))
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return (Fraction(val),)
        if kind == "var":
            return (Fraction(0), Fraction(1))
        if kind == "cheb":
            return chebyshev_t(int(val[1:]))
        if val == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return p
        raise ParseError("expected a number, 'x', 'T<k>' or '('", self.text, pos)


def parse_polynomial(text: str) -> Poly:
    """Parse ``"x^3 - x"``, ``"T3"``, ``"x^2 - 1/2"``... into exact coefficients.

    Integer-valued coefficients come back as ``int``.
    """
    p = _Parser(text).parse()
    return normalize([int(c) if c.denominator == 1 else c for c in p])


def format_polynomial(F: Sequence[Number]) -> str:
    """Inverse of :func:`parse_polynomial` for exact coefficients."""
    F = normalize(F)
    terms = []
    for k in range(len(F) - 1, -1, -1):
        c = F[k]
        if c == 0:
            continue
        c = as_fraction(c) if not isinstance(c, float) else c
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = f"{mag}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def parse_number(text: str) -> Fraction:
    p = _Parser(text).parse()
    if degree(p) > 0:
        raise ParseError("expected a constant", text, 0)
    return p[0]
