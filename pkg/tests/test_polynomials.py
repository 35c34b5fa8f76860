from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from boefluct import polynomials as poly
from boefluct.polynomials import ParseError


def test_parse_rational_coefficients():
    assert poly.parse_polynomial("x^2 - 1/2") == (Fraction(-1, 2), 0, 1)


def test_parse_chebyshev_shorthand():
    assert poly.parse_polynomial("T2") == (-1, 0, 2)
    assert poly.parse_polynomial("T3") == (0, -3, 0, 4)


@pytest.mark.parametrize("text, expected", [
    ("x^3 - x", (0, -1, 0, 1)),
    ("x**2", (0, 0, 1)),
    ("(x+1)^2", (1, 2, 1)),
    ("2*x*x - 3", (-3, 0, 2)),
    ("-x", (0, -1)),
    ("x/2", (0, Fraction(1, 2))),
    ("0.25*x", (0, Fraction(1, 4))),
    ("7", (7,)),
])
def test_parse_examples(text, expected):
    assert poly.parse_polynomial(text) == expected


@pytest.mark.parametrize("text", ["x^", "x + * 2", "(x", "y", "x/x", "x/0", "", "x^-1"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as err:
        poly.parse_polynomial(text)
    assert err.value.position >= 0


def test_chebyshev_recurrence():
    x = np.linspace(-1, 1, 11)
    for k in range(8):
        np.testing.assert_allclose(poly.evaluate(poly.to_float(poly.chebyshev_t(k)), x),
                                   np.cos(k * np.arccos(x)), atol=1e-12)


def test_matrix_polynomial_matches_powers():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(5, 5))
    F = (1.0, -2.0, 0.5, 3.0)
    expected = F[0] * np.eye(5) + F[1] * A + F[2] * A @ A + F[3] * A @ A @ A
    np.testing.assert_allclose(poly.matrix_polynomial(F, A), expected, atol=1e-12)


def test_matrix_polynomial_exact():
    A = np.array([[Fraction(0), Fraction(1, 2)], [Fraction(1, 2), Fraction(0)]], dtype=object)
    R = poly.matrix_polynomial((0, 0, 1), A)
    assert R[0, 0] == Fraction(1, 4) and R[0, 1] == 0


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.lists(rationals, min_size=1, max_size=7))
def test_format_parse_round_trip(coeffs):
    F = poly.normalize(coeffs)
    assert poly.parse_polynomial(poly.format_polynomial(F)) == F


@given(st.lists(rationals, min_size=1, max_size=4), st.lists(rationals, min_size=1, max_size=4), rationals)
def test_multiply_is_evaluation_homomorphism(F, G, t):
    assert poly.evaluate(poly.multiply(F, G), t) == poly.evaluate(F, t) * poly.evaluate(G, t)
