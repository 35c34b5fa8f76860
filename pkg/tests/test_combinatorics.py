import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from boefluct import combinatorics as comb
from boefluct.combinatorics import Composition

F = Fraction


def test_lambda_small():
    assert [c.checkpoints for c in comb.lambda_n(2)] == [(1,)]
    assert [c.checkpoints for c in comb.lambda_n(3)] == [(1,), (2,), (1, 2)]
    assert len(comb.lambda_n(5)) == 15
    assert comb.lambda_n(1) == ()


@pytest.mark.parametrize("n", range(2, 11))
def test_psi_bijection(n):
    seen = set()
    for c in comb.lambda_n(n):
        assert comb.psi(c.parts) == c.checkpoints
        assert comb.psi_inverse(n, c.checkpoints) == c.parts
        assert sum(c.parts) == n
        seen.add(c.parts)
    # every composition of n with at least two parts appears once
    assert len(seen) == 2 ** (n - 1) - 1


def test_composition_validation():
    with pytest.raises(ValueError):
        Composition.from_checkpoints(3, (2, 1))
    with pytest.raises(ValueError):
        Composition.from_checkpoints(3, (3,))
    with pytest.raises(ValueError):
        Composition.from_parts((3,))


def test_mho_examples():
    assert comb.mho(Composition.from_checkpoints(2, (1,))) == 1
    assert comb.mho(Composition.from_checkpoints(3, (1,))) == F(3, 2)
    assert comb.mho(Composition.from_checkpoints(3, (1, 2))) == -2


@pytest.mark.parametrize("n", range(2, 9))
def test_weight_mass_bound(n):
    assert sum(abs(comb.mho(c)) for c in comb.lambda_n(n)) <= math.factorial(n) * 2**n


def test_g_examples():
    assert comb.g_n([3, -3]) == 3
    assert comb.g_n([1, 1, -2]) == F(1, 2)
    assert comb.g_n([-2, 1, 1]) == 0


def test_mcl_examples():
    assert comb.mcl_symmetrized([5, -5]) == 5
    assert comb.mcl_symmetrized([1, 1, -2]) == 0
    assert comb.mcl_symmetrized([2, 3, -1, -4]) == 0
    with pytest.raises(ValueError, match="zero-sum required"):
        comb.mcl_symmetrized([1, 2])


def zero_sum(min_size, max_size):
    return st.lists(st.fractions(-5, 5, max_denominator=6), min_size=min_size - 1, max_size=max_size - 1).map(
        lambda xs: xs + [-sum(xs, F(0))])


@settings(max_examples=60, deadline=None)
@given(zero_sum(2, 6))
def test_mcl_property(x):
    expected = abs(x[0]) if len(x) == 2 else 0
    assert comb.mcl_symmetrized(x) == expected


def test_dhk_examples():
    assert comb.dhk_both_sides([1, -1]) == (1, 1)
    assert comb.dhk_both_sides([0, 0, 0]) == (0, 0)
    lhs, rhs = comb.dhk_both_sides([2, -1, -1])
    assert lhs == rhs


def _dhk_brute(x):
    # independent form: max over prefixes of each permutation, including the empty prefix
    lhs = sum(max([F(0)] + [sum(p[:k], F(0)) for k in range(1, len(p) + 1)]) for p in itertools.permutations(x))
    return lhs


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(-5, 5, max_denominator=6), min_size=1, max_size=6))
def test_dhk_property(x):
    lhs, rhs = comb.dhk_both_sides(x)
    assert lhs == rhs == _dhk_brute(x)


def test_rs_examples():
    assert comb.rs_both_sides([1, -1]) == (1, 1)
    assert comb.rs_both_sides([0, 0, 0]) == (0, 0)
    lhs, rhs = comb.rs_both_sides([3, -1, -2])
    assert lhs == rhs
    with pytest.raises(ValueError):
        comb.rs_both_sides([1, 1])


@settings(max_examples=50, deadline=None)
@given(zero_sum(2, 6))
def test_rs_property(x):
    lhs, rhs = comb.rs_both_sides(x)
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(zero_sum(2, 6))
def test_sign_reversal(x):
    a, b = comb.sign_reversal_both_sides(x)
    assert a == b


def test_spitzer_examples():
    walk = [(1, F(1, 2)), (-1, F(1, 2))]
    assert comb.spitzer_check(walk, 2) == (F(3, 4), F(3, 4))
    assert comb.spitzer_check([(0, 1)], 5) == (0, 0)
    lhs, rhs = comb.spitzer_check(walk, 3)
    assert lhs == rhs
    with pytest.raises(ValueError, match="sum to 1"):
        comb.spitzer_check([(1, F(1, 3))], 2)


def _spitzer_brute(dist, n):
    total = F(0)
    for steps in itertools.product(dist, repeat=n):
        p = math.prod((q for _, q in steps), start=F(1))
        partial = list(itertools.accumulate((v for v, _ in steps), initial=F(0)))
        total += p * max(partial)
    return total


@st.composite
def distributions(draw):
    k = draw(st.integers(1, 3))
    values = draw(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=k, max_size=k))
    weights = draw(st.lists(st.integers(1, 5), min_size=k, max_size=k))
    total = sum(weights)
    return [(v, F(w, total)) for v, w in zip(values, weights)]


@settings(max_examples=40, deadline=None)
@given(distributions(), st.integers(1, 5))
def test_spitzer_property(dist, n):
    lhs, rhs = comb.spitzer_check(dist, n)
    assert lhs == rhs == _spitzer_brute(dist, n)


def test_mobius():
    assert comb.mobius_identity(1) == 1
    assert comb.mobius_identity(2) == 0
    assert all(comb.mobius_identity(n) == 0 for n in range(2, 9))


def test_binomial_examples():
    assert comb.binomial_identity_check([1], 0) == (1, 1)
    assert comb.binomial_identity_check([0, 0, 1], 2) == (2, 2)
    assert comb.binomial_identity_check([1, -3, 3, -1], 3) == (-6, -6)
    with pytest.raises(ValueError, match="degree exceeds order"):
        comb.binomial_identity_check([0, 0, 1], 1)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(-5, 5, max_denominator=5), min_size=1, max_size=7), st.integers(0, 6))
def test_binomial_property(R, extra):
    n = len(R) - 1 + extra
    lhs, rhs = comb.binomial_identity_check(R, n)
    assert lhs == rhs


def test_binomial_cancellation_pattern():
    # Σ_i (-1)^i C(k+1, i) (1 - i)^s vanishes below s = k + 1
    for k in range(0, 5):
        for s in range(0, k + 1):
            R = [F(math.comb(s, j)) * (-1) ** j for j in range(s + 1)]  # (1 - x)^s
            lhs, rhs = comb.binomial_identity_check(R, k + 1)
            assert lhs == rhs == 0


def test_certificate_shape():
    cert = comb.certificate("dhk", 2, [F(1), F(-1)], F(1), F(1))
    assert set(cert) == {"identity", "n", "input", "lhs", "rhs", "equal"}
    assert cert["equal"] is True
