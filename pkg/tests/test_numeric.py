import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.core.errors import DomainError, InvariantViolation
from src.core.numeric import (
    ExactPoly,
    as_integer,
    binomial,
    catalan,
    exact_div,
    harmonic,
    lagrange_interpolate,
    narayana,
)


def test_binomial_out_of_range_is_zero():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(5, -1) == 0
    with pytest.raises(DomainError):
        binomial(-1, 0)


@given(st.integers(min_value=0, max_value=60), st.integers(min_value=0, max_value=60))
def test_binomial_symmetry(m, k):
    if k <= m:
        assert binomial(m, k) == binomial(m, m - k)
    else:
        assert binomial(m, k) == 0


def test_catalan_values():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert catalan(15) == 9694845


@given(st.integers(min_value=1, max_value=40))
def test_catalan_convolution(n):
    """C_n = sum_k C_k C_(n-1-k)"""
    assert catalan(n) == sum(catalan(k) * catalan(n - 1 - k) for k in range(n))


def test_narayana_rows_sum_to_catalan():
    assert [narayana(4, k) for k in range(1, 5)] == [1, 6, 6, 1]
    assert sum(narayana(7, k) for k in range(1, 8)) == 429
    with pytest.raises(DomainError):
        narayana(3, 4)


def test_harmonic():
    assert harmonic(1) == 1
    assert harmonic(3) == Fraction(11, 6)


def test_exact_division_guards():
    assert as_integer(Fraction(6, 3)) == 2
    assert exact_div(12, 4) == 3
    with pytest.raises(InvariantViolation):
        as_integer(Fraction(1, 2))
    with pytest.raises(DomainError):
        exact_div(1, 0)


def test_poly_arithmetic_and_format():
    p = ExactPoly.linear(Fraction(2, 3), Fraction(-1, 3))
    assert p.degree() == 1
    assert p.evaluate(2) == 1
    assert p(5) == 3
    assert p.format("n") == "2/3*n - 1/3"
    assert (p - p).is_zero()
    assert ExactPoly((0, 0)).degree() == -1
    assert ExactPoly().format() == "0"

    square = p * p
    assert square.leading_coefficient() == Fraction(4, 9)
    assert (3 * p).coefficient(0) == -1


def test_poly_derivative_and_shift():
    # x^3 - x
    p = ExactPoly((0, -1, 0, 1))
    assert p.differentiate() == ExactPoly((-1, 0, 3))
    assert p.differentiate(2) == ExactPoly((0, 6))
    # p(1 + h) = h^3 + 3h^2 + 2h
    assert p.shift(1) == ExactPoly((0, 2, 3, 1))


small_fractions = st.fractions(min_value=-10, max_value=10, max_denominator=20)


@given(st.lists(small_fractions, max_size=6), small_fractions, small_fractions.filter(lambda h: h != 0))
def test_shift_agrees_with_difference_quotient(coeffs, a, h):
    """(p(a + h) - p(a)) / h 去掉常数项后就是 shift 结果除以 h；在 h = 0 处等于 p'(a)"""
    p = ExactPoly(tuple(coeffs))
    shifted = p.shift(a)
    quotient = ExactPoly(shifted.coeffs[1:])
    assert shifted.coefficient(0) == p.evaluate(a)
    assert quotient.evaluate(h) == (p.evaluate(a + h) - p.evaluate(a)) / h
    assert quotient.evaluate(0) == p.differentiate().evaluate(a)
    for k in range(len(coeffs)):
        assert shifted.coefficient(k) * math.factorial(k) == p.differentiate(k).evaluate(a)


def test_lagrange_recovers_quadratic():
    target = ExactPoly((Fraction(9, 8), Fraction(-13, 4), Fraction(13, 8)))
    points = [(n, target.evaluate(n)) for n in (4, 5, 6)]
    assert lagrange_interpolate(points) == target


@given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=6))
def test_lagrange_reproduces_every_point(ys):
    points = list(enumerate(ys, start=1))
    poly = lagrange_interpolate(points)
    assert poly.degree() < len(points)
    assert all(poly.evaluate(x) == y for x, y in points)


def test_lagrange_rejects_bad_input():
    with pytest.raises(DomainError):
        lagrange_interpolate([])
    with pytest.raises(DomainError):
        lagrange_interpolate([(1, 2), (1, 3)])
