import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.core.errors import DomainError
from src.core.models import RestrictionSets, Variant
from src.core.numeric import binomial, catalan
from src.formulas import closed_forms as cf
from src.formulas import published_tables


# --- Pollak 推广 ---
def test_restricted_counts():
    assert cf.pollak_restricted_count(cf.restriction_sets(3)) == 16
    assert cf.pollak_restricted_count(cf.restriction_sets(3, lucky={1})) == 16
    assert cf.pollak_restricted_count(cf.restriction_sets(3, unlucky={1})) == 0
    assert cf.pollak_restricted_count(cf.restriction_sets(3, lucky={2})) == 12
    assert cf.pollak_restricted_count(cf.restriction_sets(2, lucky={1, 2})) == 2


@pytest.mark.parametrize("lucky, unlucky", [({1}, {1}), ({4}, set()), (set(), {0})])
def test_restriction_sets_validation(lucky, unlucky):
    with pytest.raises(DomainError):
        cf.restriction_sets(3, lucky, unlucky)


def test_restriction_sets_model_raises_domain_error():
    with pytest.raises(DomainError, match="overlap"):
        RestrictionSets(n=3, L={1}, U={1})
    with pytest.raises(DomainError):
        RestrictionSets(n=0)
    assert RestrictionSets(n=3, L={2}).L == frozenset({2})


@given(st.data())
def test_restricting_one_more_car_splits_the_count(data):
    """count(L, U) = count(L + x, U) + count(L, U + x)"""
    n = data.draw(st.integers(min_value=1, max_value=9))
    labels = data.draw(st.lists(st.sampled_from("LU-"), min_size=n, max_size=n))
    free = [i for i, c in enumerate(labels, 1) if c == "-"]
    if not free:
        return
    x = data.draw(st.sampled_from(free))
    lucky = {i for i, c in enumerate(labels, 1) if c == "L"}
    unlucky = {i for i, c in enumerate(labels, 1) if c == "U"}
    whole = cf.pollak_restricted_count(cf.restriction_sets(n, lucky, unlucky))
    as_lucky = cf.pollak_restricted_count(cf.restriction_sets(n, lucky | {x}, unlucky))
    as_unlucky = cf.pollak_restricted_count(cf.restriction_sets(n, lucky, unlucky | {x}))
    assert whole == as_lucky + as_unlucky


# --- 幸运车分布 ---
def test_lucky_polynomial():
    f = cf.lucky_polynomial(3)
    assert f.degree() == 3
    assert f.evaluate(0) == 0
    assert f.evaluate(1) == 16
    assert f.format("x") == "6*x^3 + 8*x^2 + 2*x"


def test_lucky_coefficients():
    assert cf.lucky_coefficients(1) == [1]
    assert cf.lucky_coefficients(3) == [2, 8, 6]
    assert cf.lucky_coefficients(4) == [6, 37, 58, 24]


@pytest.mark.parametrize("n", range(1, 7))
def test_three_routes_to_c_k(n):
    coefficients = cf.lucky_coefficients(n)
    assert coefficients == [cf.lucky_coefficient_by_subsets(n, k) for k in range(1, n + 1)]
    assert sum(coefficients) == (n + 1) ** (n - 1)
    assert coefficients[0] == cf.c1_identity(n)
    assert coefficients[-1] == cf.cn_identity(n)
    if n >= 2:
        assert coefficients[1] == cf.c2_identity(n)
        assert coefficients[n - 2] == cf.c_n_minus_1_identity(n)


def test_moments():
    assert cf.mean_lucky(4) == Fraction(14, 5)
    assert cf.variance_lucky(4) == Fraction(16, 25)
    assert cf.factorial_moment(5, 0) == 1
    assert cf.factorial_moment(3, 4) == 0
    for n in range(1, 10):
        cf.mean_lucky(n)
        cf.variance_lucky(n)


def test_total_lucky():
    assert [cf.total_lucky(n) for n in (1, 2, 3)] == [1, 5, 36]
    for n in range(1, 8):
        assert cf.total_lucky(n) == sum(k * c for k, c in enumerate(cf.lucky_coefficients(n), start=1))


# --- 部分停车函数、边界 ---
def test_partial_counts():
    assert cf.partial_pf_count(2, 3) == 8
    assert cf.partial_pf_count(0, 5) == 1
    assert cf.partial_pf_count(4, 4) == 125
    with pytest.raises(DomainError):
        cf.partial_pf_count(4, 3)


def test_borders_match_published_table():
    for i, j in cf.border_cells(7):
        assert cf.q_border(7, i, j) == published_tables.Q7_ALL[i - 1][j - 1]
    with pytest.raises(DomainError):
        cf.q_border(7, 3, 3)


def test_car_lucky():
    assert cf.car_lucky_count(7, 7) == sum(published_tables.Q7_ALL[6])
    assert cf.car_lucky_probability(9, 1) == 1
    assert cf.car_lucky_probability(9, 4) == Fraction(7, 10)


# --- 车位幸运 ---
def test_spot_formulas_match_published_column_sums():
    for n, row in published_tables.COLUMN_SUMS.items():
        for j in range(1, min(n, 5) + 1):
            assert cf.spot_lucky_count(n, j) == row[j - 1]
        assert cf.spot_lucky_count(n, n) == n ** (n - 1)


def test_spot_formula_domain():
    assert not cf.has_spot_formula(7, 6)
    with pytest.raises(DomainError):
        cf.spot_lucky_count(7, 6)
    assert cf.spot_lucky_probability(3, 3) == Fraction(9, 16)


@pytest.mark.parametrize("j", range(1, 6))
def test_rho_constants(j):
    rho = cf.rho_asymptotic(j)
    assert abs(rho.numeric - float(published_tables.RHO_NUMERIC[j])) < 1e-6
    assert abs(float(cf.spot_lucky_probability(2000, j)) - rho.numeric) < 1e-2


def test_rho_domain_and_last_spot():
    with pytest.raises(DomainError):
        cf.rho_asymptotic(6)
    assert cf.rho_asymptotic(3).exact_text() == "2/3 - 2/3*e^-3"
    assert cf.last_spot_limit() == pytest.approx(math.exp(-1))


# --- 单调变体 ---
def test_increasing():
    assert cf.increasing_lucky_count(8, 3) == 264
    assert cf.increasing_lucky_count(6, 1) == catalan(6)
    assert cf.increasing_expected(10) == Fraction(30, 12)


def test_ballot_paths():
    assert cf.ballot_paths(2, 2) == 2
    assert cf.ballot_paths(0, 5) == 1
    assert cf.ballot_paths(2, 3) == 5
    with pytest.raises(DomainError):
        cf.ballot_paths(3, 2)


def test_decreasing_table_n7():
    got = [[cf.decreasing_q(7, i, j) for j in range(1, 8)] for i in range(1, 8)]
    assert got == published_tables.Q7_DECREASING


@given(st.integers(min_value=1, max_value=12), st.data())
def test_decreasing_symmetry(n, data):
    i = data.draw(st.integers(min_value=1, max_value=n))
    j = data.draw(st.integers(min_value=1, max_value=n))
    assert cf.decreasing_q(n, i, j) == cf.decreasing_q(n, j, i)


@pytest.mark.parametrize("n", range(1, 13))
def test_decreasing_columns_and_totals(n):
    spots = [cf.decreasing_spot_count(n, j) for j in range(1, n + 1)]
    assert spots[0] == catalan(n)
    assert sum(spots) == cf.decreasing_total(n) == binomial(2 * n, n) // 2
    assert cf.decreasing_expected(n) == Fraction(n + 1, 2)


def test_decreasing_total_by_weights():
    assert [cf.decreasing_total_by_weights(n) for n in (1, 2, 3)] == [1, 3, 10]
    for n in range(1, 13):
        assert cf.decreasing_total_by_weights(n) == cf.decreasing_total(n)
    with pytest.raises(DomainError):
        cf.decreasing_total_by_weights(0)


def test_q_closed_form_dispatch():
    assert cf.q_closed_form(7, 3, 3) is None
    assert cf.q_closed_form(7, 1, 4) == 35328
    assert cf.q_closed_form(7, 2, 3, Variant.WEAKLY_DECREASING) == 56
    assert cf.q_closed_form(7, 3, 3, Variant.WEAKLY_INCREASING) == 84
    assert cf.q_closed_form(7, 3, 4, Variant.WEAKLY_INCREASING) == 0
