import itertools

import pytest
from hypothesis import given, strategies as st

from src.core.errors import DomainError
from src.core.models import OrderClass
from src.core.parking import (
    classify_order,
    is_extendable,
    is_parking_function,
    park,
    satisfies_sorted_criterion,
    validate_prefs,
)


@st.composite
def preference_vectors(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return tuple(draw(st.lists(st.integers(min_value=1, max_value=n), min_size=n, max_size=n)))


def test_worked_example():
    """2 4 2 3 1：车 1、2、5 幸运，车位 1、2、4 幸运"""
    outcome = park((2, 4, 2, 3, 1))
    assert outcome.success
    assert outcome.lucky_cars == {1, 2, 5}
    assert outcome.lucky_spots == {1, 2, 4}
    assert outcome.assignment == {1: 5, 2: 1, 3: 3, 4: 2, 5: 4}
    assert outcome.exited_cars == []


def test_failure_keeps_partial_assignment():
    outcome = park((2, 2))
    assert not outcome.success
    assert outcome.exited_cars == [2]
    assert outcome.car_spot == {1: 2, 2: None}
    assert outcome.lucky_cars == {1}
    assert outcome.lucky_spots == {2}


def test_identity_is_all_lucky():
    outcome = park((1, 2, 3))
    assert outcome.lucky_cars == {1, 2, 3}
    assert outcome.lucky_spots == {1, 2, 3}


@pytest.mark.parametrize("prefs", [(), (0, 1), (3, 1), (1, -2, 1)])
def test_invalid_preferences(prefs):
    with pytest.raises(DomainError):
        validate_prefs(prefs)


def test_parking_function_count_small_n():
    for n in range(1, 6):
        total = sum(is_parking_function(p) for p in itertools.product(range(1, n + 1), repeat=n))
        assert total == (n + 1) ** (n - 1)


@given(preference_vectors())
def test_simulation_matches_sorted_criterion(prefs):
    outcome = park(prefs)
    assert outcome.success == satisfies_sorted_criterion(prefs)
    assert len(outcome.lucky_cars) == len(outcome.lucky_spots)
    # 第一辆车总是幸运
    assert 1 in outcome.lucky_cars


@given(preference_vectors(), st.randoms())
def test_parking_is_permutation_invariant(prefs, rnd):
    shuffled = list(prefs)
    rnd.shuffle(shuffled)
    assert is_parking_function(prefs) == is_parking_function(shuffled)


def test_increasing_parks_in_order():
    prefs = (1, 1, 2, 2, 2, 6, 7, 7)
    outcome = park(prefs)
    assert outcome.success
    assert outcome.car_spot == {i: i for i in range(1, 9)}
    assert outcome.lucky_cars == {i for i, p in enumerate(prefs, start=1) if p == i}


@pytest.mark.parametrize("prefs, expected", [
    ((1, 1, 2, 2, 2, 6, 7, 7), OrderClass.WEAKLY_INCREASING),
    ((7, 7, 6, 2, 2, 2, 1, 1), OrderClass.WEAKLY_DECREASING),
    ((2, 2), OrderClass.BOTH),
    ((1,), OrderClass.BOTH),
    ((2, 1, 3), OrderClass.NEITHER),
])
def test_classify_order(prefs, expected):
    assert classify_order(prefs) == expected


def test_prefix_extendability():
    assert is_extendable((2, 2), 3)
    assert not is_extendable((3, 3), 3)
    assert is_extendable((), 4)


@given(preference_vectors(max_n=6))
def test_extendable_prefix_of_a_parking_function(prefs):
    if is_parking_function(prefs):
        assert all(is_extendable(prefs[:m], len(prefs)) for m in range(len(prefs) + 1))
