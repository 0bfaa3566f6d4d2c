import pytest
from hypothesis import given, strategies as st

from src.core.dyck import (
    DyckPath,
    decreasing_to_dyck,
    dyck_to_decreasing,
    dyck_to_increasing,
    enumerate_dyck,
    has_peak_in_column,
    increasing_to_dyck,
    merge,
    peaks,
    reflect_antidiagonal,
    render_grid,
    split_at_column,
)
from src.core.errors import DomainError
from src.core.numeric import catalan
from src.core.parking import park

WORKED_PATH = DyckPath("NNENNNEEEENENNEE")

PATHS = {n: list(enumerate_dyck(n)) for n in range(0, 8)}


@st.composite
def dyck_paths(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return draw(st.sampled_from(PATHS[n]))


@pytest.mark.parametrize("steps", ["NEEN", "NNE", "NX", "E"])
def test_invalid_paths(steps):
    with pytest.raises(DomainError):
        DyckPath(steps)


def test_parse_normalizes():
    assert DyckPath.parse("  nnee ") == DyckPath("NNEE")
    assert DyckPath.staircase(3).steps == "NENENE"


def test_enumeration_is_complete_and_ordered():
    for n, paths in PATHS.items():
        steps = [p.steps for p in paths]
        assert len(steps) == catalan(n)
        assert steps == sorted(set(steps), key=lambda s: s.replace("N", "0").replace("E", "1"))


def test_worked_example_bijections():
    assert dyck_to_increasing(WORKED_PATH) == (1, 1, 2, 2, 2, 6, 7, 7)
    assert dyck_to_decreasing(WORKED_PATH) == (7, 7, 6, 2, 2, 2, 1, 1)
    assert decreasing_to_dyck((7, 7, 6, 2, 2, 2, 1, 1)) == WORKED_PATH


def test_staircase_images():
    path = DyckPath.staircase(4)
    assert dyck_to_increasing(path) == (1, 2, 3, 4)
    assert dyck_to_decreasing(path) == (4, 3, 2, 1)


@given(dyck_paths())
def test_round_trips(path):
    assert increasing_to_dyck(dyck_to_increasing(path)) == path
    assert decreasing_to_dyck(dyck_to_decreasing(path)) == path
    assert dyck_to_decreasing(path) == tuple(reversed(dyck_to_increasing(path)))


@pytest.mark.parametrize("prefs", [(1, 3, 3), (2, 1), (2, 2)])
def test_increasing_to_dyck_rejects(prefs):
    with pytest.raises(DomainError):
        increasing_to_dyck(prefs)


def test_peaks_are_lucky_pairs_of_the_decreasing_function():
    pairs = {(pk.car, pk.spot) for pk in peaks(WORKED_PATH)}
    assert pairs == {(7, 1), (4, 2), (3, 6), (1, 7)}
    outcome = park(dyck_to_decreasing(WORKED_PATH))
    assert pairs == {(car, outcome.car_spot[car]) for car in outcome.lucky_cars}


@given(dyck_paths())
def test_peak_count_matches_lucky_count(path):
    outcome = park(dyck_to_decreasing(path))
    assert len(peaks(path)) == len(outcome.lucky_cars)


@given(dyck_paths())
def test_reflection_swaps_peaks(path):
    reflected = reflect_antidiagonal(path)
    assert reflect_antidiagonal(reflected) == path
    assert sorted((pk.spot, pk.car) for pk in peaks(path)) == sorted((pk.car, pk.spot) for pk in peaks(reflected))


def test_peak_in_column():
    path = DyckPath("NNNEEE")
    assert has_peak_in_column(path, 1)
    assert not has_peak_in_column(path, 2)
    assert not has_peak_in_column(path, 3)
    with pytest.raises(DomainError):
        has_peak_in_column(path, 0)


def test_split_worked_example():
    big, small, k = split_at_column(DyckPath("NENENNNEENNNENEEEENE"), 5)
    assert big.steps == "NENENNNEEENE"
    assert small.steps == "NNENEE"
    assert k == 3
    assert merge(big, small, 5) == DyckPath("NENENNNEENNNENEEEENE")


def test_split_without_peak_fails():
    with pytest.raises(DomainError):
        split_at_column(DyckPath("NNNEEE"), 3)
    with pytest.raises(DomainError):
        split_at_column(DyckPath(""), 1)


def test_merge_with_inconsistent_sizes_fails():
    with pytest.raises(DomainError):
        merge(DyckPath("NE"), DyckPath(""), 4)


@given(dyck_paths(), st.integers(min_value=1, max_value=7))
def test_split_merge_round_trip(path, j):
    if j > path.size or not has_peak_in_column(path, j):
        return
    big, small, k = split_at_column(path, j)
    assert small.size == k
    assert big.size + k == path.size - 1
    assert 0 <= k <= path.size - j
    assert merge(big, small, j) == path


def test_render_grid():
    assert render_grid(DyckPath("NE")) == "# #\n#"
