from fractions import Fraction

import pytest

from config.settings import settings
from src.core.errors import DomainError, LimitExceededError
from src.core.models import Variant
from src.core.numeric import catalan, narayana
from src.formulas import closed_forms, published_tables
from src.oracle.cache import canonical_payload
from src.oracle.enumerate import check_limit, enumerate_parking_functions
from src.oracle.tables import (
    column_sums,
    compute_lucky_distribution,
    compute_lucky_table,
    count_partial_pfs,
    falling_moment,
    lucky_mask_counts,
    mean_and_variance,
    monotone_extremes,
    row_sums,
    run_oracle,
    tally_from_stream,
)


def test_enumeration_counts_and_order():
    for n in range(1, 7):
        assert sum(1 for _ in enumerate_parking_functions(n)) == (n + 1) ** (n - 1)
    pfs = list(enumerate_parking_functions(3))
    assert pfs[0] == (1, 1, 1)
    assert pfs[-1] == (3, 2, 1)
    assert pfs == sorted(set(pfs))


@pytest.mark.parametrize("variant", [Variant.WEAKLY_INCREASING, Variant.WEAKLY_DECREASING])
def test_monotone_variants_have_catalan_many(variant):
    for n in range(1, 9):
        assert sum(1 for _ in enumerate_parking_functions(n, variant)) == catalan(n)


def test_first_choice_subtrees_partition_the_stream():
    n = 5
    parts = [list(enumerate_parking_functions(n, first=f)) for f in range(1, n + 1)]
    assert sum(parts, []) == list(enumerate_parking_functions(n))


@pytest.mark.parametrize("first", [0, 5, -1])
def test_first_choice_out_of_range(first):
    with pytest.raises(DomainError):
        list(enumerate_parking_functions(4, first=first))


def test_limits(monkeypatch):
    monkeypatch.setattr(settings, "ORACLE_MAX_N", 6)
    monkeypatch.setattr(settings, "ORACLE_LONG_MAX_N", 7)
    with pytest.raises(LimitExceededError):
        check_limit(7, Variant.ALL)
    check_limit(7, Variant.ALL, allow_long=True)
    with pytest.raises(LimitExceededError):
        check_limit(8, Variant.ALL, allow_long=True)
    with pytest.raises(LimitExceededError):
        check_limit(settings.MONOTONE_MAX_N + 1, Variant.WEAKLY_DECREASING)
    with pytest.raises(DomainError):
        check_limit(0, Variant.ALL)


def test_small_table_by_hand():
    """n = 2：11、12、21"""
    entry = run_oracle(2, workers=1)
    assert entry.q == [[2, 1], [1, 1]]
    assert entry.counts == [1, 2]
    assert entry.leaves == 3


@pytest.mark.parametrize("variant", list(Variant))
def test_fused_walk_matches_park_stream(variant):
    for n in range(1, 6):
        entry = run_oracle(n, variant, workers=1)
        streamed = tally_from_stream(n, variant)
        assert entry.q == streamed.q
        assert entry.counts == streamed.counts
        assert entry.leaves == streamed.leaves


def test_published_table_n7():
    table = compute_lucky_table(7, workers=1)
    assert table.q == published_tables.Q7_ALL
    assert table.at(1, 1) == 65536
    assert table.at(4, 4) == 22788
    assert table.at(7, 4) == 5120
    assert column_sums(table) == published_tables.COLUMN_SUMS[7] + [7 ** 6]


def test_parallel_run_is_byte_identical():
    serial = run_oracle(7, workers=1)
    parallel = run_oracle(7, workers=2)
    assert canonical_payload(serial) == canonical_payload(parallel)


def test_monotone_tables():
    inc = compute_lucky_table(7, Variant.WEAKLY_INCREASING)
    assert [inc.at(i, i) for i in range(1, 8)] == [429, 132, 84, 70, 70, 84, 132]
    dec = compute_lucky_table(7, Variant.WEAKLY_DECREASING)
    assert dec.q == published_tables.Q7_DECREASING
    dist = compute_lucky_distribution(6, Variant.WEAKLY_DECREASING)
    assert dist.counts == [narayana(6, k) for k in range(1, 7)]


def test_row_sums_and_moments():
    entry = run_oracle(4, workers=1)
    assert row_sums(entry.table()) == [(4 + 2 - i) * 5 ** 2 for i in range(1, 5)]
    dist = entry.distribution()
    assert dist.total == 125
    mean, variance = mean_and_variance(dist)
    assert mean == falling_moment(dist, 1)
    # n(n+3)/(2(n+1)) 与 (n-1)n(n+4)/(6(n+1)^2)
    assert mean == Fraction(14, 5)
    assert variance == Fraction(16, 25)


def test_lucky_masks():
    masks = lucky_mask_counts(3)
    assert sum(masks.values()) == 16
    assert masks[0b111] == 6
    assert masks[0b001] == 2
    assert all(mask & 1 for mask in masks)


def test_partial_parking_brute_force():
    assert count_partial_pfs(2, 3) == 8
    assert count_partial_pfs(0, 4) == 1
    assert count_partial_pfs(3, 3) == 16
    with pytest.raises(DomainError):
        count_partial_pfs(4, 3)


def test_monotone_extremes_small_n():
    report = monotone_extremes(4)
    assert report.multisets == catalan(4)
    assert report.arrangements == 125
    assert not report.violations


@pytest.mark.slow
def test_complete_column_sums_n8():
    sums = column_sums(compute_lucky_table(8))
    assert sums == published_tables.COLUMN_SUMS[8] + [published_tables.SUBDIAGONAL[8], 8 ** 7]


@pytest.mark.slow
def test_complete_column_sums_n9():
    """n = 9：约 10^8 个叶子；j = 7 没有公开值，只检查总和"""
    sums = column_sums(compute_lucky_table(9))
    assert len(sums) == 9
    assert sums[:6] == published_tables.COLUMN_SUMS[9]
    assert sums[7] == published_tables.SUBDIAGONAL[9] == 48068672
    assert sums[8] == 9 ** 8
    assert sum(sums) == closed_forms.total_lucky(9)
