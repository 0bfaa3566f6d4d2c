import math
from fractions import Fraction

import pytest

from config.settings import settings
from src.core.errors import DomainError, InsufficientSamplesError
from src.core.models import Provenance
from src.core.numeric import ExactPoly
from src.formulas import published_tables
from src.lab.conjecture import (
    collect_samples,
    default_sample_range,
    exp_link_ratio,
    extract_f_value,
    extract_f_values,
    fit_conjecture,
    reconstruct_column_sum,
)


def published(j, ns):
    return [(n, published_tables.column_sum_constant(n, j)) for n in ns]


def test_extract_constant_f2():
    values = extract_f_values(2, published(2, range(3, 7)))
    assert [v for _, v in values] == [Fraction(1, 4)] * 4


def test_extract_single_values():
    assert extract_f_value(4, 5, 708) == Fraction(51, 2)
    for n in range(1, 8):
        assert extract_f_value(1, n, (n + 1) ** (n - 1)) == 0
    with pytest.raises(DomainError):
        extract_f_value(3, 2, 11)


def test_fit_j3_from_published_sums():
    fit = fit_conjecture(3, published(3, range(3, 10)))
    assert fit.f_poly == ExactPoly((Fraction(-1, 3), Fraction(2, 3)))
    assert fit.degree_claim_holds is True
    assert fit.r_j == Fraction(2, 3)
    assert fit.predicted_rho.numeric == pytest.approx(0.633475, abs=1e-6)
    assert fit.support == [3, 4]
    assert fit.held_out == [5, 6, 7, 8, 9]


def test_fit_j5_leading_coefficient():
    fit = fit_conjecture(5, published(5, range(5, 10)))
    assert fit.r_j == Fraction(59, 15)
    assert fit.f_poly.format("n") == "59/15*n^3 - 177/10*n^2 + 659/30*n - 32/5"
    assert fit.degree_claim_holds is True
    for n in range(5, 10):
        assert reconstruct_column_sum(fit, n) == published_tables.column_sum_constant(n, 5)


def test_j6_is_exploratory():
    samples = collect_samples(6, default_sample_range(6), source="published")
    assert [s.provenance for s in samples] == [Provenance.PUBLISHED_CONSTANT] * 5
    fit = fit_conjecture(6, samples)
    assert fit.degree_claim_holds is None
    assert fit.exploratory
    assert fit.held_out == []
    assert all(reconstruct_column_sum(fit, s.n) == s.value for s in samples)


def test_j6_oracle_route(monkeypatch):
    oracle = collect_samples(6, [6, 7], source="oracle")
    assert [s.value for s in oracle] == [7776, 131632]
    assert {s.provenance for s in oracle} == {Provenance.ORACLE}

    monkeypatch.setattr(settings, "FIT_ORACLE_MAX_N", 7)
    samples = collect_samples(6, default_sample_range(6))
    assert [s.provenance for s in samples] == [
        Provenance.CLOSED_FORM, Provenance.ORACLE,
        Provenance.PUBLISHED_CONSTANT, Provenance.PUBLISHED_CONSTANT, Provenance.PUBLISHED_CONSTANT,
    ]
    assert [s.value for s in samples] == [published_tables.column_sum_constant(n, 6) for n in range(6, 11)]
    fit = fit_conjecture(6, samples)
    assert fit.exploratory
    assert all(reconstruct_column_sum(fit, s.n) == s.value for s in samples)


def test_wrong_sample_is_reported():
    fit = fit_conjecture(2, [(3, 11), (4, 87), (5, 909)])
    assert fit.degree_claim_holds is False
    assert fit.mismatches == [5]


def test_fit_input_errors():
    with pytest.raises(InsufficientSamplesError):
        fit_conjecture(4, [(4, 64), (5, 708)])
    with pytest.raises(DomainError):
        fit_conjecture(2, [(3, 11), (3, 11)])


def test_collect_samples_sources():
    closed = collect_samples(3, [3, 4, 5])
    assert [s.value for s in closed] == [9, 74, 783]
    assert {s.provenance for s in closed} == {Provenance.CLOSED_FORM}
    oracle = collect_samples(6, [6], source="oracle")
    assert oracle[0].value == 7776
    assert oracle[0].provenance == Provenance.ORACLE
    with pytest.raises(DomainError):
        collect_samples(3, [2])
    with pytest.raises(DomainError):
        collect_samples(7, [11], source="published")


def test_default_sample_range():
    assert default_sample_range(1) == [1, 2, 3, 4]
    assert default_sample_range(3) == [3, 4, 5, 6, 7]
    assert default_sample_range(6) == [6, 7, 8, 9, 10]


@pytest.mark.parametrize("j", [2, 3, 4, 5])
def test_exponential_link(j):
    errors = [abs(float(exp_link_ratio(j, n)) - math.exp(-j)) for n in (10 ** 3, 10 ** 4)]
    assert errors[1] < errors[0]
