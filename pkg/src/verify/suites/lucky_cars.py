"""
幸运车相关的恒等式：Pollak 推广、行和、c_k 分布、矩
"""

import random

from src.core.models import SuiteResult
from src.formulas import closed_forms
from src.oracle.tables import falling_moment, mean_and_variance, row_sums
from src.verify.context import VerifyContext
from src.verify.registry import register_suite

POLLAK_CASES_PER_N = 50


def _count_with(masks, lucky: frozenset, unlucky: frozenset) -> int:
    need = sum(1 << (i - 1) for i in lucky)
    avoid = sum(1 << (i - 1) for i in unlucky)
    return sum(c for mask, c in masks.items() if mask & need == need and not mask & avoid)


@register_suite("pollak", "restricted lucky/unlucky counts vs oracle (random L, U)", default_nmax=7)
def pollak_suite(nmax: int, ctx: VerifyContext, seed: int = 2024) -> SuiteResult:
    result = SuiteResult(suite="pollak", nmax=nmax)
    rng = random.Random(seed)
    for n in range(1, nmax + 1):
        masks = ctx.lucky_masks(n)
        failures = []
        for _ in range(POLLAK_CASES_PER_N):
            labels = [rng.choice("LU-") for _ in range(n)]
            lucky = frozenset(i for i, c in enumerate(labels, 1) if c == "L")
            unlucky = frozenset(i for i, c in enumerate(labels, 1) if c == "U")
            expected = _count_with(masks, lucky, unlucky)
            got = closed_forms.pollak_restricted_count(closed_forms.restriction_sets(n, lucky, unlucky))
            if got != expected:
                failures.append(f"L={sorted(lucky)} U={sorted(unlucky)}: {got} != {expected}")
        result.record(f"n={n}: {POLLAK_CASES_PER_N} random (L, U)", "generalized Pollak count",
                      not failures, "; ".join(failures[:3]))
    return result


@register_suite("rows", "row sums of q_n(i, j) = (n+2-i)(n+1)^(n-2)", default_nmax=7)
def rows_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="rows", nmax=nmax)
    for n in range(1, nmax + 1):
        sums = row_sums(ctx.oracle(n).table())
        expected = [closed_forms.car_lucky_count(n, i) for i in range(1, n + 1)]
        result.record(f"n={n}: row sums", "car i lucky count", sums == expected, f"{sums} vs {expected}")
    return result


@register_suite("distribution", "c_k distribution vs lucky polynomial and identities", default_nmax=7)
def distribution_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="distribution", nmax=nmax)
    for n in range(1, nmax + 1):
        counts = ctx.oracle(n).counts
        poly = closed_forms.lucky_coefficients(n)
        result.record(f"n={n}: c_k vs f(x) coefficients", "lucky polynomial", counts == poly, f"{counts} vs {poly}")
        result.record(f"n={n}: sum c_k = (n+1)^(n-1)", "parking function count",
                      sum(counts) == (n + 1) ** (n - 1))
        result.record(f"n={n}: c_1 = (n-1)!, c_n = n!", "extreme coefficients",
                      counts[0] == closed_forms.c1_identity(n) and counts[-1] == closed_forms.cn_identity(n))
        if n >= 2:
            result.record(f"n={n}: harmonic identities for c_2 and c_(n-1)", "harmonic-number identities",
                          counts[1] == closed_forms.c2_identity(n)
                          and counts[n - 2] == closed_forms.c_n_minus_1_identity(n))
    return result


@register_suite("moments", "factorial moments, mean and variance vs empirical moments", default_nmax=6)
def moments_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="moments", nmax=nmax)
    for n in range(1, nmax + 1):
        dist = ctx.oracle(n).distribution()
        for ell in range(1, 4):
            got = closed_forms.factorial_moment(n, ell)
            expected = falling_moment(dist, ell)
            result.record(f"n={n}, l={ell}: factorial moment", "f^(l)(1)/(n+1)^(n-1)",
                          got == expected, f"{got} vs {expected}")
        mean, variance = mean_and_variance(dist)
        result.record(f"n={n}: mean and variance", "n(n+3)/(2(n+1)), (n-1)n(n+4)/(6(n+1)^2)",
                      mean == closed_forms.mean_lucky(n) and variance == closed_forms.variance_lucky(n),
                      f"{mean}, {variance}")
    return result
