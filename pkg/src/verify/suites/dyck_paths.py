"""
Dyck 路径双射：递增/递减往返、拆分合并、峰的 Narayana 分布
"""

from collections import Counter

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
    split_at_column,
)
from src.core.models import SuiteResult, Variant
from src.core.numeric import catalan, narayana
from src.oracle.enumerate import enumerate_parking_functions
from src.verify.context import VerifyContext
from src.verify.registry import register_suite

WORKED_PATH = "NNENNNEEEENENNEE"
WORKED_INCREASING = (1, 1, 2, 2, 2, 6, 7, 7)
WORKED_DECREASING = (7, 7, 6, 2, 2, 2, 1, 1)

SPLIT_EXAMPLE = ("NENENNNEENNNENEEEENE", 5, "NENENNNEEENE", "NNENEE", 3)


@register_suite("bijections", "Dyck path <-> weakly-increasing/decreasing round trips", default_nmax=7)
def bijections_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="bijections", nmax=nmax)
    path = DyckPath(WORKED_PATH)
    result.record("worked example path", "increasing and decreasing images",
                  dyck_to_increasing(path) == WORKED_INCREASING and dyck_to_decreasing(path) == WORKED_DECREASING
                  and decreasing_to_dyck(WORKED_DECREASING) == path)

    for n in range(1, nmax + 1):
        paths = list(enumerate_dyck(n))
        inc_images = [dyck_to_increasing(p) for p in paths]
        dec_images = [dyck_to_decreasing(p) for p in paths]
        round_trip = all(increasing_to_dyck(a) == p and decreasing_to_dyck(b) == p
                         for p, a, b in zip(paths, inc_images, dec_images))
        result.record(f"n={n}: {len(paths)} paths round trip", "path bijections",
                      round_trip and len(paths) == catalan(n))
        enumerated = set(enumerate_parking_functions(n, Variant.WEAKLY_INCREASING))
        result.record(f"n={n}: image is every weakly-increasing parking function", "bijectivity",
                      set(inc_images) == enumerated and len(set(inc_images)) == len(paths))
        reflected = all(
            sorted((pk.spot, pk.car) for pk in peaks(p))
            == sorted((pk.car, pk.spot) for pk in peaks(reflect_antidiagonal(p)))
            and reflect_antidiagonal(reflect_antidiagonal(p)) == p
            for p in paths
        )
        result.record(f"n={n}: anti-diagonal reflection swaps peak coordinates", "q^d symmetry", reflected)
    return result


@register_suite("split-merge", "column-j peak split/merge round trips and k distribution", default_nmax=8)
def split_merge_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="split-merge", nmax=nmax)
    text, j, big_text, small_text, k = SPLIT_EXAMPLE
    big, small, got_k = split_at_column(DyckPath(text), j)
    result.record("worked split example", "column-5 split", (big.steps, small.steps, got_k) == (big_text, small_text, k),
                  f"{big} | {small} | k={got_k}")

    for n in range(1, nmax + 1):
        failures = []
        by_k = {col: Counter() for col in range(1, n + 1)}
        for path in enumerate_dyck(n):
            for col in range(1, n + 1):
                if not has_peak_in_column(path, col):
                    continue
                big, small, k = split_at_column(path, col)
                by_k[col][k] += 1
                if big.size + small.size != n - 1 or not 0 <= k <= n - col or merge(big, small, col) != path:
                    failures.append((path.steps, col))
        result.record(f"n={n}: split then merge is the identity", "split/merge bijection", not failures,
                      f"{failures[:3]}" if failures else "")
        # 每个 k 恰好对应 C_(n-1-k) * C_k 条路径
        distribution_ok = all(
            by_k[col] == Counter({kk: catalan(n - 1 - kk) * catalan(kk) for kk in range(0, n - col + 1)})
            for col in range(1, n + 1)
        )
        result.record(f"n={n}: k in [0, n-j] fully attained", "C_(n-1-k) C_k per k", distribution_ok)
    return result


@register_suite("narayana", "peak counts of Dyck paths and decreasing lucky counts vs N(n, k)", default_nmax=8)
def narayana_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="narayana", nmax=nmax)
    for n in range(1, nmax + 1):
        by_peaks = Counter(len(peaks(p)) for p in enumerate_dyck(n))
        expected = [narayana(n, k) for k in range(1, n + 1)]
        got = [by_peaks.get(k, 0) for k in range(1, n + 1)]
        result.record(f"n={n}: peak distribution", "Narayana numbers", got == expected, f"{got}")
        decreasing = ctx.oracle(n, Variant.WEAKLY_DECREASING).counts
        result.record(f"n={n}: decreasing lucky distribution", "Narayana numbers", decreasing == expected,
                      f"{decreasing}")
    return result
