"""
单调偏好：弱递增、弱递减两类停车函数的闭式与 oracle 对照
"""

from src.core.dyck import enumerate_dyck, has_peak_in_column
from src.core.models import SuiteResult, Variant
from src.core.numeric import catalan
from src.formulas import closed_forms, published_tables
from src.oracle.tables import column_sums, monotone_extremes
from src.verify.context import VerifyContext
from src.verify.registry import register_suite

# 逐条枚举 Dyck 路径的上限；更大的 n 只比较两个闭式
DYCK_COUNT_MAX_N = 8


@register_suite("increasing", "weakly-increasing: C_(i-1) C_(n-i+1) per position and 3n/(n+2)", default_nmax=10)
def increasing_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="increasing", nmax=nmax)
    for n in range(1, nmax + 1):
        entry = ctx.oracle(n, Variant.WEAKLY_INCREASING)
        table = entry.table()
        diagonal = [table.at(i, i) for i in range(1, n + 1)]
        expected = [closed_forms.increasing_lucky_count(n, i) for i in range(1, n + 1)]
        off_diagonal = sum(table.at(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)
        result.record(f"n={n}: diagonal", "C_(i-1) C_(n-i+1)", diagonal == expected and off_diagonal == 0,
                      f"{diagonal} vs {expected}, off-diagonal total {off_diagonal}")
        result.record(f"n={n}: {entry.leaves} leaves, mean 3n/(n+2)", "weakly-increasing expectation",
                      entry.leaves == catalan(n)
                      and entry.distribution().total * closed_forms.increasing_expected(n) == sum(diagonal))
    return result


@register_suite("decreasing", "weakly-decreasing q^d(i, j), totals and expectation (n+1)/2", default_nmax=10)
def decreasing_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="decreasing", nmax=nmax)
    for n in range(1, nmax + 1):
        table = ctx.oracle(n, Variant.WEAKLY_DECREASING).table()
        bad = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
               if table.at(i, j) != closed_forms.decreasing_q(n, i, j)]
        result.record(f"n={n}: q^d cells", "q^d closed form", not bad, f"mismatched cells {bad[:5]}" if bad else "")
        sums = column_sums(table)
        result.record(f"n={n}: column sums", "Catalan convolution",
                      sums == [closed_forms.decreasing_spot_count(n, j) for j in range(1, n + 1)])
        total = sum(sums)
        result.record(f"n={n}: total {total}", "C(2n, n)/2 and (n+1)/2",
                      total == closed_forms.decreasing_total(n)
                      and closed_forms.decreasing_expected(n) * catalan(n) == total)
        result.record(f"n={n}: weighted Catalan total", "sum_k (n-k) C_(n-1-k) C_k = C(2n, n)/2",
                      closed_forms.decreasing_total_by_weights(n) == closed_forms.decreasing_total(n) == total)
        if n == 7:
            result.record("n=7: published q^d table", "weakly-decreasing table",
                          table.q == published_tables.Q7_DECREASING)
    return result


@register_suite("eq7-eq8", "column sums of q^d equal the Catalan convolution; Dyck peak counts", default_nmax=12)
def column_identity_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="eq7-eq8", nmax=nmax)
    for n in range(1, nmax + 1):
        by_sum = [closed_forms.decreasing_spot_sum(n, j) for j in range(1, n + 1)]
        by_convolution = [closed_forms.decreasing_spot_convolution(n, j) for j in range(1, n + 1)]
        result.record(f"n={n}: sum_i q^d(i, j)", "Catalan convolution tail", by_sum == by_convolution,
                      f"{by_sum} vs {by_convolution}")
        if n <= DYCK_COUNT_MAX_N:
            paths = list(enumerate_dyck(n))
            counted = [sum(has_peak_in_column(p, j) for p in paths) for j in range(1, n + 1)]
            result.record(f"n={n}: paths with a column-j peak", "Dyck path count", counted == by_convolution,
                          f"{counted}")
    return result


@register_suite("symmetry", "q^d(i, j) = q^d(j, i)", default_nmax=12)
def symmetry_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="symmetry", nmax=nmax)
    for n in range(1, nmax + 1):
        bad = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
               if closed_forms.decreasing_q(n, i, j) != closed_forms.decreasing_q(n, j, i)]
        result.record(f"n={n}: symmetric", "q^d symmetry", not bad, f"{bad[:5]}" if bad else "")
    return result


@register_suite("extremes", "increasing arrangement minimizes, decreasing maximizes lucky count", default_nmax=6)
def extremes_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="extremes", nmax=nmax)
    for n in range(1, nmax + 1):
        report = monotone_extremes(n)
        result.record(f"n={n}: {report.multisets} multisets, {report.arrangements} arrangements",
                      "monotone extremes", not report.violations,
                      f"violations {report.violations[:3]}" if report.violations else "")
    return result
