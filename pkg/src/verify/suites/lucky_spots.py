"""
幸运车位相关：边界公式、列和闭式、渐近常数、部分停车函数
"""

from src.core.models import SuiteResult
from src.formulas import closed_forms, published_tables
from src.oracle.tables import column_sums, count_partial_pfs
from src.verify.context import VerifyContext
from src.verify.registry import register_suite

ASYMPTOTIC_NS = (100, 200, 400, 800, 1600)


@register_suite("borders", "bottom/top/right/left border formulas vs oracle", default_nmax=7)
def borders_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="borders", nmax=nmax)
    for n in range(1, nmax + 1):
        table = ctx.oracle(n).table()
        bad = [(i, j) for i, j in closed_forms.border_cells(n) if closed_forms.q_border(n, i, j) != table.at(i, j)]
        result.record(f"n={n}: {len(closed_forms.border_cells(n))} border cells", "border lemma", not bad,
                      f"mismatched cells {bad}" if bad else "")
    return result


@register_suite("columns", "spot-lucky closed forms (j <= 5, j = n) vs oracle column sums", default_nmax=7)
def columns_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="columns", nmax=nmax)
    for n in range(1, nmax + 1):
        sums = column_sums(ctx.oracle(n).table())
        for j in range(1, n + 1):
            if not closed_forms.has_spot_formula(n, j):
                continue
            got = closed_forms.spot_lucky_count(n, j)
            result.record(f"n={n}, j={j}: column sum", "spot j lucky count", got == sums[j - 1],
                          f"{got} vs {sums[j - 1]}")
        published = published_tables.COLUMN_SUMS.get(n)
        if published:
            result.record(f"n={n}: published column sums", "column-sum table",
                          sums[:len(published)] == published)
    return result


@register_suite("asymptotics", "rho_j constants and monotone convergence of column probabilities", default_nmax=5)
def asymptotics_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="asymptotics", nmax=nmax)
    for j in range(1, min(nmax, 5) + 1):
        rho = closed_forms.rho_asymptotic(j)
        expected = float(published_tables.RHO_NUMERIC[j])
        result.record(f"j={j}: numeric rho", "asymptotic table", abs(rho.numeric - expected) < 1e-6,
                      f"{rho.numeric:.6f}")
        gaps = [abs(float(closed_forms.spot_lucky_probability(n, j)) - rho.numeric) for n in ASYMPTOTIC_NS]
        monotone = all(a > b for a, b in zip(gaps, gaps[1:])) or j == 1
        result.record(f"j={j}: convergence over n={list(ASYMPTOTIC_NS)}", "limit probability", monotone,
                      ", ".join(f"{g:.2e}" for g in gaps))
        near = abs(float(closed_forms.spot_lucky_probability(2000, j)) - rho.numeric)
        result.record(f"j={j}: |P(n=2000) - rho| < 1e-2", "limit probability", near < 1e-2, f"{near:.2e}")
    return result


@register_suite("partial", "partial parking counts (t+1-s)(t+1)^(s-1) vs brute force", default_nmax=6)
def partial_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="partial", nmax=nmax)
    for t in range(1, nmax + 1):
        bad = [s for s in range(0, t + 1) if closed_forms.partial_pf_count(s, t) != count_partial_pfs(s, t)]
        result.record(f"t={t}: s = 0..{t}", "partial parking proposition", not bad, f"bad s: {bad}" if bad else "")
    return result

