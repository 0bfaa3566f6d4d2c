"""
列和猜想：j <= 5 与已知闭式逐项一致，j = 6 只做探索性拟合
"""

import math
from fractions import Fraction

from src.core.models import SuiteResult
from src.core.numeric import ExactPoly
from src.formulas import closed_forms
from src.lab.conjecture import (
    collect_samples,
    default_sample_range,
    exp_link_ratio,
    fit_conjecture,
    reconstruct_column_sum,
)
from src.verify.context import VerifyContext
from src.verify.registry import register_suite

# f_j(n) 的已知多项式，系数按升幂
KNOWN_F = {
    1: ExactPoly(()),
    2: ExactPoly((Fraction(1, 4),)),
    3: ExactPoly((Fraction(-1, 3), Fraction(2, 3))),
    4: ExactPoly((Fraction(9, 8), Fraction(-26, 8), Fraction(13, 8))),
    5: ExactPoly((Fraction(-192, 30), Fraction(659, 30), Fraction(-531, 30), Fraction(118, 30))),
}

LINK_NS = (10 ** 3, 10 ** 4)


@register_suite("conjecture", "fit f_j exactly, compare with known polynomials and rho_j", default_nmax=6)
def conjecture_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="conjecture", nmax=nmax)
    for j in range(1, min(nmax, 6) + 1):
        if j <= 5:
            samples = collect_samples(j, default_sample_range(j), cache=ctx.cache, workers=ctx.workers)
            fit = fit_conjecture(j, samples)
            result.record(f"j={j}: f_{j} = {fit.f_poly}", "known column polynomial",
                          fit.f_poly == KNOWN_F[j] and fit.degree_claim_holds is True,
                          f"held out {fit.held_out}")
            rho = closed_forms.rho_asymptotic(j)
            result.record(f"j={j}: r_{j} = {fit.r_j}", "asymptotic constant",
                          fit.r_j == rho.exp_coefficient and abs(fit.predicted_rho.numeric - rho.numeric) < 1e-12)
        else:
            samples = collect_samples(j, default_sample_range(j), source="published")
            fit = fit_conjecture(j, samples)
            reproduces = all(reconstruct_column_sum(fit, s.n) == s.value for s in samples)
            result.record(f"j={j}: exploratory fit, r_{j} = {fit.r_j}", "embedded column sums",
                          fit.exploratory and reproduces, f"predicted rho {fit.predicted_rho.numeric:.6f}")

        if j >= 2:
            errors = [abs(float(exp_link_ratio(j, n)) - math.exp(-j)) for n in LINK_NS]
            result.record(f"j={j}: n^(j-2)(n-j+1)^(n-j+1)/(n+1)^(n-1) -> e^-{j}", "exponential link",
                          errors[1] < errors[0], ", ".join(f"{e:.2e}" for e in errors))
    return result
