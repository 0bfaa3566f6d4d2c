"""
列和猜想的精确探索
S_j(n) = (j+1)/(2j) * (n+1)^(n-1) - f_j(n) * (n-j+1)^(n-j+1)
从列和数据反解 f_j(n)，用 j-1 个点做精确插值，其余点留作检验。
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from config.settings import settings
from src.core.errors import DomainError, InsufficientSamplesError
from src.core.models import ConjectureFit, FitSample, Provenance, Variant
from src.core.numeric import lagrange_interpolate
from src.formulas import closed_forms, published_tables
from src.oracle.cache import OracleCache
from src.oracle.tables import column_sums, compute_lucky_table

logger = logging.getLogger(__name__)

SampleLike = Union[FitSample, Tuple[int, int]]


def leading_share(j: int) -> Fraction:
    """(j+1)/(2j)"""
    return Fraction(j + 1, 2 * j)


def _as_pair(sample: SampleLike) -> Tuple[int, int]:
    if isinstance(sample, FitSample):
        return sample.n, sample.value
    n, value = sample
    return int(n), int(value)


def extract_f_value(j: int, n: int, column_sum: int) -> Fraction:
    if j < 1:
        raise DomainError(f"column must be positive, got j={j}")
    if n < j:
        raise DomainError(f"sample n={n} is below the column j={j}")
    scale = Fraction(n - j + 1) ** (n - j + 1)
    return (leading_share(j) * Fraction(n + 1) ** (n - 1) - column_sum) / scale


def extract_f_values(j: int, samples: Iterable[SampleLike]) -> List[Tuple[int, Fraction]]:
    """对每个 (n, S) 反解 f_j(n)"""
    return [(n, extract_f_value(j, n, s)) for n, s in map(_as_pair, samples)]


def fit_conjecture(j: int, samples: Sequence[SampleLike]) -> ConjectureFit:
    """
    用 n 最小的 j-1 个点插值（j = 1 时用 1 个点），其余点检验
    没有留出点时 degree_claim_holds 为 None（探索性），有不一致的点时为 False
    """
    fit_samples = [s if isinstance(s, FitSample) else FitSample(n=s[0], value=s[1], provenance=Provenance.ORACLE)
                   for s in samples]
    fit_samples.sort(key=lambda s: s.n)
    if len({s.n for s in fit_samples}) != len(fit_samples):
        raise DomainError("samples must have distinct n")

    support_size = max(j - 1, 1)
    if len(fit_samples) < support_size:
        raise InsufficientSamplesError(
            f"fitting f_{j} needs at least {support_size} samples, got {len(fit_samples)}"
        )

    values = extract_f_values(j, fit_samples)
    support = values[:support_size]
    held_out = values[support_size:]
    poly = lagrange_interpolate(support)

    mismatches = [n for n, v in held_out if poly.evaluate(n) != v]
    for n in mismatches:
        logger.warning(f"f_{j}: sample n={n} is not consistent with the interpolated polynomial")

    if not held_out:
        degree_claim: Optional[bool] = None
    else:
        degree_claim = poly.degree() <= j - 2 and not mismatches

    r_j = poly.leading_coefficient()
    return ConjectureFit(
        j=j,
        f_poly=poly,
        degree_claim_holds=degree_claim,
        r_j=r_j,
        predicted_rho=closed_forms.asymptotic_constant(j, leading_share(j), r_j),
        samples_used=fit_samples,
        support=[n for n, _ in support],
        held_out=[n for n, _ in held_out],
        mismatches=mismatches,
    )


def reconstruct_column_sum(fit: ConjectureFit, n: int) -> Fraction:
    """按拟合出的 f_j 反推 S_j(n)"""
    j = fit.j
    return (leading_share(j) * Fraction(n + 1) ** (n - 1)
            - fit.f_poly.evaluate(n) * Fraction(n - j + 1) ** (n - j + 1))


# --- 样本收集 ---
def collect_samples(
    j: int,
    n_values: Iterable[int],
    source: str = "auto",
    cache: Optional[OracleCache] = None,
    workers: Optional[int] = None,
) -> List[FitSample]:
    """
    按优先级取列和：闭式 (j <= 5) > oracle (缓存命中或 n <= FIT_ORACLE_MAX_N) > 内嵌常数
    source 为 'closed-form' / 'oracle' / 'published' 时只用该来源
    """
    samples = []
    for n in n_values:
        if n < j:
            raise DomainError(f"sample n={n} is below the column j={j}")
        sample = _sample_for(j, n, source, cache, workers)
        logger.debug(f"f_{j} sample n={n}: {sample.value} ({sample.provenance.value})")
        samples.append(sample)
    return samples


def _sample_for(j: int, n: int, source: str, cache: Optional[OracleCache], workers: Optional[int]) -> FitSample:
    use_auto = source == "auto"
    if source == "closed-form" or (use_auto and closed_forms.has_spot_formula(n, j)):
        return FitSample(n=n, value=closed_forms.spot_lucky_count(n, j), provenance=Provenance.CLOSED_FORM)

    cached = cache.load(Variant.ALL, n) if cache is not None else None
    if source == "oracle" or (use_auto and (cached is not None or n <= settings.FIT_ORACLE_MAX_N)):
        table = cached.table() if cached is not None else compute_lucky_table(n, cache=cache, workers=workers)
        return FitSample(n=n, value=column_sums(table)[j - 1], provenance=Provenance.ORACLE)

    if source in ("published", "auto"):
        try:
            value = published_tables.column_sum_constant(n, j)
        except KeyError:
            raise DomainError(f"no embedded column sum for n={n}, j={j}") from None
        return FitSample(n=n, value=value, provenance=Provenance.PUBLISHED_CONSTANT)

    raise DomainError(f"unknown sample source {source!r}")


def default_sample_range(j: int) -> List[int]:
    """j <= 5 时多留三个检验点；j = 6 只有内嵌表能给到 n = 10，刚好 j-1 个点"""
    if j <= 5:
        return list(range(j, j + max(j - 1, 1) + 3))
    return list(range(j, 11))


def exp_link_ratio(j: int, n: int) -> Fraction:
    """n^(j-2) (n-j+1)^(n-j+1) / (n+1)^(n-1)，n 趋于无穷时趋于 e^{-j}"""
    return (Fraction(n) ** (j - 2) * Fraction(n - j + 1) ** (n - j + 1)) / Fraction(n + 1) ** (n - 1)
