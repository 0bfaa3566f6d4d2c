"""
可导出的整数序列目录
每个序列给出 (index, value, provenance) 三元组；带参数的名字形如 column-3、c-2、narayana-7
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from config.settings import settings
from src.core.errors import DomainError, UnknownNameError
from src.core.models import Provenance
from src.core.numeric import narayana
from src.formulas import closed_forms, published_tables
from src.oracle.tables import column_sums
from src.verify.context import VerifyContext

logger = logging.getLogger(__name__)

Term = Tuple[int, int, Provenance]


@dataclass(frozen=True)
class SequenceSpec:
    name: str
    description: str
    terms: Callable[[int, VerifyContext], List[Term]]


def _oracle_allowed(n: int, ctx: VerifyContext) -> bool:
    limit = settings.ORACLE_LONG_MAX_N if ctx.allow_long else settings.ORACLE_MAX_N
    return n <= limit


def column_sum_term(n: int, j: int, ctx: VerifyContext) -> Term:
    """第 j 列列和：闭式 > oracle（缓存或上限内）> 内嵌常数"""
    if closed_forms.has_spot_formula(n, j):
        return n, closed_forms.spot_lucky_count(n, j), Provenance.CLOSED_FORM
    if _oracle_allowed(n, ctx):
        table = ctx.oracle(n).table()
        return n, column_sums(table)[j - 1], Provenance.ORACLE
    try:
        return n, published_tables.column_sum_constant(n, j), Provenance.PUBLISHED_CONSTANT
    except KeyError:
        raise DomainError(f"S_{j}({n}) needs the oracle beyond its limit; rerun with --allow-long") from None


def _column(j: int) -> Callable[[int, VerifyContext], List[Term]]:
    def terms(nmax: int, ctx: VerifyContext) -> List[Term]:
        return [column_sum_term(n, j, ctx) for n in range(j, nmax + 1)]
    return terms


def _subdiagonal(nmax: int, ctx: VerifyContext) -> List[Term]:
    return [column_sum_term(n, n - 1, ctx) for n in range(2, nmax + 1)]


def _diagonal(nmax: int, ctx: VerifyContext) -> List[Term]:
    """sum_i q_n(i, i)：车 i 恰好幸运地停在 i 号位"""
    out = []
    for n in range(1, nmax + 1):
        table = ctx.oracle(n).table()
        out.append((n, sum(table.at(i, i) for i in range(1, n + 1)), Provenance.ORACLE))
    return out


def _closed(fn: Callable[[int], int], start: int = 1) -> Callable[[int, VerifyContext], List[Term]]:
    def terms(nmax: int, ctx: VerifyContext) -> List[Term]:
        return [(n, fn(n), Provenance.CLOSED_FORM) for n in range(start, nmax + 1)]
    return terms


def _catalan_triangle(nmax: int, ctx: VerifyContext) -> List[Term]:
    """按行展平的 sum_k C_(n-1-k) C_k 三角"""
    values = [closed_forms.decreasing_spot_count(n, j) for n in range(1, nmax + 1) for j in range(1, n + 1)]
    return [(i, v, Provenance.CLOSED_FORM) for i, v in enumerate(values, start=1)]


def _lucky_column(k: int) -> Callable[[int, VerifyContext], List[Term]]:
    def terms(nmax: int, ctx: VerifyContext) -> List[Term]:
        return [(n, closed_forms.lucky_coefficients(n)[k - 1], Provenance.CLOSED_FORM)
                for n in range(k, nmax + 1)]
    return terms


def _narayana_row(n: int) -> Callable[[int, VerifyContext], List[Term]]:
    def terms(nmax: int, ctx: VerifyContext) -> List[Term]:
        return [(k, narayana(n, k), Provenance.CLOSED_FORM) for k in range(1, n + 1)]
    return terms


FIXED: Dict[str, SequenceSpec] = {
    spec.name: spec for spec in (
        SequenceSpec("subdiagonal", "lucky count of spot n-1, n >= 2", _subdiagonal),
        SequenceSpec("diagonal", "sum_i q_n(i, i)", _diagonal),
        SequenceSpec("total-lucky", "total lucky cars over all parking functions", _closed(closed_forms.total_lucky)),
        SequenceSpec("car-lucky-last", "parking functions whose last car is lucky",
                     _closed(lambda n: closed_forms.car_lucky_count(n, n))),
        SequenceSpec("catalan-triangle", "weakly-decreasing spot-j lucky counts, rows n", _catalan_triangle),
        SequenceSpec("decreasing-total", "total lucky spots over weakly-decreasing parking functions",
                     _closed(closed_forms.decreasing_total)),
    )
}

PATTERNS = (
    (re.compile(r"column-(\d+)$"), "column-<j>", _column, "lucky count of spot j"),
    (re.compile(r"c-(\d+)$"), "c-<k>", _lucky_column, "parking functions with exactly k lucky cars"),
    (re.compile(r"narayana-(\d+)$"), "narayana-<n>", _narayana_row, "Narayana row N(n, k)"),
)


def known_sequence_names() -> List[str]:
    return sorted(FIXED) + [label for _, label, _, _ in PATTERNS]


def resolve_sequence(name: str) -> SequenceSpec:
    if name in FIXED:
        return FIXED[name]
    for pattern, _, factory, description in PATTERNS:
        match = pattern.match(name)
        if match:
            value = int(match.group(1))
            if value < 1:
                raise DomainError(f"sequence parameter must be positive in {name!r}")
            return SequenceSpec(name, description, factory(value))
    raise UnknownNameError(f"unknown sequence {name!r}; known: {', '.join(known_sequence_names())}")


def sequence_terms(name: str, nmax: int, ctx: Optional[VerifyContext] = None) -> List[Term]:
    if nmax < 1:
        raise DomainError(f"nmax must be positive, got {nmax}")
    spec = resolve_sequence(name)
    terms = spec.terms(nmax, ctx or VerifyContext())
    logger.info(f"Exported {len(terms)} terms of {name} up to n={nmax}")
    return terms
