"""
table 命令的数据装配
默认 source=both：oracle 与闭式都算，凡是两边都有值的格子必须一致，否则抛 InvariantViolation。
"""

import logging
from typing import List, Optional

from src.cli.render import Grid
from src.core.errors import DomainError, InvariantViolation, LimitExceededError
from src.core.models import Provenance, Variant
from src.core.numeric import narayana
from src.formulas import closed_forms, published_tables
from src.oracle.cache import GENERATOR_VERSION
from src.oracle.tables import column_sums
from src.verify.context import VerifyContext

logger = logging.getLogger(__name__)

TABLE_KINDS = ("q", "qinc", "qdec", "columns", "distribution")
SOURCES = ("both", "oracle", "closed-form")

_KIND_VARIANT = {
    "q": Variant.ALL,
    "qinc": Variant.WEAKLY_INCREASING,
    "qdec": Variant.WEAKLY_DECREASING,
}

_EMBEDDED_Q7 = {
    Variant.ALL: published_tables.Q7_ALL,
    Variant.WEAKLY_DECREASING: published_tables.Q7_DECREASING,
}


def _labels(n: int) -> List[str]:
    return [str(k) for k in range(1, n + 1)]


def _mismatch(what: str, got: int, expected: int, where: str) -> InvariantViolation:
    return InvariantViolation(f"{what} mismatch at {where}: oracle {got} != {expected}")


def build_grid(kind: str, n: int, source: str, ctx: VerifyContext,
               variant: Variant = Variant.ALL) -> Grid:
    if kind not in TABLE_KINDS:
        raise DomainError(f"unknown table kind {kind!r}; expected one of {', '.join(TABLE_KINDS)}")
    if source not in SOURCES:
        raise DomainError(f"unknown source {source!r}; expected one of {', '.join(SOURCES)}")
    if n < 1:
        raise DomainError(f"n must be positive, got n={n}")
    if kind == "columns":
        grid = columns_grid(n, source, ctx)
    elif kind == "distribution":
        grid = distribution_grid(n, source, ctx, Variant(variant))
    else:
        grid = q_grid(n, _KIND_VARIANT[kind], source, ctx)
    grid.metadata = {
        "kind": kind,
        "n": n,
        "variant": grid.metadata["variant"],
        "generator_version": GENERATOR_VERSION,
        "source": source,
    }
    return grid


# --- q 矩阵 ---
def q_grid(n: int, variant: Variant, source: str, ctx: VerifyContext) -> Grid:
    oracle = ctx.oracle(n, variant).table() if source != "closed-form" else None
    embedded = _EMBEDDED_Q7.get(variant) if n == 7 else None

    rows: List[List[int]] = []
    provenance: List[List[Provenance]] = []
    for i in range(1, n + 1):
        row, prov = [], []
        for j in range(1, n + 1):
            closed = closed_forms.q_closed_form(n, i, j, variant)
            if oracle is not None:
                value = oracle.at(i, j)
                if source == "both" and closed is not None and closed != value:
                    raise _mismatch("q closed form", value, closed, f"n={n}, ({i}, {j})")
                mark = Provenance.CLOSED_FORM if source == "both" and closed is not None else Provenance.ORACLE
            elif closed is not None:
                value, mark = closed, Provenance.CLOSED_FORM
            elif embedded is not None:
                value, mark = embedded[i - 1][j - 1], Provenance.PUBLISHED_CONSTANT
            else:
                raise DomainError(f"cell ({i}, {j}) of q_{n} has no closed form; use --source oracle or both")
            row.append(value)
            prov.append(mark)
        rows.append(row)
        provenance.append(prov)

    if source == "both" and embedded is not None and rows != embedded:
        raise InvariantViolation(f"q_{n} ({variant.value}) differs from the embedded published table")
    return Grid(
        title=f"q_{n}(i, j) variant={variant.value}",
        column_labels=_labels(n),
        row_labels=_labels(n),
        rows=rows,
        provenance=provenance,
        metadata={"variant": variant.value},
    )


# --- 列和 ---
def _oracle_column_sums(n: int, ctx: VerifyContext) -> Optional[List[int]]:
    """oracle 不可用（超上限且无缓存）时返回 None"""
    try:
        return column_sums(ctx.oracle(n).table())
    except LimitExceededError as e:
        logger.warning(f"Column sums for n={n} fall back to closed forms and embedded constants: {e}")
        return None


def _published_column_sum(n: int, j: int) -> Optional[int]:
    try:
        return published_tables.column_sum_constant(n, j)
    except KeyError:
        return None


def columns_grid(n: int, source: str, ctx: VerifyContext) -> Grid:
    sums = _oracle_column_sums(n, ctx) if source != "closed-form" else None
    if source == "oracle" and sums is None:
        ctx.oracle(n)  # 重新抛出 LimitExceededError

    labels, values, marks = [], [], []
    for j in range(1, n + 1):
        closed = closed_forms.spot_lucky_count(n, j) if closed_forms.has_spot_formula(n, j) else None
        listed = _published_column_sum(n, j)
        if sums is not None:
            value = sums[j - 1]
            if source == "both":
                for what, other in (("spot closed form", closed), ("embedded column sum", listed)):
                    if other is not None and other != value:
                        raise _mismatch(what, value, other, f"n={n}, j={j}")
            mark = Provenance.CLOSED_FORM if source == "both" and closed is not None else Provenance.ORACLE
        elif closed is not None:
            if listed is not None and listed != closed:
                raise InvariantViolation(f"closed form {closed} != embedded {listed} at n={n}, j={j}")
            value, mark = closed, Provenance.CLOSED_FORM
        elif listed is not None:
            value, mark = listed, Provenance.PUBLISHED_CONSTANT
        else:
            if source == "closed-form":
                raise DomainError(f"spot {j} at n={n} has no closed form or embedded value; use --source oracle")
            logger.warning(f"Spot {j} at n={n} skipped: needs the oracle (--allow-long)")
            continue
        labels.append(str(j))
        values.append(value)
        marks.append(mark)

    return Grid(
        title=f"spot-lucky counts, n={n}",
        column_labels=labels,
        rows=[values],
        provenance=[marks],
        metadata={"variant": Variant.ALL.value},
    )


# --- 幸运数分布 ---
def _closed_distribution(n: int, variant: Variant) -> Optional[List[int]]:
    if variant == Variant.ALL:
        return closed_forms.lucky_coefficients(n)
    if variant == Variant.WEAKLY_DECREASING:
        return [narayana(n, k) for k in range(1, n + 1)]
    return None


def distribution_grid(n: int, source: str, ctx: VerifyContext, variant: Variant) -> Grid:
    closed = _closed_distribution(n, variant) if source != "oracle" else None
    if source == "closed-form":
        if closed is None:
            raise DomainError(f"no closed form for the {variant.value} lucky distribution; use --source oracle")
        counts, mark = closed, Provenance.CLOSED_FORM
    else:
        counts = ctx.oracle(n, variant).counts
        mark = Provenance.ORACLE
        if closed is not None:
            for k, (got, expected) in enumerate(zip(counts, closed), start=1):
                if got != expected:
                    raise _mismatch("lucky distribution", got, expected, f"n={n}, k={k}")
            mark = Provenance.CLOSED_FORM
    return Grid(
        title=f"c_k, n={n} variant={variant.value}",
        column_labels=_labels(n),
        rows=[list(counts)],
        provenance=[[mark] * n],
        metadata={"variant": variant.value},
    )
