"""
停车函数的剪枝穷举
按字典序逐个产出停车函数；前缀不可补全时整棵子树剪掉，
因此全变体恰好访问 (n+1)^(n-1) 个叶子。
"""

import logging
from typing import Iterator, List, Optional

from config.settings import settings
from src.core.errors import DomainError, LimitExceededError
from src.core.models import Variant
from src.core.parking import PreferenceVector

logger = logging.getLogger(__name__)


def check_limit(n: int, variant: Variant, allow_long: bool = False) -> None:
    """全变体默认上限 ORACLE_MAX_N，--allow-long 放宽到 ORACLE_LONG_MAX_N；单调变体看 Catalan 可行性"""
    if n < 1:
        raise DomainError(f"n must be positive, got n={n}")
    if variant == Variant.ALL:
        limit = settings.ORACLE_LONG_MAX_N if allow_long else settings.ORACLE_MAX_N
        if n > limit:
            if allow_long:
                raise LimitExceededError(n, limit, hint="ORACLE_LONG_MAX_N")
            raise LimitExceededError(n, limit)
    elif n > settings.MONOTONE_MAX_N:
        raise LimitExceededError(n, settings.MONOTONE_MAX_N, hint="MONOTONE_MAX_N")


def choice_range(variant: Variant, n: int, previous: Optional[int]) -> range:
    """下一辆车可选的偏好：单调变体受上一辆车约束"""
    if previous is None or variant == Variant.ALL:
        return range(1, n + 1)
    if variant == Variant.WEAKLY_INCREASING:
        return range(previous, n + 1)
    return range(1, previous + 1)


def enumerate_parking_functions(
    n: int,
    variant: Variant = Variant.ALL,
    allow_long: bool = False,
    first: Optional[int] = None,
) -> Iterator[PreferenceVector]:
    """
    产出该变体的全部停车函数，每个恰好一次，按字典序
    first 给定时只产出首项为 first 的子树（并行拆分用）
    剪枝：m 项前缀可补全 ⇔ 对每个 k，#{entries <= k} + (n - m) >= k
    """
    check_limit(n, variant, allow_long)
    if first is not None and not 1 <= first <= n:
        raise DomainError(f"first preference must lie in [1, {n}], got {first}")
    prefix: List[int] = []
    # at_most[k] = 前缀中 <= k 的项数
    at_most = [0] * (n + 1)

    def extendable(m: int) -> bool:
        slack = n - m
        return all(at_most[k] + slack >= k for k in range(1, n + 1))

    def walk() -> Iterator[PreferenceVector]:
        m = len(prefix)
        if m == n:
            yield tuple(prefix)
            return
        previous = prefix[-1] if prefix else None
        options = choice_range(variant, n, previous)
        if m == 0 and first is not None:
            options = range(first, first + 1)
        for v in options:
            for k in range(v, n + 1):
                at_most[k] += 1
            prefix.append(v)
            if extendable(m + 1):
                yield from walk()
            prefix.pop()
            for k in range(v, n + 1):
                at_most[k] -= 1

    yield from walk()
