"""
Oracle 真值表
沿剪枝枚举树走一遍，边走边模拟停车：
  - 车 i 偏好 j 且幸运时，把该节点下的叶子数累加到 q[i][j]
  - 叶子处按幸运车数累加 c_k
前缀能补全 ⇔ 到目前为止没有车驶离（剩下的车都偏好 1 即可填满空位），
所以“新车找到车位”就是 enumerate_parking_functions 的剪枝判据。
并行按第一辆车的偏好拆成互不相交的子树，各自归约后按整数加法合并。
"""

import itertools
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from config.settings import settings
from src.core.errors import DomainError
from src.core.models import CacheEntry, LuckyDistribution, LuckyTable, Variant
from src.core.parking import park
from src.oracle.cache import GENERATOR_VERSION, SCHEMA_VERSION, OracleCache
from src.oracle.enumerate import check_limit, choice_range, enumerate_parking_functions

logger = logging.getLogger(__name__)
progress_logger = logging.getLogger("progress")


@dataclass
class Tally:
    """一棵子树的归约结果；合并只需逐项相加（交换幺半群）"""

    n: int
    q: List[List[int]] = field(default_factory=list)
    counts: List[int] = field(default_factory=list)
    leaves: int = 0

    def __post_init__(self):
        if not self.q:
            self.q = [[0] * self.n for _ in range(self.n)]
        if not self.counts:
            self.counts = [0] * self.n

    def merge(self, other: "Tally") -> "Tally":
        for i in range(self.n):
            row, other_row = self.q[i], other.q[i]
            for j in range(self.n):
                row[j] += other_row[j]
            self.counts[i] += other.counts[i]
        self.leaves += other.leaves
        return self


def tally_subtree(n: int, variant: Variant, first: int) -> Tally:
    """
    统计首项为 first 的子树
    模块级函数，便于 ProcessPoolExecutor 序列化
    """
    tally = Tally(n)
    q = tally.q
    counts = tally.counts
    occupied = [False] * (n + 2)
    occupied[n + 1] = True  # 哨兵：走到这里就是驶离

    def walk(depth: int, previous: int, lucky_so_far: int) -> int:
        if depth == n:
            counts[lucky_so_far - 1] += 1
            return 1
        leaves_here = 0
        row = q[depth]
        for want in choice_range(variant, n, previous):
            spot = want
            while occupied[spot]:
                spot += 1
            if spot > n:
                # 同一层更大的偏好只会更往后找，也必然驶离
                break
            occupied[spot] = True
            if spot == want:
                below = walk(depth + 1, want, lucky_so_far + 1)
                row[want - 1] += below
            else:
                below = walk(depth + 1, want, lucky_so_far)
            occupied[spot] = False
            leaves_here += below
        return leaves_here

    occupied[first] = True
    q[0][first - 1] = walk(1, first, 1)  # 第一辆车总是幸运
    tally.leaves = q[0][first - 1]
    return tally


def _first_choices(n: int, variant: Variant) -> Sequence[int]:
    return list(choice_range(variant, n, None))


def run_oracle(
    n: int,
    variant: Variant = Variant.ALL,
    *,
    workers: Optional[int] = None,
    allow_long: bool = False,
    cache: Optional[OracleCache] = None,
) -> CacheEntry:
    """
    计算 (variant, n) 的完整 oracle 结果
    有缓存时先读缓存；计算完整结束后才写缓存，中断不会留下部分条目
    """
    variant = Variant(variant)
    check_limit(n, variant, allow_long)
    if cache is not None:
        entry = cache.load(variant, n)
        if entry is not None:
            return entry

    workers = workers if workers is not None else settings.worker_count
    if n < settings.PARALLEL_MIN_N or variant != Variant.ALL:
        workers = 1

    started = time.perf_counter()
    total = Tally(n)
    firsts = _first_choices(n, variant)

    if workers <= 1:
        for first in firsts:
            total.merge(tally_subtree(n, variant, first))
            progress_logger.info(f"{variant.value} n={n}: subtree first={first} done "
                                 f"({time.perf_counter() - started:.1f}s)")
    else:
        logger.info(f"Enumerating {variant.value} n={n} with {workers} workers")
        executor = ProcessPoolExecutor(max_workers=workers)
        try:
            futures = [executor.submit(tally_subtree, n, variant, first) for first in firsts]
            # 按 first 的顺序合并，结果与串行完全一致
            for first, future in zip(firsts, futures):
                total.merge(future.result())
                progress_logger.info(f"{variant.value} n={n}: subtree first={first} done "
                                     f"({time.perf_counter() - started:.1f}s)")
        except BaseException:
            executor.shutdown(wait=False, cancel_futures=True)
            raise
        executor.shutdown()

    elapsed = time.perf_counter() - started
    logger.info(f"Oracle {variant.value} n={n}: {total.leaves} leaves in {elapsed:.2f}s")

    entry = CacheEntry(
        schema_version=SCHEMA_VERSION,
        variant=variant,
        n=n,
        generator_version=GENERATOR_VERSION,
        q=total.q,
        counts=total.counts,
        leaves=total.leaves,
        wall_time_seconds=elapsed,
    )
    if cache is not None:
        cache.store(entry)
    return entry


# --- 对外运算 ---
def compute_lucky_table(n: int, variant: Variant = Variant.ALL, **kwargs) -> LuckyTable:
    return run_oracle(n, variant, **kwargs).table()


def compute_lucky_distribution(n: int, variant: Variant = Variant.ALL, **kwargs) -> LuckyDistribution:
    return run_oracle(n, variant, **kwargs).distribution()


def tally_from_stream(n: int, variant: Variant = Variant.ALL) -> Tally:
    """
    逐个对枚举流调用 park() 再累加
    与 tally_subtree 的融合遍历互为交叉检查，只用于小 n
    """
    tally = Tally(n)
    for prefs in enumerate_parking_functions(n, variant):
        outcome = park(prefs)
        for car in outcome.lucky_cars:
            tally.q[car - 1][prefs[car - 1] - 1] += 1
        tally.counts[len(outcome.lucky_cars) - 1] += 1
        tally.leaves += 1
    return tally


def lucky_mask_counts(n: int) -> Counter:
    """
    按幸运车集合（位掩码，车 i 对应第 i-1 位）统计停车函数个数
    用来对照 Pollak 推广：任意 (L, U) 的计数都是若干掩码计数之和
    """
    check_limit(n, Variant.ALL)
    masks: Counter = Counter()
    occupied = [False] * (n + 2)
    occupied[n + 1] = True

    def walk(depth: int, mask: int) -> None:
        if depth == n:
            masks[mask] += 1
            return
        for want in range(1, n + 1):
            spot = want
            while occupied[spot]:
                spot += 1
            if spot > n:
                break
            occupied[spot] = True
            walk(depth + 1, mask | (1 << depth) if spot == want else mask)
            occupied[spot] = False

    walk(0, 0)
    return masks


def count_partial_pfs(s: int, t: int) -> int:
    """蛮力统计 s 辆车、t 个车位、所有车都能停下的偏好数"""
    if not 0 <= s <= t:
        raise DomainError(f"need 0 <= s <= t, got s={s}, t={t}")
    total = 0
    for prefs in itertools.product(range(1, t + 1), repeat=s):
        occupied = [False] * (t + 2)
        occupied[t + 1] = True
        ok = True
        for want in prefs:
            spot = want
            while occupied[spot]:
                spot += 1
            if spot > t:
                ok = False
                break
            occupied[spot] = True
        total += ok
    return total


@dataclass
class ExtremesReport:
    """每个多重集上，递增排列取最少幸运数、递减排列取最多幸运数"""
    n: int
    multisets: int = 0
    arrangements: int = 0
    violations: List[Tuple[int, ...]] = field(default_factory=list)


def monotone_extremes(n: int) -> ExtremesReport:
    """对每个构成停车函数的多重集遍历其全部不同排列（小 n 使用）"""
    report = ExtremesReport(n)
    for sorted_prefs in enumerate_parking_functions(n, Variant.WEAKLY_INCREASING):
        report.multisets += 1
        counts = {arrangement: len(park(arrangement).lucky_cars)
                  for arrangement in set(itertools.permutations(sorted_prefs))}
        report.arrangements += len(counts)
        low, high = min(counts.values()), max(counts.values())
        if counts[sorted_prefs] != low or counts[tuple(reversed(sorted_prefs))] != high:
            report.violations.append(sorted_prefs)
    return report


def row_sums(table: LuckyTable) -> List[int]:
    """第 i 行之和：第 i 辆车幸运的停车函数个数"""
    return [sum(row) for row in table.q]


def column_sums(table: LuckyTable) -> List[int]:
    """第 j 列之和：第 j 个车位幸运的停车函数个数"""
    return [sum(table.q[i][j] for i in range(table.n)) for j in range(table.n)]


def falling_moment(dist: LuckyDistribution, ell: int) -> Fraction:
    """经验阶乘矩 E(X(X-1)...(X-ell+1))"""
    total = Fraction(0)
    for k, c in enumerate(dist.counts, start=1):
        falling = 1
        for r in range(ell):
            falling *= k - r
        total += falling * c
    return total / dist.total


def mean_and_variance(dist: LuckyDistribution) -> tuple:
    mean = falling_moment(dist, 1)
    second = falling_moment(dist, 2) + mean
    return mean, second - mean * mean
