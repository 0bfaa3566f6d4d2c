"""
停车过程
n 辆车依次进入单行道，每辆车停在不小于偏好的第一个空位，找不到就驶离。
对外下标全部从 1 开始。
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.errors import DomainError, InvariantViolation
from src.core.models import OrderClass, ParkingOutcome

logger = logging.getLogger(__name__)

PreferenceVector = Tuple[int, ...]


def validate_prefs(prefs: Sequence[int]) -> PreferenceVector:
    """检查 1 <= prefs[i] <= n，返回不可变元组"""
    p = tuple(int(x) for x in prefs)
    n = len(p)
    if n < 1:
        raise DomainError("a preference vector needs at least one car")
    bad = [x for x in p if not 1 <= x <= n]
    if bad:
        raise DomainError(f"preferences must lie in [1, {n}], got {bad}")
    return p


def park(prefs: Sequence[int]) -> ParkingOutcome:
    """
    模拟停车过程
    失败（有车驶离）作为结果返回，不抛异常
    """
    p = validate_prefs(prefs)
    n = len(p)
    occupant: List[Optional[int]] = [None] * (n + 1)  # 下标 0 不用
    car_spot: Dict[int, Optional[int]] = {}
    lucky_cars = set()

    for car, want in enumerate(p, start=1):
        spot = want
        while spot <= n and occupant[spot] is not None:
            spot += 1
        if spot > n:
            car_spot[car] = None
            continue
        occupant[spot] = car
        car_spot[car] = spot
        if spot == want:
            lucky_cars.add(car)

    assignment = {spot: car for spot, car in enumerate(occupant) if car is not None}
    lucky_spots = {spot for spot, car in assignment.items() if p[car - 1] == spot}
    success = all(spot is not None for spot in car_spot.values())

    # 幸运车数 = 幸运位数（对失败结果同样成立）
    if len(lucky_cars) != len(lucky_spots):
        raise InvariantViolation(f"lucky car/spot counts differ for {p}")

    return ParkingOutcome(
        prefs=p,
        success=success,
        assignment=assignment,
        car_spot=car_spot,
        lucky_cars=frozenset(lucky_cars),
        lucky_spots=frozenset(lucky_spots),
    )


def satisfies_sorted_criterion(prefs: Sequence[int]) -> bool:
    """排序判据：第 i 小的偏好不超过 i"""
    return all(x <= i for i, x in enumerate(sorted(prefs), start=1))


def is_parking_function(prefs: Sequence[int]) -> bool:
    """模拟判定，并用排序判据交叉检查"""
    outcome = park(prefs)
    if outcome.success != satisfies_sorted_criterion(outcome.prefs):
        raise InvariantViolation(f"simulation and sorted criterion disagree on {outcome.prefs}")
    return outcome.success


def is_extendable(prefix: Sequence[int], n: int) -> bool:
    """
    前缀剪枝判据：m 项前缀能补全成长度 n 的停车函数
    当且仅当对每个 k 都有 #{entries <= k} + (n - m) >= k
    """
    m = len(prefix)
    counts = [0] * (n + 1)
    for x in prefix:
        counts[x] += 1
    at_most = 0
    for k in range(1, n + 1):
        at_most += counts[k]
        if at_most + (n - m) < k:
            return False
    return True


def classify_order(prefs: Sequence[int]) -> OrderClass:
    p = validate_prefs(prefs)
    pairs = list(zip(p, p[1:]))
    increasing = all(a <= b for a, b in pairs)
    decreasing = all(a >= b for a, b in pairs)
    if increasing and decreasing:
        return OrderClass.BOTH
    if increasing:
        return OrderClass.WEAKLY_INCREASING
    if decreasing:
        return OrderClass.WEAKLY_DECREASING
    return OrderClass.NEITHER
