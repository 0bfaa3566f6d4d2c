"""
闭式公式
全部独立于 oracle 实现，用精确有理数运算；凡是“应当整除”的地方都在最后断言整数性。
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from src.core.errors import DomainError, InvariantViolation
from src.core.models import AsymptoticConstant, RestrictionSets, Variant
from src.core.numeric import (
    ExactPoly,
    as_integer,
    binomial,
    catalan,
    factorial,
    harmonic,
)

logger = logging.getLogger(__name__)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def _pow(base: int, exponent: int) -> Fraction:
    """允许负指数的精确幂；0^0 = 1"""
    return Fraction(base) ** exponent


# --- 1. Pollak 推广与幸运车多项式 ---
def restriction_sets(n: int, lucky: Iterable[int] = (), unlucky: Iterable[int] = ()) -> RestrictionSets:
    """构造 RestrictionSets；越界或重叠时抛 DomainError"""
    return RestrictionSets(n=n, L=frozenset(lucky), U=frozenset(unlucky))


def pollak_restricted_count(r: RestrictionSets) -> int:
    """L 中的车幸运、U 中的车不幸运的停车函数个数"""
    n = r.n
    value = Fraction(1)
    for i in r.L:
        value *= n + 2 - i
    for i in r.U:
        value *= i - 1
    value *= _pow(n + 1, n - len(r.L) - len(r.U) - 1)
    return as_integer(value, "restricted Pollak count")


def lucky_polynomial(n: int) -> ExactPoly:
    """f(x) = 1/(n+1) * prod_i ((n+2-i) x + (i-1))，x^k 的系数是 c_k"""
    _require(n >= 1, f"n must be positive, got n={n}")
    factors = (ExactPoly.linear(n + 2 - i, i - 1) for i in range(1, n + 1))
    return ExactPoly.product(factors) * Fraction(1, n + 1)


def lucky_coefficients(n: int) -> List[int]:
    """[c_1, ..., c_n]"""
    f = lucky_polynomial(n)
    return [as_integer(f.coefficient(k), f"c_{k}") for k in range(1, n + 1)]


def lucky_coefficient_by_subsets(n: int, k: int) -> int:
    """按子集求和直接计算 c_k，仅用于小 n 的第三条交叉检查路径"""
    _require(1 <= k <= n, f"k must lie in [1, {n}], got k={k}")
    total = 0
    cars = range(1, n + 1)
    for chosen in itertools.combinations(cars, k):
        picked = set(chosen)
        term = 1
        for i in cars:
            term *= (n + 2 - i) if i in picked else (i - 1)
        total += term
    return as_integer(Fraction(total, n + 1), f"c_{k}")


def c1_identity(n: int) -> int:
    return factorial(n - 1)


def cn_identity(n: int) -> int:
    return factorial(n)


def c2_identity(n: int) -> int:
    """c_2 = (n+1)(n-1)! H_{n-1} - (n-1)(n-1)!"""
    _require(n >= 2, f"c_2 identity needs n >= 2, got n={n}")
    value = (n + 1) * factorial(n - 1) * harmonic(n - 1) - (n - 1) * factorial(n - 1)
    return as_integer(value, "c_2")


def c_n_minus_1_identity(n: int) -> int:
    """c_{n-1} = (n+1)! H_n - 2n * n!"""
    _require(n >= 2, f"c_(n-1) identity needs n >= 2, got n={n}")
    value = factorial(n + 1) * harmonic(n) - 2 * n * factorial(n)
    return as_integer(value, "c_(n-1)")


# --- 2. 矩 ---
def factorial_moment(n: int, ell: int) -> Fraction:
    """E(X(X-1)...(X-ell+1)) = f^(ell)(1) / (n+1)^(n-1)；ell > n 时为 0"""
    _require(n >= 1, f"n must be positive, got n={n}")
    _require(ell >= 0, f"moment order must be non-negative, got {ell}")
    f = lucky_polynomial(n)
    return f.differentiate(ell).evaluate(1) / Fraction(n + 1) ** (n - 1)


def mean_lucky(n: int) -> Fraction:
    """n(n+3) / (2(n+1))，并与一阶阶乘矩核对"""
    _require(n >= 1, f"n must be positive, got n={n}")
    mean = Fraction(n * (n + 3), 2 * (n + 1))
    if mean != factorial_moment(n, 1):
        raise InvariantViolation(f"mean formula disagrees with f'(1) at n={n}")
    return mean


def variance_lucky(n: int) -> Fraction:
    """(n-1) n (n+4) / (6 (n+1)^2)，并与 E(X(X-1)) + E(X) - E(X)^2 核对"""
    _require(n >= 1, f"n must be positive, got n={n}")
    variance = Fraction((n - 1) * n * (n + 4), 6 * (n + 1) ** 2)
    mean = factorial_moment(n, 1)
    derived = factorial_moment(n, 2) + mean - mean * mean
    if variance != derived:
        raise InvariantViolation(f"variance formula disagrees with factorial moments at n={n}")
    return variance


def total_lucky(n: int) -> int:
    """所有长度为 n 的停车函数中幸运车的总数 = n(n+3)/2 * (n+1)^(n-2)"""
    _require(n >= 1, f"n must be positive, got n={n}")
    return as_integer(Fraction(n * (n + 3), 2) * _pow(n + 1, n - 2), "total lucky cars")


# --- 3. 部分停车函数与边界 ---
def partial_pf_count(s: int, t: int) -> int:
    """s 辆车停进 t 个车位且都能停下的偏好数 (t+1-s)(t+1)^(s-1)"""
    _require(t >= 1 and s >= 0, f"need s >= 0 and t >= 1, got s={s}, t={t}")
    _require(s <= t, f"need s <= t, got s={s}, t={t}")
    return as_integer((t + 1 - s) * _pow(t + 1, s - 1), "partial parking count")


def _bottom(n: int, j: int) -> int:
    return as_integer(binomial(n - 1, j - 1) * _pow(j, j - 2) * _pow(n - j + 1, n - j - 1), "q(n, j)")


def _left(n: int, i: int) -> int:
    return as_integer(_pow(n + 1, n - i - 1) * _pow(n, i - 2) * (2 * n + 1 - i), "q(i, 1)")


def q_border(n: int, i: int, j: int) -> int:
    """
    q_n(i, j) 的边界公式：Bottom (i = n)、Top (i = 1)、Right (j = n)、Left (j = 1)
    角点处所有适用公式必须一致
    """
    _require(n >= 1 and 1 <= i <= n and 1 <= j <= n, f"(i, j) = ({i}, {j}) outside [1, {n}]^2")
    values = {}
    if i == n:
        values["bottom"] = _bottom(n, j)
    if i == 1:
        values["top"] = sum(_bottom(n, k) for k in range(j, n + 1))
    if j == n:
        values["right"] = as_integer(_pow(n, n - 2), "q(i, n)")
    if j == 1:
        values["left"] = _left(n, i)
    if not values:
        raise DomainError(f"({i}, {j}) is an interior cell; no border formula applies")
    distinct = set(values.values())
    if len(distinct) != 1:
        raise InvariantViolation(f"border formulas disagree at n={n}, ({i}, {j}): {values}")
    return distinct.pop()


def border_cells(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
            if i in (1, n) or j in (1, n)]


def car_lucky_count(n: int, i: int) -> int:
    """第 i 辆车幸运的停车函数个数 (n+2-i)(n+1)^(n-2)"""
    _require(n >= 1 and 1 <= i <= n, f"car {i} outside [1, {n}]")
    return as_integer((n + 2 - i) * _pow(n + 1, n - 2), "car lucky count")


def car_lucky_probability(n: int, i: int) -> Fraction:
    _require(n >= 1 and 1 <= i <= n, f"car {i} outside [1, {n}]")
    return 1 - Fraction(i - 1, n + 1)


# --- 4. 车位幸运的列和 ---
SPOT_COLUMNS_WITH_FORMULA = (1, 2, 3, 4, 5)


def has_spot_formula(n: int, j: int) -> bool:
    return j == n or (j in SPOT_COLUMNS_WITH_FORMULA and n >= j)


def spot_lucky_count(n: int, j: int) -> int:
    """
    第 j 个车位幸运的停车函数个数；只支持 j <= 5 与 j = n
    其余列没有已知闭式，调用方应显式改用 oracle
    """
    _require(n >= 1, f"n must be positive, got n={n}")
    if not has_spot_formula(n, j):
        raise DomainError(f"no closed form for spot {j} at n={n} (only j <= 5 and j = n)")
    if j == n:
        return n ** (n - 1)
    base = _pow(n + 1, n - 1)
    if j == 1:
        value = base
    elif j == 2:
        value = Fraction(3, 4) * base - Fraction(1, 4) * _pow(n - 1, n - 1)
    elif j == 3:
        value = Fraction(2, 3) * base - Fraction(1, 3) * (2 * n - 1) * _pow(n - 2, n - 2)
    elif j == 4:
        value = (Fraction(5, 8) * base
                 - Fraction(1, 8) * (13 * n ** 2 - 26 * n + 9) * _pow(n - 3, n - 3))
    else:
        value = (Fraction(3, 5) * base
                 - Fraction(1, 30) * (118 * n ** 3 - 531 * n ** 2 + 659 * n - 192) * _pow(n - 4, n - 4))
    return as_integer(value, f"spot {j} lucky count")


def spot_lucky_probability(n: int, j: int) -> Fraction:
    return Fraction(spot_lucky_count(n, j), (n + 1) ** (n - 1))


# rho_j = rational_part - exp_coefficient * e^{-j}
_RHO_EXACT = {
    1: (Fraction(1), Fraction(0)),
    2: (Fraction(3, 4), Fraction(1, 4)),
    3: (Fraction(2, 3), Fraction(2, 3)),
    4: (Fraction(5, 8), Fraction(13, 8)),
    5: (Fraction(3, 5), Fraction(59, 15)),
}


def asymptotic_constant(j: int, rational_part: Fraction, exp_coefficient: Fraction) -> AsymptoticConstant:
    numeric = float(rational_part) - float(exp_coefficient) * math.exp(-j)
    return AsymptoticConstant(j=j, rational_part=rational_part,
                              exp_coefficient=exp_coefficient, numeric=numeric)


def rho_asymptotic(j: int) -> AsymptoticConstant:
    """第 j 个车位幸运的极限概率，j = 1..5"""
    if j not in _RHO_EXACT:
        raise DomainError(f"rho_j is only known for 1 <= j <= 5, got j={j}")
    return asymptotic_constant(j, *_RHO_EXACT[j])


def last_spot_limit() -> float:
    """最后一个车位幸运的极限概率 e^{-1}"""
    return math.exp(-1)


# --- 5. 弱递增 ---
def increasing_lucky_count(n: int, i: int) -> int:
    """弱递增停车函数中第 i 辆车（车位）幸运的个数 C_{i-1} C_{n-i+1}"""
    _require(n >= 1 and 1 <= i <= n, f"position {i} outside [1, {n}]")
    return catalan(i - 1) * catalan(n - i + 1)


def increasing_expected(n: int) -> Fraction:
    """期望幸运数 3n/(n+2)，与逐位求和核对"""
    _require(n >= 1, f"n must be positive, got n={n}")
    expected = Fraction(3 * n, n + 2)
    summed = Fraction(sum(increasing_lucky_count(n, i) for i in range(1, n + 1)), catalan(n))
    if expected != summed:
        raise InvariantViolation(f"increasing expectation mismatch at n={n}")
    return expected


# --- 6. 弱递减 ---
def ballot_paths(k: int, ell: int) -> int:
    """(0,0) 到 (k, ell) 且不低于 y = x 的格路数 (ell-k+1)/(ell+1) * C(k+ell, k)"""
    _require(k >= 0 and ell >= 0, f"need non-negative k, ell, got ({k}, {ell})")
    _require(ell >= k, f"need ell >= k, got k={k}, ell={ell}")
    return as_integer(Fraction(ell - k + 1, ell + 1) * binomial(k + ell, k), "ballot count")


def decreasing_q(n: int, i: int, j: int) -> int:
    """q^d_n(i, j)：i + j > n + 1 时为 0"""
    _require(n >= 1 and 1 <= i <= n and 1 <= j <= n, f"(i, j) = ({i}, {j}) outside [1, {n}]^2")
    if i + j > n + 1:
        return 0
    prefactor = Fraction((n - i - j + 2) ** 2, (n - i + 1) * (n - j + 1))
    value = prefactor * binomial(n - i + j - 1, j - 1) * binomial(n - j + i - 1, i - 1)
    return as_integer(value, f"q^d({i}, {j})")


def decreasing_spot_sum(n: int, j: int) -> int:
    """列和：对 i 求和 q^d_n(i, j)"""
    return sum(decreasing_q(n, i, j) for i in range(1, n + 2 - j))


def decreasing_spot_convolution(n: int, j: int) -> int:
    """Catalan 卷积尾和 sum_{k=0}^{n-j} C_{n-1-k} C_k"""
    return sum(catalan(n - 1 - k) * catalan(k) for k in range(0, n - j + 1))


def decreasing_spot_count(n: int, j: int) -> int:
    """两种表达式都算，不一致视为致命错误"""
    _require(n >= 1 and 1 <= j <= n, f"spot {j} outside [1, {n}]")
    by_sum = decreasing_spot_sum(n, j)
    by_convolution = decreasing_spot_convolution(n, j)
    if by_sum != by_convolution:
        raise InvariantViolation(
            f"column sum {by_sum} != Catalan convolution {by_convolution} at n={n}, j={j}"
        )
    return by_sum


def decreasing_total(n: int) -> int:
    """所有弱递减停车函数中幸运车位的总数 C(2n, n) / 2"""
    _require(n >= 1, f"n must be positive, got n={n}")
    return as_integer(Fraction(binomial(2 * n, n), 2), "decreasing total")


def decreasing_total_by_weights(n: int) -> int:
    """同一总数的另一条路线：sum_k (n-k) C_(n-1-k) C_k"""
    _require(n >= 1, f"n must be positive, got n={n}")
    return sum((n - k) * catalan(n - 1 - k) * catalan(k) for k in range(n))


def decreasing_expected(n: int) -> Fraction:
    """期望 (n+1)/2，并要求 期望 * C_n = 总数"""
    expected = Fraction(n + 1, 2)
    if expected * catalan(n) != decreasing_total(n):
        raise InvariantViolation(f"decreasing expectation inconsistent at n={n}")
    return expected


def q_closed_form(n: int, i: int, j: int, variant: Variant = Variant.ALL) -> Optional[int]:
    """表格里某一格可用的闭式值；没有闭式时返回 None"""
    variant = Variant(variant)
    if variant == Variant.WEAKLY_DECREASING:
        return decreasing_q(n, i, j)
    if variant == Variant.WEAKLY_INCREASING:
        return increasing_lucky_count(n, i) if i == j else 0
    if i in (1, n) or j in (1, n):
        return q_border(n, i, j)
    return None
