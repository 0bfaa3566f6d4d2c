"""
精确算术与组合原语
整数直接用 Python int（任意精度），有理数用 fractions.Fraction，
多项式为有理系数的稠密表示。所有计数都从这里取二项式、Catalan、Narayana、调和数。
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

from src.core.errors import DomainError, InvariantViolation

# 对外契约中的“精确整数 / 精确有理数”
ExactInt = int
ExactRational = Fraction
Number = Union[int, Fraction]


def binomial(m: int, k: int) -> ExactInt:
    """C(m, k)；k 越界时返回 0（求和化简时沿用这个约定）"""
    if m < 0:
        raise DomainError(f"binomial requires m >= 0, got m={m}")
    if k < 0 or k > m:
        return 0
    return math.comb(m, k)


@lru_cache(maxsize=None)
def catalan(n: int) -> ExactInt:
    """C_n = C(2n, n) / (n + 1)"""
    if n < 0:
        raise DomainError(f"catalan requires n >= 0, got n={n}")
    return exact_div(math.comb(2 * n, n), n + 1)


def narayana(n: int, k: int) -> ExactInt:
    """N(n, k) = (1/k) C(n-1, k-1) C(n, k-1)：n 阶 Dyck 路径中恰有 k 个峰的条数"""
    if n < 1 or not 1 <= k <= n:
        raise DomainError(f"narayana requires 1 <= k <= n, got n={n}, k={k}")
    return exact_div(binomial(n - 1, k - 1) * binomial(n, k - 1), k)


@lru_cache(maxsize=None)
def harmonic(n: int) -> ExactRational:
    """H_n = 1 + 1/2 + ... + 1/n"""
    if n < 1:
        raise DomainError(f"harmonic requires n >= 1, got n={n}")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def factorial(n: int) -> ExactInt:
    return math.factorial(n)


def as_integer(value: Number, what: str = "value") -> ExactInt:
    """把应当为整数的有理数转成 int；不整除说明公式实现有误"""
    value = Fraction(value)
    if value.denominator != 1:
        raise InvariantViolation(f"{what} is not integral: {value}")
    return value.numerator


def exact_div(num: Number, den: Number, what: str = "quotient") -> ExactInt:
    """先按有理数精确相除，再断言整除"""
    if den == 0:
        raise DomainError("division by zero")
    return as_integer(Fraction(num) / Fraction(den), what)


@dataclass(frozen=True)
class ExactPoly:
    """
    有理系数稠密多项式
    coeffs[k] 是 x^k 的系数；末尾零被裁掉，零多项式是空元组
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        trimmed = [Fraction(c) for c in self.coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    # --- 构造 ---
    @classmethod
    def constant(cls, c: Number) -> "ExactPoly":
        return cls((Fraction(c),))

    @classmethod
    def linear(cls, slope: Number, intercept: Number) -> "ExactPoly":
        """slope * x + intercept"""
        return cls((Fraction(intercept), Fraction(slope)))

    @classmethod
    def product(cls, factors: Iterable["ExactPoly"]) -> "ExactPoly":
        result = cls.constant(1)
        for f in factors:
            result = result * f
        return result

    # --- 基本属性 ---
    def degree(self) -> int:
        """零多项式的次数记为 -1"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    # --- 运算 ---
    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __neg__(self) -> "ExactPoly":
        return ExactPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        return self + (-other)

    def __mul__(self, other: Union["ExactPoly", int, Fraction]) -> "ExactPoly":
        if not isinstance(other, ExactPoly):
            return ExactPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return ExactPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if ca == 0:
                continue
            for b, cb in enumerate(other.coeffs):
                out[a + b] += ca * cb
        return ExactPoly(tuple(out))

    __rmul__ = __mul__

    def evaluate(self, x: Number) -> Fraction:
        """Horner 求值"""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def differentiate(self, times: int = 1) -> "ExactPoly":
        poly = self
        for _ in range(times):
            poly = ExactPoly(tuple(k * c for k, c in enumerate(poly.coeffs) if k > 0))
        return poly

    def shift(self, a: Number) -> "ExactPoly":
        """返回关于 h 的多项式 p(a + h)"""
        result = ExactPoly()
        step = ExactPoly.linear(1, a)
        for c in reversed(self.coeffs):
            result = result * step + ExactPoly.constant(c)
        return result

    # --- 展示 ---
    def format(self, var: str = "x") -> str:
        """按降幂输出，例如 '2/3*n - 1/3'；零多项式输出 '0'"""
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()


def lagrange_interpolate(points: Sequence[Tuple[Number, Number]]) -> ExactPoly:
    """
    精确 Lagrange 插值
    返回经过全部点、次数小于点数的唯一多项式
    """
    if not points:
        raise DomainError("lagrange_interpolate needs at least one point")
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DomainError("lagrange_interpolate requires distinct x-coordinates")

    result = ExactPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = ExactPoly.constant(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis * ExactPoly.linear(1, -xj)
            denom *= xi - xj
        result = result + basis * (yi / denom)
    return result
