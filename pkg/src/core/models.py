from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, computed_field, model_validator

from src.core.errors import DomainError
from src.core.numeric import ExactPoly


# --- 1. 基础枚举 ---
class Variant(str, Enum):
    """枚举 / 统计的偏好顺序变体"""
    ALL = "all"
    WEAKLY_INCREASING = "weakly_increasing"
    WEAKLY_DECREASING = "weakly_decreasing"


class OrderClass(str, Enum):
    """偏好向量的单调类别"""
    WEAKLY_INCREASING = "weakly_increasing"
    WEAKLY_DECREASING = "weakly_decreasing"
    BOTH = "both"          # 常数向量或 n = 1
    NEITHER = "neither"


class Provenance(str, Enum):
    """每个数字的来源"""
    ORACLE = "oracle"
    CLOSED_FORM = "closed-form"
    PUBLISHED_CONSTANT = "embedded-paper-constant"


class OutputFormat(str, Enum):
    TEXT = "text-table"
    CSV = "csv"
    JSON = "json"
    BFILE = "bfile"


# --- 2. 停车过程 ---
class ParkingOutcome(BaseModel):
    """
    一次停车过程的结果
    失败时也保留完整的部分分配，方便调试和 simulate 命令展示
    """
    model_config = ConfigDict(frozen=True)

    prefs: Tuple[int, ...]
    success: bool
    assignment: Dict[int, int] = Field(default_factory=dict, description="spot -> car")
    car_spot: Dict[int, Optional[int]] = Field(default_factory=dict, description="car -> spot, None 表示驶离")
    lucky_cars: FrozenSet[int] = frozenset()
    lucky_spots: FrozenSet[int] = frozenset()

    @computed_field
    @property
    def exited_cars(self) -> List[int]:
        return sorted(car for car, spot in self.car_spot.items() if spot is None)

    @property
    def n(self) -> int:
        return len(self.prefs)


# --- 3. Oracle 表 ---
class LuckyTable(BaseModel):
    """
    q_n(i, j) 矩阵，内部按 0 起始存储，对外用 at(i, j) 的 1 起始下标
    """
    n: int = Field(..., ge=1)
    variant: Variant = Variant.ALL
    q: List[List[int]]

    @model_validator(mode="after")
    def _check_shape(self) -> "LuckyTable":
        if len(self.q) != self.n or any(len(row) != self.n for row in self.q):
            raise ValueError(f"q must be {self.n}x{self.n}")
        return self

    def at(self, i: int, j: int) -> int:
        return self.q[i - 1][j - 1]


class LuckyDistribution(BaseModel):
    """counts[k-1] = c_k：恰有 k 辆幸运车的停车函数个数"""
    n: int = Field(..., ge=1)
    variant: Variant = Variant.ALL
    counts: List[int]

    @model_validator(mode="after")
    def _check_length(self) -> "LuckyDistribution":
        if len(self.counts) != self.n:
            raise ValueError(f"counts must have length {self.n}")
        return self

    def c(self, k: int) -> int:
        return self.counts[k - 1]

    @property
    def total(self) -> int:
        return sum(self.counts)


class CacheEntry(BaseModel):
    """磁盘缓存的一条记录，一个 (variant, n) 一个文件"""
    schema_version: int
    variant: Variant
    n: int = Field(..., ge=1)
    generator_version: str
    q: List[List[int]]
    counts: List[int]
    leaves: int = Field(..., ge=0)
    wall_time_seconds: float = Field(..., ge=0)

    def table(self) -> LuckyTable:
        return LuckyTable(n=self.n, variant=self.variant, q=self.q)

    def distribution(self) -> LuckyDistribution:
        return LuckyDistribution(n=self.n, variant=self.variant, counts=self.counts)


# --- 4. 闭式公式 ---
class RestrictionSets(BaseModel):
    """L 中的车必须幸运，U 中的车必须不幸运"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    L: FrozenSet[int] = frozenset()
    U: FrozenSet[int] = frozenset()

    def __init__(self, **data):
        # 校验失败统一抛 DomainError
        try:
            super().__init__(**data)
        except ValidationError as e:
            raise DomainError("; ".join(err["msg"] for err in e.errors())) from e

    @model_validator(mode="after")
    def _check_sets(self) -> "RestrictionSets":
        for name, cars in (("L", self.L), ("U", self.U)):
            bad = [i for i in cars if not 1 <= i <= self.n]
            if bad:
                raise ValueError(f"{name} contains cars outside [1, {self.n}]: {sorted(bad)}")
        if self.L & self.U:
            raise ValueError(f"L and U overlap: {sorted(self.L & self.U)}")
        return self


class AsymptoticConstant(BaseModel):
    """rho_j = rational_part - exp_coefficient * e^{-j}；精确部分保持为有理数对"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    j: int = Field(..., ge=1)
    rational_part: Fraction
    exp_coefficient: Fraction
    numeric: float

    def exact_text(self) -> str:
        if self.exp_coefficient == 0:
            return str(self.rational_part)
        return f"{self.rational_part} - {self.exp_coefficient}*e^-{self.j}"


# --- 5. Dyck 路径 ---
class Peak(BaseModel):
    """峰：北步紧跟东步，对应递减停车函数中“第 car 辆车偏好 spot 且幸运”"""
    model_config = ConfigDict(frozen=True)

    car: int
    spot: int
    corner: Tuple[int, int]


# --- 6. 猜想拟合 ---
class FitSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    value: int
    provenance: Provenance


class ConjectureFit(BaseModel):
    """
    f_j(n) 的精确拟合结果
    degree_claim_holds 为 None 表示样本刚好够插值、没有留出点（探索性结果）
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    j: int
    f_poly: ExactPoly
    degree_claim_holds: Optional[bool]
    r_j: Fraction
    predicted_rho: AsymptoticConstant
    samples_used: List[FitSample]
    support: List[int] = Field(default_factory=list, description="参与插值的 n")
    held_out: List[int] = Field(default_factory=list, description="用于检验的 n")
    mismatches: List[int] = Field(default_factory=list, description="留出点中不一致的 n")

    @property
    def exploratory(self) -> bool:
        return self.degree_claim_holds is None


# --- 7. 验证报告 ---
class CheckResult(BaseModel):
    name: str
    reference: str
    passed: bool
    detail: str = ""


class SuiteResult(BaseModel):
    suite: str
    nmax: int
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def record(self, name: str, reference: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name=name, reference=reference, passed=passed, detail=detail))
        return passed
