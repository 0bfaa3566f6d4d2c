"""
Dyck 路径及其双射
路径按步序列存成 'N'/'E' 字符串，坐标按需计算。
列（停车位）从左到右编号；递增停车函数的行（车）自下而上编号，递减的自上而下。
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from src.core.errors import DomainError
from src.core.models import Peak
from src.core.parking import PreferenceVector, satisfies_sorted_criterion, validate_prefs

logger = logging.getLogger(__name__)

NORTH = "N"
EAST = "E"


@dataclass(frozen=True)
class DyckPath:
    """从 (0,0) 到 (n,n) 的格路，北步数始终不少于东步数"""

    steps: str = ""

    def __post_init__(self):
        height = 0
        for s in self.steps:
            if s == NORTH:
                height += 1
            elif s == EAST:
                height -= 1
            else:
                raise DomainError(f"path steps must be 'N' or 'E', got {s!r}")
            if height < 0:
                raise DomainError(f"path {self.steps!r} goes below the diagonal")
        if height != 0:
            raise DomainError(f"path {self.steps!r} does not end on the diagonal")

    @classmethod
    def parse(cls, text: str) -> "DyckPath":
        return cls(text.strip().upper())

    @classmethod
    def staircase(cls, n: int) -> "DyckPath":
        return cls("NE" * n)

    @property
    def size(self) -> int:
        return len(self.steps) // 2

    def points(self) -> List[Tuple[int, int]]:
        x = y = 0
        pts = [(0, 0)]
        for s in self.steps:
            if s == NORTH:
                y += 1
            else:
                x += 1
            pts.append((x, y))
        return pts

    def __str__(self) -> str:
        return self.steps


def enumerate_dyck(n: int) -> Iterator[DyckPath]:
    """按字典序（N < E）生成全部 n 阶 Dyck 路径，每条恰好一次"""
    if n < 0:
        raise DomainError(f"enumerate_dyck requires n >= 0, got n={n}")

    def walk(prefix: List[str], north: int, east: int) -> Iterator[str]:
        if north == n and east == n:
            yield "".join(prefix)
            return
        if north < n:
            prefix.append(NORTH)
            yield from walk(prefix, north + 1, east)
            prefix.pop()
        if east < north:
            prefix.append(EAST)
            yield from walk(prefix, north, east + 1)
            prefix.pop()

    for steps in walk([], 0, 0):
        # 生成过程已保证合法，跳过 __post_init__ 的重复检查
        path = object.__new__(DyckPath)
        object.__setattr__(path, "steps", steps)
        yield path


# --- 递增 / 递减停车函数双射 ---
def dyck_to_increasing(path: DyckPath) -> PreferenceVector:
    """第 i 个北步左侧的东步数 + 1 就是第 i 辆车（自下而上）的偏好"""
    prefs = []
    east = 0
    for s in path.steps:
        if s == NORTH:
            prefs.append(east + 1)
        else:
            east += 1
    return tuple(prefs)


def increasing_to_dyck(prefs: Sequence[int]) -> DyckPath:
    p = validate_prefs(prefs)
    if any(a > b for a, b in zip(p, p[1:])):
        raise DomainError(f"{p} is not weakly increasing")
    if not satisfies_sorted_criterion(p):
        raise DomainError(f"{p} is not a parking function")
    n = len(p)
    steps = []
    x = 0
    for want in p:
        steps.append(EAST * (want - 1 - x))
        x = want - 1
        steps.append(NORTH)
    steps.append(EAST * (n - x))
    return DyckPath("".join(steps))


def dyck_to_decreasing(path: DyckPath) -> PreferenceVector:
    """行自上而下编号，即递增像的逆序"""
    return tuple(reversed(dyck_to_increasing(path)))


def decreasing_to_dyck(prefs: Sequence[int]) -> DyckPath:
    p = validate_prefs(prefs)
    if any(a < b for a, b in zip(p, p[1:])):
        raise DomainError(f"{p} is not weakly decreasing")
    return increasing_to_dyck(tuple(reversed(p)))


# --- 峰与反射 ---
def peaks(path: DyckPath) -> List[Peak]:
    """
    所有“北步后紧跟东步”的拐角
    北步 (j-1, n-i) -> (j-1, n-i+1) 再东步到 (j, n-i+1) 对应 (car=i, spot=j)
    """
    n = path.size
    found = []
    x = y = 0
    steps = path.steps
    for t, s in enumerate(steps):
        if s == NORTH:
            if t + 1 < len(steps) and steps[t + 1] == EAST:
                found.append(Peak(car=n - y, spot=x + 1, corner=(x, y + 1)))
            y += 1
        else:
            x += 1
    return found


def reflect_antidiagonal(path: DyckPath) -> DyckPath:
    """沿 x + y = n 翻转：逆序并交换 N/E；峰 (i, j) 变为 (j, i)"""
    swap = {NORTH: EAST, EAST: NORTH}
    return DyckPath("".join(swap[s] for s in reversed(path.steps)))


def _check_column(path: DyckPath, j: int) -> None:
    if not 1 <= j <= path.size:
        raise DomainError(f"column {j} outside [1, {path.size}]")


def has_peak_in_column(path: DyckPath, j: int) -> bool:
    """第 j 列有峰 ⇔ 直线 x = j-1 上至少有一个北步"""
    _check_column(path, j)
    x = 0
    for s in path.steps:
        if s == EAST:
            x += 1
            if x > j - 1:
                return False
        elif x == j - 1:
            return True
    return False


# --- 第 j 列峰的拆分 / 合并 ---
def split_at_column(path: DyckPath, j: int) -> Tuple[DyckPath, DyckPath, int]:
    """
    把第 j 列有峰的 n 阶路径拆成 (n-1-k 阶, k 阶) 两条路径
    (j-1, l) 是首次到达 x = j-1 的点，(s, t) 是此后首次回到直线 y = x + l - j + 1 的点，k = s - j
    """
    if path.size == 0:
        raise DomainError("cannot split the empty path")
    _check_column(path, j)
    steps = path.steps

    # 首次到达 x = j-1 的位置：第 j-1 个东步之后（j = 1 时为原点）
    start = 0
    east = 0
    while east < j - 1:
        if steps[start] == EAST:
            east += 1
        start += 1
    if start >= len(steps) or steps[start] != NORTH:
        raise DomainError(f"path {steps} has no peak in column {j}")

    # 从 start 处的北步之后开始，找回到同一条对角线的东步
    offset = 1
    end = start + 1
    while offset > 0:
        offset += 1 if steps[end] == NORTH else -1
        end += 1
    # steps[start] 是插入的北步，steps[end-1] 是插入的东步
    small = steps[start + 1:end - 1]
    big = steps[:start] + steps[end:]
    k = len(small) // 2
    return DyckPath(big), DyckPath(small), k


def merge(big: DyckPath, small: DyckPath, j: int) -> DyckPath:
    """split_at_column 的逆：在大路径首次到达 x = j-1 处插入 N + 小路径 + E"""
    if j < 1:
        raise DomainError(f"column must be positive, got {j}")
    if j - 1 > big.size:
        n = big.size + small.size + 1
        raise DomainError(
            f"inconsistent sizes: k={small.size} exceeds n-j={n - j} "
            f"(path of size {big.size} never reaches x={j - 1})"
        )
    steps = big.steps
    cut = 0
    east = 0
    while east < j - 1:
        if steps[cut] == EAST:
            east += 1
        cut += 1
    return DyckPath(steps[:cut] + NORTH + small.steps + EAST + steps[cut:])


def render_grid(path: DyckPath) -> str:
    """文本网格：'#' 为路径经过的单元边界点，'.' 为对角线上方其余位置"""
    n = path.size
    on_path = set(path.points())
    lines = []
    for y in range(n, -1, -1):
        row = []
        for x in range(n + 1):
            if (x, y) in on_path:
                row.append("#")
            elif y >= x:
                row.append(".")
            else:
                row.append(" ")
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines)
