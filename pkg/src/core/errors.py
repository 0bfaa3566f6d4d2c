"""
异常层级
所有对外抛出的错误都继承 LuckyParkError，CLI 据此映射退出码
"""

from pathlib import Path


class LuckyParkError(Exception):
    """项目内所有异常的基类"""


class DomainError(LuckyParkError, ValueError):
    """参数不在运算的定义域内"""


class UnknownNameError(DomainError):
    """未知的验证套件 / 序列名称"""


class InsufficientSamplesError(DomainError):
    """拟合所需的样本点不足"""


class LimitExceededError(LuckyParkError):
    """n 超过配置的枚举上限且没有显式放行"""

    def __init__(self, n: int, limit: int, hint: str = "--allow-long"):
        self.n = n
        self.limit = limit
        super().__init__(f"n={n} exceeds the oracle limit {limit} (use {hint} to override)")


class InvariantViolation(LuckyParkError, AssertionError):
    """内部自检失败：两条独立计算路径给出不同结果"""


class CacheError(LuckyParkError):
    """缓存读写错误的基类"""

    def __init__(self, path: Path, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class CacheIntegrityError(CacheError):
    """缓存文件损坏或内容不自洽"""


class CacheSchemaError(CacheError):
    """缓存文件的 schema_version 与当前版本不符"""
