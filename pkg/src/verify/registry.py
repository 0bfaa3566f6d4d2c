"""
验证套件注册表
管理所有可运行的恒等式套件，支持装饰器注册和按名检索
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from src.core.errors import UnknownNameError
from src.core.models import SuiteResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Suite:
    """一个验证套件：名称、出处说明、默认 nmax 和执行函数"""
    name: str
    description: str
    default_nmax: int
    run: Callable[..., SuiteResult]


class SuiteRegistry:
    """
    套件注册表
    单例模式管理所有套件
    """
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._suites: Dict[str, Suite] = {}
        return cls._instance

    def register(self, suite: Suite) -> None:
        self._suites[suite.name] = suite
        logger.debug(f"Registered suite: {suite.name}")

    def get(self, name: str) -> Optional[Suite]:
        return self._suites.get(name)

    def require(self, name: str) -> Suite:
        """按名获取，不存在时抛 UnknownNameError 并列出可用套件"""
        suite = self.get(name)
        if suite is None:
            raise UnknownNameError(f"unknown suite {name!r}; known suites: {', '.join(self.list_suites())}")
        return suite

    def get_all(self) -> List[Suite]:
        return [self._suites[name] for name in self.list_suites()]

    def list_suites(self) -> List[str]:
        return sorted(self._suites)

    def clear(self) -> None:
        self._suites.clear()


# 全局单例实例
suite_registry = SuiteRegistry()


def register_suite(name: str, description: str, default_nmax: int):
    """
    装饰器方式注册套件

    使用示例:
        @register_suite("rows", "row sums = (n+2-i)(n+1)^(n-2)", default_nmax=7)
        def rows_suite(nmax, ctx):
            ...
    """
    def decorator(func: Callable[..., SuiteResult]) -> Callable[..., SuiteResult]:
        suite_registry.register(Suite(name=name, description=description, default_nmax=default_nmax, run=func))
        return func
    return decorator
