from pathlib import Path
from typing import Optional

import psutil
from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# 1. 动态获取项目根目录
# 缓存、日志路径都基于项目根路径，而不是运行命令的当前路径
BASE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """
    应用配置类
    自动读取环境变量和 .env 文件（命令行参数优先级更高）
    """

    # --- Application Config ---
    ENV: str = "development"
    DEBUG: bool = False
    BASE_DIR: Path = BASE_DIR

    # --- Storage Config ---
    # 环境变量 LUCKYPARK_CACHE_DIR 可以覆盖缓存目录
    LUCKYPARK_CACHE_DIR: str = str(BASE_DIR / "data" / "cache")
    LOG_DIR: str = str(BASE_DIR / "logs")
    CACHE_LOCK_TIMEOUT: float = Field(30.0, gt=0)

    # --- Oracle Config ---
    ORACLE_MAX_N: int = Field(9, ge=1)         # 全变体默认上限 (~10^8 叶子)
    ORACLE_LONG_MAX_N: int = Field(10, ge=1)   # --allow-long 能到达的上限
    MONOTONE_MAX_N: int = Field(15, ge=1)      # 单调变体 / Dyck 路径的 Catalan 可行上限
    WORKERS: Optional[int] = Field(None, ge=1) # None 表示按物理核心数
    PARALLEL_MIN_N: int = Field(7, ge=1)       # 小于该值时串行枚举

    # --- Conjecture Lab Config ---
    FIT_ORACLE_MAX_N: int = Field(8, ge=1)     # 无缓存时拟合最多用 oracle 算到的 n

    # --- Pydantic 配置 ---
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    @model_validator(mode="after")
    def _check_limits(self) -> "Settings":
        if self.ORACLE_MAX_N > self.ORACLE_LONG_MAX_N:
            raise ValueError("ORACLE_MAX_N must not exceed ORACLE_LONG_MAX_N")
        return self

    @property
    def cache_dir(self) -> Path:
        return Path(self.LUCKYPARK_CACHE_DIR)

    @property
    def worker_count(self) -> int:
        """实际使用的进程数；psutil 拿不到物理核心数时退回逻辑核心数"""
        if self.WORKERS:
            return self.WORKERS
        return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


# 2. 实例化并导出
# 单例：其他模块直接导入这个 settings 对象即可
settings = Settings()
