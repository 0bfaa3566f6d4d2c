"""
Oracle 结果的磁盘缓存
每个 (variant, n) 一个 JSON 文件，矩阵按行存十进制整数。
写入先落临时文件再 rename；同一个 key 的并发写入由 .lock 文件串行化，
持有者被杀死后留下的锁会在下一次写入时被识别并清除。

文件格式 (schema_version = 1):
    {
      "schema_version": 1,
      "variant": "all",
      "n": 7,
      "generator_version": "1",
      "leaves": 262144,
      "wall_time_seconds": 3.2,
      "counts": [720, ...],
      "q": [[65536, ...], ...]
    }
"""

import json
import logging
import os
import tempfile
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import psutil
from pydantic import ValidationError

from config.settings import settings
from src.core.errors import CacheError, CacheIntegrityError, CacheSchemaError
from src.core.models import CacheEntry, Variant

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
# 任何可能改变计数结果的代码改动都必须提升这个版本
GENERATOR_VERSION = "1"


class OracleCache:
    """
    单写多读的文件缓存
    key = (variant, n, generator_version)
    """

    def __init__(self, directory: Optional[Path] = None, lock_timeout: Optional[float] = None):
        self.directory = Path(directory) if directory is not None else settings.cache_dir
        self.lock_timeout = lock_timeout if lock_timeout is not None else settings.CACHE_LOCK_TIMEOUT

    def path_for(self, variant: Variant, n: int) -> Path:
        return self.directory / f"{Variant(variant).value}-n{n}.json"

    # --- 读 ---
    def load(self, variant: Variant, n: int) -> Optional[CacheEntry]:
        """
        读取缓存；文件不存在或由旧版生成器写出时返回 None
        文件损坏抛 CacheIntegrityError，schema 不符抛 CacheSchemaError
        """
        path = self.path_for(variant, n)
        if not path.exists():
            return None
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise CacheIntegrityError(path, f"unreadable cache file ({e})") from e
        if not isinstance(raw, dict):
            raise CacheIntegrityError(path, "cache file is not a JSON object")

        version = raw.get("schema_version")
        if version != SCHEMA_VERSION:
            raise CacheSchemaError(path, f"schema_version {version!r} != {SCHEMA_VERSION}")

        try:
            entry = CacheEntry.model_validate(raw)
        except ValidationError as e:
            raise CacheIntegrityError(path, f"invalid cache entry ({e.error_count()} errors)") from e

        if entry.variant != Variant(variant) or entry.n != n:
            raise CacheIntegrityError(path, f"entry describes ({entry.variant.value}, {entry.n})")
        if len(entry.counts) != n:
            raise CacheIntegrityError(path, "counts length does not match n")
        if sum(entry.counts) != entry.leaves:
            raise CacheIntegrityError(path, "counts do not sum to the leaf count")
        if entry.generator_version != GENERATOR_VERSION:
            logger.info(f"Ignoring stale cache {path.name} (generator {entry.generator_version})")
            return None

        logger.debug(f"Loaded cache entry {path.name}")
        return entry

    # --- 写 ---
    def store(self, entry: CacheEntry) -> Path:
        """原子写入：临时文件 + os.replace"""
        if entry.schema_version != SCHEMA_VERSION:
            raise CacheSchemaError(self.path_for(entry.variant, entry.n), "refusing to write a foreign schema")
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(entry.variant, entry.n)
        text = render_entry(entry)

        with self._locked(path):
            fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=self.directory)
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as f:
                    f.write(text)
                    f.flush()
                    os.fsync(f.fileno())
                os.replace(tmp_name, path)
            except BaseException:
                Path(tmp_name).unlink(missing_ok=True)
                raise

        logger.info(f"Stored cache entry {path.name}")
        return path

    @contextmanager
    def _locked(self, path: Path) -> Iterator[None]:
        """
        锁文件里写持有者 PID
        持有者进程已退出，或锁里没有 PID 且比 lock_timeout 更旧时视为残留锁，破掉后重试
        """
        lock = path.with_name(path.name + ".lock")
        deadline = time.monotonic() + self.lock_timeout
        while True:
            try:
                fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                break
            except FileExistsError:
                if self._break_if_stale(lock):
                    continue
                if time.monotonic() > deadline:
                    raise CacheError(lock, "timed out waiting for the cache lock")
                time.sleep(0.05)
        try:
            os.write(fd, str(os.getpid()).encode("ascii"))
            os.close(fd)
            yield
        finally:
            lock.unlink(missing_ok=True)

    def _break_if_stale(self, lock: Path) -> bool:
        try:
            owner = lock.read_bytes().decode("ascii", errors="replace").strip()
            age = time.time() - lock.stat().st_mtime
        except FileNotFoundError:
            # 持有者刚释放，下一轮 O_EXCL 直接重试
            return True
        if owner.isdigit():
            stale = not psutil.pid_exists(int(owner))
        else:
            # 刚创建、还没写入 PID 的锁也是空的，只能按年龄判断
            stale = age > self.lock_timeout
        if stale:
            logger.warning(f"Breaking stale cache lock {lock.name} (owner {owner or 'unknown'}, age {age:.1f}s)")
            lock.unlink(missing_ok=True)
        return stale


def render_entry(entry: CacheEntry) -> str:
    """固定字段顺序，矩阵一行一个 JSON 数组，便于人工查看和逐字节比较"""
    header = {
        "schema_version": entry.schema_version,
        "variant": entry.variant.value,
        "n": entry.n,
        "generator_version": entry.generator_version,
        "leaves": entry.leaves,
        "wall_time_seconds": round(entry.wall_time_seconds, 3),
        "counts": entry.counts,
    }
    lines = ["{"]
    for key, value in header.items():
        lines.append(f"  {json.dumps(key)}: {json.dumps(value)},")
    rows = [f"    {json.dumps(row)}" for row in entry.q]
    lines.append('  "q": [')
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def canonical_payload(entry: CacheEntry) -> str:
    """去掉耗时字段后的内容，用来比较不同并行度的结果是否逐字节一致"""
    return render_entry(entry.model_copy(update={"wall_time_seconds": 0.0}))
