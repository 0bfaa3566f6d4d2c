"""
套件运行上下文
同一次 verify 中多个检查共用 oracle 结果，避免重复枚举
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from src.core.models import CacheEntry, Variant
from src.oracle.cache import OracleCache
from src.oracle.tables import lucky_mask_counts, run_oracle


@dataclass
class VerifyContext:
    cache: Optional[OracleCache] = None
    workers: Optional[int] = None
    allow_long: bool = False
    _entries: Dict[Tuple[Variant, int], CacheEntry] = field(default_factory=dict)
    _masks: Dict[int, Counter] = field(default_factory=dict)

    def oracle(self, n: int, variant: Variant = Variant.ALL) -> CacheEntry:
        key = (Variant(variant), n)
        if key not in self._entries:
            self._entries[key] = run_oracle(n, variant, workers=self.workers,
                                            allow_long=self.allow_long, cache=self.cache)
        return self._entries[key]

    def lucky_masks(self, n: int) -> Counter:
        if n not in self._masks:
            self._masks[n] = lucky_mask_counts(n)
        return self._masks[n]
