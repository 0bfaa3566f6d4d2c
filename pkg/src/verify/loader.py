"""
套件自动加载器
自动发现并注册 src/verify/suites/ 目录下的所有套件
"""

import importlib
import logging
from pathlib import Path
from typing import List

from src.verify.registry import suite_registry

logger = logging.getLogger(__name__)

SUITES_DIR = Path(__file__).parent / "suites"


def get_suite_modules() -> List[str]:
    """suites 目录下所有非私有模块名"""
    if not SUITES_DIR.exists():
        logger.warning(f"Suites directory not found: {SUITES_DIR}")
        return []
    return sorted(p.stem for p in SUITES_DIR.glob("*.py") if not p.name.startswith("_"))


def load_all_suites() -> int:
    """
    导入每个套件模块（导入即注册）

    Returns:
        注册后的套件数量
    """
    for stem in get_suite_modules():
        module_name = f"src.verify.suites.{stem}"
        try:
            importlib.import_module(module_name)
        except ImportError as e:
            logger.error(f"Failed to load suite module {module_name}: {e}")
            raise
    count = len(suite_registry.list_suites())
    logger.debug(f"Loaded {count} verification suites")
    return count
