import logging.config
import sys
from pathlib import Path

from config.settings import settings

# 1. 日志目录
LOG_DIR = Path(settings.LOG_DIR)

# 2. 日志配置字典
LOGGING_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,

    # --- 格式器 (Formatters) ---
    "formatters": {
        "standard": {
            # 格式：时间 | 日志级别 | 模块名:行号 | 消息
            "format": "%(asctime)s | %(levelname)-8s | %(name)s:%(lineno)d | %(message)s",
            "datefmt": "%Y-%m-%d %H:%M:%S",
        },
        "progress": {
            "format": "%(asctime)s | %(message)s",
            "datefmt": "%H:%M:%S",
        },
    },

    # --- 处理器 (Handlers) ---
    "handlers": {
        # 控制台输出走 stderr，stdout 只留给表格等结果
        "console": {
            "level": "DEBUG" if settings.DEBUG else "WARNING",
            "class": "logging.StreamHandler",
            "stream": sys.stderr,
            "formatter": "standard",
        },
        # 长时间枚举的进度，同样走 stderr
        "progress_console": {
            "level": "INFO",
            "class": "logging.StreamHandler",
            "stream": sys.stderr,
            "formatter": "progress",
        },
        # 文件输出 (按大小轮转)
        "file": {
            "level": "INFO",
            "class": "logging.handlers.RotatingFileHandler",
            "filename": str(LOG_DIR / "luckypark.log"),
            "maxBytes": 10 * 1024 * 1024,  # 10 MB
            "backupCount": 5,
            "formatter": "standard",
            "encoding": "utf-8",
        },
        # 枚举进度专用日志
        "progress_file": {
            "level": "INFO",
            "class": "logging.handlers.RotatingFileHandler",
            "filename": str(LOG_DIR / "progress.log"),
            "maxBytes": 10 * 1024 * 1024,
            "backupCount": 5,
            "formatter": "standard",
            "encoding": "utf-8",
        },
    },

    # --- 日志器 (Loggers) ---
    "loggers": {
        "": {
            "handlers": ["console", "file"],
            "level": "INFO",
            "propagate": True,
        },
        # 项目专属 logger
        "src": {
            "handlers": ["console", "file"],
            "level": "DEBUG" if settings.DEBUG else "INFO",
            "propagate": False,
        },
        # 专门记录 oracle 子树完成情况
        "progress": {
            "handlers": ["progress_file"],
            "level": "INFO",
            "propagate": False,
        },
    },
}


def setup_logging(show_progress: bool = False) -> None:
    """
    应用日志配置
    在 main.py 启动时最先调用；show_progress 时进度同时打到 stderr
    """
    LOG_DIR.mkdir(parents=True, exist_ok=True)
    progress_handlers = ["progress_console", "progress_file"] if show_progress else ["progress_file"]
    LOGGING_CONFIG["loggers"]["progress"]["handlers"] = progress_handlers
    logging.config.dictConfig(LOGGING_CONFIG)
