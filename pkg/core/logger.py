"""日志配置：全包共享一个 logger，彩色输出到 stderr"""

from __future__ import annotations

import logging
import sys

import colorlog

logger = logging.getLogger("choosability")

_FORMAT = "%(log_color)s[%(asctime)s] [%(levelname)s]%(reset)s %(message)s"
_COLORS = {
    "DEBUG": "green",
    "INFO": "cyan",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "bold_red",
}


def setup_logging(level: str | int = "WARNING") -> None:
    """安装彩色控制台 handler，重复调用只更新级别"""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logger.setLevel(level)
    if not any(getattr(h, "_choosability", False) for h in logger.handlers):
        handler = colorlog.StreamHandler(sys.stderr)
        handler.setFormatter(
            colorlog.ColoredFormatter(_FORMAT, datefmt="%H:%M:%S", log_colors=_COLORS)
        )
        handler._choosability = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
    logger.propagate = False
