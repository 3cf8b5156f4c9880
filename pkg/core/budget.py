"""
搜索预算

节点数 + 墙钟时间的双重上限。所有穷举搜索都显式接收 Budget，
耗尽时抛出 BudgetExhausted，由上层转换为 INDETERMINATE。
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Any

from .defaults import BUDGET_ENV_VAR, DEFAULT_BUDGET_NODES, DEFAULT_BUDGET_SECONDS
from .errors import BudgetExhausted
from .logger import logger

# 每隔多少个节点检查一次时钟
_CLOCK_STRIDE = 1024


def _clamp_int(value: Any, *, default: int, min_value: int, max_value: int) -> int:
    try:
        value_int = int(value)
    except (TypeError, ValueError):
        return default
    return max(min_value, min(max_value, value_int))


def _clamp_float(value: Any, *, default: float, min_value: float, max_value: float) -> float:
    try:
        value_float = float(value)
    except (TypeError, ValueError):
        return default
    if value_float != value_float:  # NaN
        return default
    return max(min_value, min(max_value, value_float))


@dataclass
class Budget:
    """节点数与秒数上限；tick() 计数，超限即抛出 BudgetExhausted"""

    max_nodes: int = DEFAULT_BUDGET_NODES
    max_seconds: float = DEFAULT_BUDGET_SECONDS
    nodes: int = 0
    _started: float | None = field(default=None, repr=False)
    _deadline: float | None = field(default=None, repr=False)

    def start(self) -> "Budget":
        if self._started is None:
            self._started = time.monotonic()
            self._deadline = self._started + self.max_seconds
        return self

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.nodes > self.max_nodes:
            raise BudgetExhausted(
                f"节点预算耗尽 ({self.max_nodes})", stats=self.snapshot()
            )
        if self.nodes % _CLOCK_STRIDE < count:
            self.check_clock()

    def check_clock(self) -> None:
        if self._started is None:
            self.start()
        elif time.monotonic() > self._deadline:  # type: ignore[operator]
            raise BudgetExhausted(
                f"时间预算耗尽 ({self.max_seconds}s)", stats=self.snapshot()
            )

    @property
    def elapsed(self) -> float:
        if self._started is None:
            return 0.0
        return time.monotonic() - self._started

    @property
    def remaining_nodes(self) -> int:
        return max(0, self.max_nodes - self.nodes)

    @property
    def remaining_seconds(self) -> float:
        return max(0.0, self.max_seconds - self.elapsed)

    def snapshot(self) -> dict[str, Any]:
        return {
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 4),
            "max_nodes": self.max_nodes,
            "max_seconds": self.max_seconds,
        }

    def limits(self) -> dict[str, Any]:
        return {"max_nodes": self.max_nodes, "max_seconds": self.max_seconds}

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(max_nodes=10**15, max_seconds=float("inf"))

    @classmethod
    def parse(cls, text: str | None) -> "Budget":
        """解析 "SECONDS[,NODES]"，非法值回退默认并记录警告"""
        if not text:
            return cls()
        parts = [p.strip() for p in str(text).split(",")]
        seconds = _clamp_float(parts[0], default=-1.0, min_value=0.001, max_value=10**7)
        nodes = DEFAULT_BUDGET_NODES
        if len(parts) > 1:
            nodes = _clamp_int(parts[1], default=-1, min_value=1, max_value=10**15)
        if seconds < 0 or nodes < 0 or len(parts) > 2:
            logger.warning(f"[Budget] 无法解析预算 {text!r}，使用默认值")
            return cls()
        return cls(max_nodes=nodes, max_seconds=seconds)

    @classmethod
    def from_env(cls) -> "Budget":
        return cls.parse(os.environ.get(BUDGET_ENV_VAR))
