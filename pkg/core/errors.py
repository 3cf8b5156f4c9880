"""
异常定义

库代码只抛出这里的异常，由 CLI 统一转换为退出码。
"""

from __future__ import annotations

from typing import Any


class GraphError(ValueError):
    """非法顶点下标、自环、非独立集等结构性错误"""

    def __init__(self, message: str, *, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class GraphFormatError(GraphError):
    """graph6 / 边表解析失败，携带字节偏移与行号"""

    def __init__(self, message: str, *, offset: int | None = None, line: int | None = None):
        super().__init__(message)
        self.offset = offset
        self.line = line

    def __str__(self) -> str:
        base = super().__str__()
        where = []
        if self.line is not None:
            where.append(f"line={self.line}")
        if self.offset is not None:
            where.append(f"offset={self.offset}")
        return f"{base} ({', '.join(where)})" if where else base


class PreconditionError(ValueError):
    """调用前置条件不满足（如 t < 4、k < 3j+6、G 不在 C(k,j) 中）"""


class BudgetExhausted(RuntimeError):
    """搜索预算（节点数或墙钟时间）耗尽"""

    def __init__(self, message: str = "搜索预算耗尽", *, stats: dict[str, Any] | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})


class ReductionFailure(RuntimeError):
    """Δ 约化未找到合格的独立集，附带诊断信息"""

    def __init__(self, message: str, *, diagnosis: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnosis = dict(diagnosis or {})
