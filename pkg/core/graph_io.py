"""
graph6 与纯文本边表的读写

graph6 只实现单字节顶点数形式（n ≤ 62），输出与公开格式定义逐字节一致。
边表格式："n m" 一行，随后 m 行 "u v"；# 之后为注释。
"""

from __future__ import annotations

import re
from typing import Iterator, NamedTuple

from .errors import GraphError, GraphFormatError
from .graph import Graph, from_edge_list

GRAPH6_HEADER = ">>graph6<<"
_HEADER_RE = re.compile(r"^(\d+)\s+(\d+)$")
_EDGE_RE = re.compile(r"^(-?\d+)\s+(-?\d+)$")


def _graph6_length(n: int) -> int:
    return 1 + (n * (n - 1) // 2 + 5) // 6


def to_graph6(g: Graph) -> str:
    """编码为 graph6（不带头部与换行）"""
    n = g.order
    if n > 62:
        raise GraphError(f"graph6 单字节形式只支持 n ≤ 62，收到 {n}")
    out = [chr(n + 63)]
    value = 0
    filled = 0
    for j in range(1, n):
        row = g.adjacency[j]
        for i in range(j):
            value = (value << 1) | (row >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(value + 63))
                value = filled = 0
    if filled:
        out.append(chr((value << (6 - filled)) + 63))
    return "".join(out)


def parse_graph6(text: str, *, line: int | None = None) -> Graph:
    """解析一条 graph6 记录；非法字节、长度不符、尾随垃圾、非零填充位都报告偏移"""
    data = text.strip("\r\n")
    base = 0
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    if not data:
        raise GraphFormatError("graph6 记录为空", offset=base, line=line)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"非法 graph6 字节 {ch!r}", offset=base + i, line=line)
    if data[0] == "~":
        raise GraphFormatError("不支持多字节顶点数形式 (n > 62)", offset=base, line=line)
    n = ord(data[0]) - 63
    expected = _graph6_length(n)
    if len(data) < expected:
        raise GraphFormatError(
            f"graph6 记录过短：n={n} 需要 {expected} 字节，实际 {len(data)}",
            offset=base + len(data), line=line,
        )
    if len(data) > expected:
        raise GraphFormatError("graph6 记录存在尾随字节", offset=base + expected, line=line)
    pad = (expected - 1) * 6 - n * (n - 1) // 2
    if pad and (ord(data[-1]) - 63) & ((1 << pad) - 1):
        raise GraphFormatError("graph6 填充位非零", offset=base + expected - 1, line=line)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(data[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    try:
        return from_edge_list(n, edges)
    except GraphError as e:
        raise GraphFormatError(str(e), offset=base, line=line) from e


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.order} {g.size}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


class Record(NamedTuple):
    """流式输入中的一条记录：成功时 graph 非空，失败时 error 非空"""

    index: int
    line: int
    graph: Graph | None
    error: GraphFormatError | None


def parse_edge_list(text: str) -> Graph:
    """解析单个边表；文本中多于一个图时报错"""
    records = list(iter_edge_list_records(text))
    if not records:
        raise GraphFormatError("边表为空", line=1)
    if records[0].error is not None:
        raise records[0].error
    if len(records) > 1:
        raise GraphFormatError("边表包含多个图", line=records[1].line)
    return records[0].graph  # type: ignore[return-value]


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content


def iter_graph6_records(text: str) -> Iterator[Record]:
    for index, (number, content) in enumerate(_content_lines(text)):
        try:
            yield Record(index, number, parse_graph6(content, line=number), None)
        except GraphFormatError as e:
            yield Record(index, number, None, e)


def iter_edge_list_records(text: str) -> Iterator[Record]:
    """连续的边表块：头部 "n m" 后跟 m 条边；格式错误后停止"""
    lines = list(_content_lines(text))
    pos = 0
    index = 0
    while pos < len(lines):
        number, content = lines[pos]
        header = _HEADER_RE.match(content)
        if not header:
            yield Record(index, number, None, GraphFormatError(f"期望 'n m' 头部，收到 {content!r}", line=number))
            return
        n, m = int(header.group(1)), int(header.group(2))
        edges: list[tuple[int, int, int]] = []
        for offset in range(m):
            if pos + 1 + offset >= len(lines):
                yield Record(index, number, None, GraphFormatError(f"边表声明 {m} 条边，只找到 {offset} 条", line=number))
                return
            edge_line, edge_text = lines[pos + 1 + offset]
            match = _EDGE_RE.match(edge_text)
            if not match:
                yield Record(index, number, None, GraphFormatError(f"无法解析边 {edge_text!r}", line=edge_line))
                return
            edges.append((int(match.group(1)), int(match.group(2)), edge_line))
        try:
            graph = from_edge_list(n, [(u, v) for u, v, _ in edges])
        except GraphError as e:
            bad_line = next((ln for u, v, ln in edges if e.pair == (u, v)), number)
            yield Record(index, number, None, GraphFormatError(str(e), line=bad_line))
            return
        yield Record(index, number, graph, None)
        pos += 1 + m
        index += 1


def detect_format(text: str) -> str:
    """首个非注释行形如 "n m" 即为边表，否则按 graph6 处理"""
    for _, content in _content_lines(text):
        return "edgelist" if _HEADER_RE.match(content) else "graph6"
    return "graph6"


def iter_records(text: str, fmt: str = "auto") -> Iterator[Record]:
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "graph6":
        return iter_graph6_records(text)
    if fmt == "edgelist":
        return iter_edge_list_records(text)
    raise ValueError(f"未知输入格式: {fmt}")
