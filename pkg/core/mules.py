"""
骡子目录与成员资格报告

四个骡子的边表随包发布在 data/mules/ 下，并由 checksums.json 固定；
宣称的 (k, ω, χ, Δ) 只作核对，与计算结果不符时发出转录告警。
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

from .budget import Budget
from .defaults import MULE_CATALOG
from .errors import GraphError, GraphFormatError
from .graph import Graph
from .graph_io import parse_edge_list
from .invariants import (
    GraphInvariants,
    borodin_kostochka_bound,
    brooks_bound,
    contains_clique_join,
    invariants,
    is_vertex_critical,
)
from .logger import logger

MULE_DIR = Path(__file__).resolve().parent.parent / "data" / "mules"


class CatalogChecksumError(RuntimeError):
    """随包边表与 checksums.json 不符"""


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def verify_catalog_checksums(directory: Path = MULE_DIR) -> dict[str, str]:
    """逐个核对骡子边表的 sha256，任何不符都直接抛出"""
    manifest = json.loads((directory / "checksums.json").read_text(encoding="utf-8"))
    expected = manifest.get("files", {})
    digests = {}
    for name, meta in MULE_CATALOG.items():
        filename = meta["file"]
        digest = _file_digest(directory / filename)
        if expected.get(filename) != digest:
            raise CatalogChecksumError(f"骡子 {name} 的边表校验和不符: {filename}")
        digests[name] = digest
    return digests


@lru_cache(maxsize=None)
def mule(name: str) -> Graph:
    """按名字读取目录中的骡子（M61 / M71 / M72 / M8）"""
    key = str(name).upper().replace("_", "").replace(",", "")
    meta = MULE_CATALOG.get(key)
    if meta is None:
        raise GraphError(f"未知骡子: {name}（可选 {', '.join(MULE_CATALOG)}）")
    path = MULE_DIR / meta["file"]
    try:
        return parse_edge_list(path.read_text(encoding="utf-8"))
    except GraphFormatError as e:
        raise GraphFormatError(f"骡子 {key} 的边表损坏: {e}", line=e.line) from e


@dataclass
class MuleReport:
    name: str
    k: int
    order: int
    size: int
    delta: int
    min_degree: int
    omega: int
    chi: int
    alpha: int
    vertex_critical: bool
    in_C_kj: list[tuple[int, int]] = field(default_factory=list)
    subgraph_facts: dict[str, Any] = field(default_factory=dict)
    bk_holds: bool = True
    brooks_holds: bool = True
    weak_bk_clique: bool | None = None
    alarms: list[str] = field(default_factory=list)

    def in_class(self, k: int, j: int = 0) -> bool:
        return (k, j) in self.in_C_kj

    def to_json(self) -> dict[str, Any]:
        data = asdict(self)
        data["in_C_kj"] = [list(pair) for pair in self.in_C_kj]
        return data


def membership_pairs(inv: GraphInvariants, critical: bool, k: int) -> list[tuple[int, int]]:
    """C(k, j) 成员资格：χ = Δ = k、顶点临界、ω < k − j"""
    if not critical or inv.chromatic_number != k or inv.max_degree != k:
        return []
    return [(k, j) for j in range(max(0, k - inv.clique_number))]


def _subgraph_facts(g: Graph, k: int) -> dict[str, Any]:
    facts: dict[str, Any] = {}
    patterns = [(3, k - 3), (4, k - 4), ((k + 1) // 2, 0)]
    for s, t in patterns:
        if s < 1 or t < 0:
            continue
        key = f"K{s}" if t == 0 else f"K{s}vE{t}"
        witness = contains_clique_join(g, s, t)
        facts[key] = {
            "holds": witness is not None,
            "clique": list(witness.clique) if witness else None,
            "common": list(witness.common) if witness else None,
        }
    return facts


def verify_mule(g: Graph, k: int, budget: Budget | None = None, *, name: str = "") -> MuleReport:
    """
    生成成员资格报告：不变量、临界性、满足的 (k, j)、子图事实、BK/Brooks 检查

    只证明属于 C(k, j)，不判定子代序下的极小性。
    """
    budget = (budget or Budget()).start()
    inv = invariants(g, budget)
    critical = is_vertex_critical(g, inv.chromatic_number, budget)
    delta = inv.max_degree
    report = MuleReport(
        name=name,
        k=k,
        order=g.order,
        size=g.size,
        delta=delta,
        min_degree=g.min_degree,
        omega=inv.clique_number,
        chi=inv.chromatic_number,
        alpha=inv.independence_number,
        vertex_critical=critical,
        in_C_kj=membership_pairs(inv, critical, k),
        subgraph_facts=_subgraph_facts(g, k),
        bk_holds=inv.chromatic_number <= borodin_kostochka_bound(inv),
        brooks_holds=inv.chromatic_number <= brooks_bound(inv),
        weak_bk_clique=(inv.clique_number >= (delta + 1) // 2) if inv.chromatic_number >= delta >= 7 else None,
    )
    meta = MULE_CATALOG.get(name)
    if meta is not None:
        observed = {
            "k": k, "order": report.order, "size": report.size,
            "delta": report.delta, "omega": report.omega, "chi": report.chi,
        }
        for key, value in observed.items():
            if meta[key] != value:
                report.alarms.append(f"{key}: 宣称 {meta[key]}，实际 {value}")
        if not report.in_class(k):
            report.alarms.append(f"不属于 C({k},0)")
        if g.min_degree < k - 1:
            report.alarms.append(f"最小度 {g.min_degree} < k − 1 = {k - 1}")
    for alarm in report.alarms:
        logger.warning(f"[MuleLab] 转录告警 {name or '?'}: {alarm}")
    logger.info(
        f"[MuleLab] {name or 'graph'}: n={report.order} Δ={delta} ω={report.omega} "
        f"χ={report.chi} 临界={critical} 节点={budget.nodes}"
    )
    return report
