"""
联图分类扫描：对所有小图 B 比较闭式预测与穷举检查器
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .budget import Budget
from .choosability import is_d_r_choosable
from .classification import CHECKER_NEEDED, ClassificationVerdict, family_join, predict
from .defaults import JSON_SCHEMA, MAX_PARALLELISM, SWEEP_FAMILIES, SWEEP_MAX_ORDER
from .graph import Graph, graph_inventory
from .graph_io import to_graph6
from .list_coloring import ChoosabilityVerdict, Outcome
from .logger import logger


@dataclass
class SweepRow:
    graph6: str
    order: int
    size: int
    prediction: ClassificationVerdict
    verdict: ChoosabilityVerdict

    @property
    def agrees(self) -> bool | None:
        """检查器无结论时为 None；checker-needed 的预测不参与比较"""
        choosable = self.verdict.choosable
        if choosable is None:
            return None
        if not self.prediction.predicted_choosable and self.prediction.provenance == CHECKER_NEEDED:
            return True
        return choosable == self.prediction.predicted_choosable

    def to_json(self) -> dict[str, Any]:
        return {
            "graph6": self.graph6,
            "order": self.order,
            "size": self.size,
            "prediction": self.prediction.to_json(),
            "checker": self.verdict.to_json(),
            "agrees": self.agrees,
        }


@dataclass
class SweepTable:
    family: str
    max_order: int
    t: int | None
    budget: dict[str, Any]
    rows: list[SweepRow] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def disagreements(self) -> list[SweepRow]:
        return [row for row in self.rows if row.agrees is False]

    @property
    def indeterminate(self) -> list[SweepRow]:
        return [row for row in self.rows if row.agrees is None]

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": JSON_SCHEMA,
            "family": self.family,
            "max_order": self.max_order,
            "t": self.t,
            "budget": self.budget,
            "elapsed": round(self.elapsed, 4),
            "summary": {
                "rows": len(self.rows),
                "disagreements": len(self.disagreements),
                "indeterminate": len(self.indeterminate),
                "outcomes": outcome_counts(self),
            },
            "rows": [row.to_json() for row in self.rows],
        }


def _check_row(args: tuple[str, Graph, int | None, int, float, bool]) -> SweepRow:
    family, b, t, max_nodes, max_seconds, symmetry = args
    prediction = predict(family, b, t)
    verdict = is_d_r_choosable(
        family_join(family, b, t), 1, Budget(max_nodes=max_nodes, max_seconds=max_seconds), symmetry=symmetry
    )
    return SweepRow(to_graph6(b), b.order, b.size, prediction, verdict)


def run_sweep(
    family: str,
    max_order: int = SWEEP_MAX_ORDER,
    t: int | None = None,
    budget: Budget | None = None,
    workers: int = 1,
    symmetry: bool = True,
) -> SweepTable:
    """
    对顶点数 1..max_order 的全部非同构图 B 逐一比较预测与检查结果

    budget 是每个 B 的独立额度；行顺序与图谱顺序一致，与 workers 无关。
    """
    if family not in SWEEP_FAMILIES:
        raise ValueError(f"未知联图族: {family}（可选 {', '.join(SWEEP_FAMILIES)}）")
    if family == "kt" and t is None:
        t = 4
    if family != "kt":
        t = None
    budget = budget or Budget()
    workers = max(1, min(MAX_PARALLELISM, int(workers)))
    started = time.monotonic()
    tasks = [
        (family, b, t, budget.max_nodes, budget.max_seconds, symmetry)
        for b in graph_inventory(max_order)
    ]
    logger.info(f"[Sweep] {family} t={t}: {len(tasks)} 个图, 并行度 {workers}")
    if workers == 1:
        rows = [_check_row(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_check_row, tasks))
    table = SweepTable(family, max_order, t, budget.limits(), rows, time.monotonic() - started)
    for row in table.disagreements:
        logger.warning(
            f"[Sweep] 预测与检查器不符: B={row.graph6} 预测={row.prediction.predicted_choosable} "
            f"检查={row.verdict.outcome.value}"
        )
    undecided = len(table.indeterminate)
    if undecided:
        logger.warning(f"[Sweep] {undecided} 个图预算内无结论")
    logger.info(f"[Sweep] 完成: 不符 {len(table.disagreements)} 个, 耗时={table.elapsed:.2f}s")
    return table


def outcome_counts(table: SweepTable) -> dict[str, int]:
    counts = {outcome.value: 0 for outcome in Outcome}
    for row in table.rows:
        counts[row.verdict.outcome.value] += 1
    return counts
