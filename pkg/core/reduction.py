"""
Δ 约化：从 C(k, j) 的成员得到 C(k − 1, j) 的成员

取极大独立集 M 使 ω(G − M) < k − j − 1，再从 G − M 中抽出 (k − 1)-临界诱导子图。
ω(G) 已经小于 k − j − 1 时任何极大独立集都可以；否则 M 必须与每个最大团相交。
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterator

from .budget import Budget
from .errors import BudgetExhausted, PreconditionError, ReductionFailure
from .graph import Graph, Relabeled, VertexSet, bits_of, delete_vertex, delete_vertices, mask_of
from .invariants import clique_number, independence_number, is_k_colorable, maximum_cliques
from .logger import logger
from .mules import MuleReport, verify_mule


def expand_to_maximal(g: Graph, independent) -> VertexSet:
    """按下标升序贪心扩充为极大独立集"""
    members = mask_of(independent)
    if not g.is_independent(members):
        raise PreconditionError(f"{bits_of(members)} 不是独立集")
    for v in range(g.order):
        if not members >> v & 1 and not g.adjacency[v] & members:
            members |= 1 << v
    return bits_of(members)


def _hits_all(mask: int, cliques: list[int]) -> bool:
    return all(mask & clique for clique in cliques)


def iter_hitting_independent_sets(g: Graph, budget: Budget | None = None) -> Iterator[VertexSet]:
    """
    与每个最大团都相交的独立集，按大小升序、同大小按字典序

    候选顶点只取最大团的并；空图只产出空集。预算耗尽抛出 BudgetExhausted。
    """
    if g.order == 0:
        yield ()
        return
    budget = (budget or Budget()).start()
    cliques = maximum_cliques(g)
    union = 0
    for clique in cliques:
        union |= clique
    candidates = bits_of(union)
    limit = min(len(cliques), independence_number(g))
    for size in range(1, limit + 1):
        for subset in combinations(candidates, size):
            budget.tick()
            mask = mask_of(subset)
            if g.is_independent(mask) and _hits_all(mask, cliques):
                yield subset


def find_hitting_independent_set(g: Graph, budget: Budget | None = None) -> VertexSet | None:
    """最小的命中全部最大团的独立集；不存在时返回 None"""
    return next(iter_hitting_independent_sets(g, budget), None)


def extract_critical_subgraph(g: Graph, k: int, budget: Budget | None = None) -> Relabeled:
    """
    k-临界诱导子图

    按当前度数升序（同度按下标）尝试删点，只要 χ 仍 ≥ k 就删除并从头再来；
    结果的 origin 指回 G 的顶点。χ(G) < k 时抛出 PreconditionError。
    """
    if k < 1:
        raise PreconditionError(f"k 必须 ≥ 1，收到 {k}")
    budget = (budget or Budget()).start()
    if is_k_colorable(g, k - 1, budget) is not None:
        raise PreconditionError(f"χ(G) < {k}，不存在 {k}-临界子图")
    current = g
    origin = list(range(g.order))
    deleted = True
    while deleted:
        deleted = False
        for v in sorted(range(current.order), key=lambda u: (current.degree(u), u)):
            rest = delete_vertex(current, v)
            if is_k_colorable(rest.graph, k - 1, budget) is None:
                current = rest.graph
                origin = [origin[old] for old in rest.origin]
                deleted = True
                break
    logger.debug(f"[Reduction] {k}-临界子图: {g.order} → {current.order} 个顶点")
    return Relabeled(current, {old: new for new, old in enumerate(origin)})


@dataclass
class ReductionResult:
    """一步约化：删去的 M、得到的 H 及其在 G 中的顶点"""

    k: int
    j: int
    removed: VertexSet
    graph: Graph
    origin: VertexSet
    report: MuleReport
    attempts: int = 1

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "j": self.j,
            "removed": list(self.removed),
            "origin": list(self.origin),
            "order": self.graph.order,
            "edges": [list(e) for e in self.graph.edges()],
            "report": self.report.to_json(),
            "attempts": self.attempts,
        }


def _candidate_sets(g: Graph, threshold: int, budget: Budget) -> Iterator[VertexSet]:
    if clique_number(g) < threshold:
        yield expand_to_maximal(g, ())
        return
    seen: set[VertexSet] = set()
    for hitting in iter_hitting_independent_sets(g, budget):
        maximal = expand_to_maximal(g, hitting)
        if maximal not in seen:
            seen.add(maximal)
            yield maximal


def reduce_delta(g: Graph, k: int, j: int = 0, budget: Budget | None = None) -> ReductionResult:
    """
    G ∈ C(k, j) 且 k ≥ 3j + 6 时返回 C(k − 1, j) 中的一个图

    前置条件不满足抛出 PreconditionError；所有候选 M 都不合格时抛出
    ReductionFailure（diagnosis 记录尝试过程）；预算耗尽抛出 BudgetExhausted，
    stats 中同样带上已尝试的 M。
    """
    if j < 0 or k < 3 * j + 6:
        raise PreconditionError(f"需要 k ≥ 3j + 6，收到 k={k}, j={j}")
    budget = (budget or Budget()).start()
    report = verify_mule(g, k, budget)
    if not report.in_class(k, j):
        raise PreconditionError(
            f"G 不属于 C({k},{j}): χ={report.chi} Δ={report.delta} ω={report.omega} 临界={report.vertex_critical}"
        )
    threshold = k - j - 1
    tried: list[dict[str, Any]] = []
    try:
        for removed in _candidate_sets(g, threshold, budget):
            rest = delete_vertices(g, removed)
            omega = clique_number(rest.graph)
            attempt: dict[str, Any] = {"removed": list(removed), "omega": omega}
            tried.append(attempt)
            if omega >= threshold:
                continue
            critical = extract_critical_subgraph(rest.graph, k - 1, budget)
            h = critical.graph
            h_report = verify_mule(h, k - 1, budget)
            attempt["order"] = h.order
            if not h_report.in_class(k - 1, j):
                attempt["report"] = h_report.to_json()
                logger.warning(f"[Reduction] M={removed} 得到的子图不属于 C({k - 1},{j})")
                continue
            origin = tuple(rest.origin[v] for v in critical.origin)
            logger.info(
                f"[Reduction] C({k},{j}) → C({k - 1},{j}): n={g.order} → {h.order}, "
                f"|M|={len(removed)}, 尝试 {len(tried)} 次"
            )
            return ReductionResult(k, j, removed, h, origin, h_report, len(tried))
    except BudgetExhausted as e:
        raise BudgetExhausted(
            f"约化预算耗尽: {e}", stats={**e.stats, "k": k, "j": j, "tried": tried}
        ) from e
    raise ReductionFailure(
        f"没有合格的极大独立集 (k={k}, j={j})",
        diagnosis={"k": k, "j": j, "tried": tried, "omega": report.omega},
    )


def reduce_chain(g: Graph, k: int, j: int = 0, budget: Budget | None = None) -> list[ReductionResult]:
    """反复约化直到 k < 3j + 6"""
    budget = (budget or Budget()).start()
    steps: list[ReductionResult] = []
    current, level = g, k
    while level >= 3 * j + 6:
        step = reduce_delta(current, level, j, budget)
        steps.append(step)
        current, level = step.graph, level - 1
    return steps
