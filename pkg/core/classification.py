"""
联图 d_1-可选性的闭式分类与 d_0 分类

谓词只做结构匹配（连通分量 + 模板同构），不调用穷举检查器；
交叉验证由 sweeps 模块完成。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .budget import Budget
from .errors import GraphError, PreconditionError
from .graph import Graph, VertexSet, bits_of, components, complete, empty, is_connected, iter_bits, join, mask_of, named
from .invariants import clique_number
from .isomorphism import is_isomorphic

GUARANTEED = "guaranteed"
CHECKER_NEEDED = "checker-needed"


@dataclass(frozen=True)
class ClassificationVerdict:
    predicted_choosable: bool
    exception_case: str = ""
    provenance: str = GUARANTEED
    matching_clauses: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if bool(self.exception_case) == self.predicted_choosable:
            raise ValueError("exception_case 必须在且仅在预测不可选时非空")

    def to_json(self) -> dict[str, Any]:
        return {
            "predicted_choosable": self.predicted_choosable,
            "exception_case": self.exception_case,
            "provenance": self.provenance,
            "matching_clauses": list(self.matching_clauses),
        }


def _verdict(clauses: list[str], provenance_if_not: str = GUARANTEED) -> ClassificationVerdict:
    if not clauses:
        return ClassificationVerdict(True, "", GUARANTEED, ())
    return ClassificationVerdict(False, clauses[0], provenance_if_not, tuple(clauses))


# ---------------- 块分解 ----------------

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[VertexSet, ...]
    cut_vertices: VertexSet = field(default=())

    def to_json(self) -> dict[str, Any]:
        return {"blocks": [list(b) for b in self.blocks], "cut_vertices": list(self.cut_vertices)}


def block_decomposition(g: Graph) -> BlockDecomposition:
    """
    Hopcroft–Tarjan 块分解（迭代 DFS，避免递归深度问题）

    桥边各自成块；孤立顶点自成单点块。块按最小顶点排序。
    """
    n = g.order
    disc = [-1] * n
    low = [0] * n
    timer = 0
    blocks: list[VertexSet] = []
    cuts = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        if not g.adjacency[root]:
            disc[root] = timer
            timer += 1
            blocks.append((root,))
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(bits_of(g.adjacency[root])))]
        while stack:
            v, parent, neighbors = stack[-1]
            advanced = False
            for u in neighbors:
                if disc[u] < 0:
                    disc[u] = low[u] = timer
                    timer += 1
                    edge_stack.append((v, u))
                    stack.append((u, v, iter(bits_of(g.adjacency[u]))))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if u != parent and disc[u] < disc[v]:
                    low[v] = min(low[v], disc[u])
                    edge_stack.append((v, u))
            if advanced:
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                members = 0
                while True:
                    a, b = edge_stack.pop()
                    members |= 1 << a | 1 << b
                    if (a, b) == (parent, v):
                        break
                blocks.append(bits_of(members))
                if parent != root:
                    cuts |= 1 << parent
        if root_children > 1:
            cuts |= 1 << root
    return BlockDecomposition(tuple(sorted(blocks)), bits_of(cuts))


def _is_odd_cycle(g: Graph, block: VertexSet) -> bool:
    mask = mask_of(block)
    if len(block) < 3 or len(block) % 2 == 0:
        return False
    return all((g.adjacency[v] & mask).bit_count() == 2 for v in block)


def is_gallai_tree(g: Graph) -> bool:
    """连通图的每个块都是完全图或奇圈"""
    if not is_connected(g):
        raise GraphError("is_gallai_tree 需要连通图")
    for block in block_decomposition(g).blocks:
        if not (g.is_clique(mask_of(block)) or _is_odd_cycle(g, block)):
            return False
    return True


def find_even_cycle_with_at_most_one_chord(g: Graph, budget: Budget | None = None) -> VertexSet | None:
    """
    找顶点集 S（|S| 偶数且 ≥ 4），使 G[S] 是偶圈或偶圈加一条弦

    按 |S| 升序、同大小按字典序枚举。
    """
    budget = (budget or Budget()).start()
    for size in range(4, g.order + 1, 2):
        for subset in combinations(range(g.order), size):
            budget.tick()
            mask = mask_of(subset)
            edges = g.edges_within(mask)
            if edges == size and _is_cycle(g, mask):
                return subset
            if edges == size + 1:
                for u in subset:
                    for v in iter_bits(g.adjacency[u] & mask):
                        if u < v and _is_cycle(g, mask, skip=(u, v)):
                            return subset
    return None


def _is_cycle(g: Graph, mask: int, skip: tuple[int, int] | None = None) -> bool:
    """G[mask]（可去掉一条边）是否为连通 2-正则图"""
    def nbrs(v: int) -> int:
        row = g.adjacency[v] & mask
        if skip is not None and v in skip:
            row &= ~(1 << (skip[1] if v == skip[0] else skip[0]))
        return row

    if any(nbrs(v).bit_count() != 2 for v in iter_bits(mask)):
        return False
    start = (mask & -mask).bit_length() - 1
    seen = frontier = 1 << start
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= nbrs(v)
        frontier = reach & ~seen
        seen |= frontier
    return seen == mask


def has_even_cycle_with_at_most_one_chord(g: Graph, budget: Budget | None = None) -> bool:
    return find_even_cycle_with_at_most_one_chord(g, budget) is not None


# ---------------- 结构模板 ----------------

def is_almost_complete(b: Graph) -> bool:
    """ω(B) ≥ |B| − 1"""
    return clique_number(b) >= b.order - 1


def clique_components(b: Graph) -> list[int] | None:
    """每个连通分量都是完全图时返回各分量大小（降序），否则 None"""
    sizes = []
    for comp in components(b):
        if not b.is_clique(comp):
            return None
        sizes.append(comp.bit_count())
    return sorted(sizes, reverse=True)


def is_disjoint_union_of_cliques(b: Graph, max_parts: int | None = None) -> bool:
    sizes = clique_components(b)
    if sizes is None:
        return False
    return max_parts is None or len(sizes) <= max_parts


def _is_p3(g: Graph, comp: int) -> bool:
    return comp.bit_count() == 3 and g.edges_within(comp) == 2


def predict_Kt_join(b: Graph, t: int) -> ClassificationVerdict:
    """K_t ∨ B（t ≥ 4）不可 d_1-选 当且仅当 B 几乎完全、或 t=4 且 B 为 E_3 或 K_{1,3}、或 t=5 且 B 为 E_3"""
    if t < 4:
        raise PreconditionError(f"predict_Kt_join 需要 t ≥ 4，收到 t={t}")
    if b.order < 1:
        raise PreconditionError("B 至少需要 1 个顶点")
    clauses = []
    if is_almost_complete(b):
        clauses.append("almost-complete")
    if t == 4 and is_isomorphic(b, empty(3)):
        clauses.append("t=4,B=E3")
    if t == 4 and is_isomorphic(b, named("claw")):
        clauses.append("t=4,B=K13")
    if t == 5 and is_isomorphic(b, empty(3)):
        clauses.append("t=5,B=E3")
    return _verdict(clauses)


def predict_K3_join(b: Graph) -> ClassificationVerdict:
    """
    K_3 ∨ B 的 d_1-可选性

    例外：B 几乎完全；K_t + K_{|B|−t}；(K_1 + K_t) + K_{|B|−t−1}；E_3 + K_{|B|−3}；
    |B| ≤ 5 且 B ≅ E_3 ∨ K_{|B|−3}。并集中的各部分至少 1 个顶点。
    """
    if b.order < 1:
        raise PreconditionError("B 至少需要 1 个顶点")
    clauses = []
    if is_almost_complete(b):
        clauses.append("almost-complete")
    sizes = clique_components(b)
    if sizes is not None:
        if len(sizes) == 2:
            clauses.append("two-cliques")
        if len(sizes) == 3 and sizes[-1] == 1:
            clauses.append("K1+two-cliques")
        singletons = sizes.count(1)
        if (len(sizes) == 3 and singletons == 3) or (len(sizes) == 4 and singletons >= 3):
            clauses.append("E3+clique")
    if 3 <= b.order <= 5 and is_isomorphic(b, join(empty(3), complete(b.order - 3))):
        clauses.append("E3-join-clique")
    return _verdict(clauses)


def predict_E2_join(b: Graph) -> ClassificationVerdict:
    """
    E_2 ∨ B：B 不是“若干完全图 + 至多一个 P_3”的不交并时保证 d_1-可选

    反方向没有保证，预测为不可选的结果 provenance 记为 checker-needed，由检查器裁决。
    """
    if b.order < 1:
        raise PreconditionError("B 至少需要 1 个顶点")
    p3 = 0
    for comp in components(b):
        if b.is_clique(comp):
            continue
        if _is_p3(b, comp):
            p3 += 1
            continue
        return _verdict([])
    if p3 > 1:
        return _verdict([])
    return _verdict(["disjoint-cliques+P3" if p3 else "disjoint-cliques"], CHECKER_NEEDED)


def matching_clauses(family: str, b: Graph, t: int | None = None) -> tuple[str, ...]:
    """返回给定族中所有命中的例外条款（重叠如实记录）"""
    if family == "kt":
        return predict_Kt_join(b, 4 if t is None else t).matching_clauses
    if family == "k3":
        return predict_K3_join(b).matching_clauses
    if family == "e2":
        return predict_E2_join(b).matching_clauses
    raise ValueError(f"未知联图族: {family}")


def family_join(family: str, b: Graph, t: int | None = None) -> Graph:
    """构造该族对应的联图 A ∨ B"""
    if family == "kt":
        return join(complete(4 if t is None else t), b)
    if family == "k3":
        return join(complete(3), b)
    if family == "e2":
        return join(empty(2), b)
    raise ValueError(f"未知联图族: {family}")


def predict(family: str, b: Graph, t: int | None = None) -> ClassificationVerdict:
    if family == "kt":
        return predict_Kt_join(b, 4 if t is None else t)
    if family == "k3":
        return predict_K3_join(b)
    if family == "e2":
        return predict_E2_join(b)
    raise ValueError(f"未知联图族: {family}")


