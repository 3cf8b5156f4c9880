"""
满同态与子代序

H ↠ A 是顶点满射的图同态；A 是 G 的子代，当 A ≇ G 且存在诱导子图 H ⊴ G 与满同态 H ↠ A。
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Mapping, NamedTuple

from .budget import Budget
from .errors import PreconditionError
from .graph import Graph, VertexSet, add_edge, induced_subgraph, iter_bits
from .invariants import is_k_colorable
from .isomorphism import is_isomorphic
from .logger import logger


@dataclass(frozen=True)
class Epimorphism:
    """images[v] 为 H 的顶点 v 在 A 中的像"""

    images: tuple[int, ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Epimorphism":
        return cls(tuple(mapping[v] for v in range(len(mapping))))

    def is_valid(self, h: Graph, a: Graph) -> bool:
        return is_epimorphism(h, a, self.images)

    def to_json(self) -> dict[str, Any]:
        return {"images": list(self.images)}


def is_epimorphism(h: Graph, a: Graph, images) -> bool:
    """保持相邻关系且像覆盖 A 的全部顶点"""
    images = list(images)
    if len(images) != h.order or any(not 0 <= x < a.order for x in images):
        return False
    for u, v in h.edges():
        if not a.has_edge(images[u], images[v]):
            return False
    return set(images) == set(range(a.order))


def exists_epimorphism(h: Graph, a: Graph, budget: Budget | None = None) -> Epimorphism | None:
    """
    回溯搜索 H ↠ A

    候选像取已映射邻居之像的公共邻域；未映射顶点数少于未覆盖的 A 顶点时剪枝。
    预算耗尽抛出 BudgetExhausted。
    """
    if h.order < a.order:
        return None
    if a.order == 0:
        return Epimorphism(()) if h.order == 0 else None
    budget = (budget or Budget()).start()
    n = h.order
    order: list[int] = []
    chosen = 0
    for _ in range(n):
        v = max(
            (u for u in range(n) if not chosen >> u & 1),
            key=lambda u: ((h.adjacency[u] & chosen).bit_count(), h.degree(u), -u),
        )
        order.append(v)
        chosen |= 1 << v
    images = [-1] * n
    all_a = a.full_mask

    def search(i: int, mapped: int, covered: int) -> bool:
        remaining = n - i
        if (all_a & ~covered).bit_count() > remaining:
            return False
        if i == n:
            return True
        budget.tick()
        v = order[i]
        candidates = all_a
        for u in iter_bits(h.adjacency[v] & mapped):
            candidates &= a.adjacency[images[u]]
        for x in iter_bits(candidates):
            images[v] = x
            if search(i + 1, mapped | 1 << v, covered | 1 << x):
                return True
        images[v] = -1
        return False

    if search(0, 0, 0):
        return Epimorphism(tuple(images))
    return None


class ChildWitness(NamedTuple):
    """子代见证：G 中诱导子图的顶点集与其到 A 的满同态"""

    subset: VertexSet
    epimorphism: Epimorphism


def is_child(a: Graph, g: Graph, budget: Budget | None = None) -> ChildWitness | None:
    """
    A ≺ G 的见证；诱导子图按大小升序、同大小按字典序枚举

    A ≅ G 时直接返回 None。预算耗尽抛出 BudgetExhausted。
    """
    budget = (budget or Budget()).start()
    if is_isomorphic(a, g, budget):
        return None
    for size in range(max(a.order, 1), g.order + 1):
        for subset in combinations(range(g.order), size):
            budget.tick()
            h = induced_subgraph(g, subset).graph
            epi = exists_epimorphism(h, a, budget)
            if epi is not None:
                logger.debug(f"[MuleLab] 子代见证: 子集={subset}")
                return ChildWitness(subset, epi)
    return None


def inclusion_epimorphism(h: Graph, x: int, y: int) -> tuple[Graph, Epimorphism]:
    """H ↠ H + xy 的恒等映射"""
    return add_edge(h, x, y), Epimorphism(tuple(range(h.order)))


def forced_equal_pair(h: Graph, x: int, y: int, colors: int) -> bool:
    """
    H 的每个 colors-着色都给 x、y 同色，即 H + xy 不可 colors-着色

    x、y 必须不相邻；H 本身不可着色时结论平凡成立。
    """
    h.check_vertex(x)
    h.check_vertex(y)
    if x == y or h.has_edge(x, y):
        raise PreconditionError(f"顶点 {x}、{y} 必须是不同且不相邻的顶点")
    return is_k_colorable(add_edge(h, x, y), colors) is None
