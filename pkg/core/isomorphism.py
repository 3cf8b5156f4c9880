"""
小图同构判定：不变量筛选 → 颜色细化 → 位向量回溯
"""

from __future__ import annotations

from .budget import Budget
from .graph import Graph, iter_bits


def _refine(a: Graph, b: Graph) -> tuple[list[int], list[int]]:
    """两图共用签名表做颜色细化，保证颜色编号可跨图比较"""
    colors_a = list(a.degrees)
    colors_b = list(b.degrees)
    classes = len(set(colors_a) | set(colors_b))
    while True:
        table: dict[tuple, int] = {}

        def relabel(g: Graph, colors: list[int]) -> list[int]:
            result = []
            for v in range(g.order):
                signature = (colors[v], tuple(sorted(colors[u] for u in iter_bits(g.adjacency[v]))))
                result.append(table.setdefault(signature, len(table)))
            return result

        colors_a = relabel(a, colors_a)
        colors_b = relabel(b, colors_b)
        if len(table) == classes:
            return colors_a, colors_b
        classes = len(table)


def find_isomorphism(a: Graph, b: Graph, budget: Budget | None = None) -> dict[int, int] | None:
    """返回 A → B 的同构映射，不存在时返回 None"""
    if a.order != b.order or a.size != b.size or sorted(a.degrees) != sorted(b.degrees):
        return None
    n = a.order
    if n == 0:
        return {}
    colors_a, colors_b = _refine(a, b)
    if sorted(colors_a) != sorted(colors_b):
        return None
    budget = (budget or Budget.unlimited()).start()

    by_color: dict[int, int] = {}
    for w, c in enumerate(colors_b):
        by_color[c] = by_color.get(c, 0) | 1 << w
    class_size = {c: mask.bit_count() for c, mask in by_color.items()}

    # 静态顺序：优先与已选顶点相邻多、所在颜色类小的顶点
    order: list[int] = []
    chosen = 0
    for _ in range(n):
        v = max(
            (u for u in range(n) if not chosen >> u & 1),
            key=lambda u: ((a.adjacency[u] & chosen).bit_count(), -class_size[colors_a[u]], -u),
        )
        order.append(v)
        chosen |= 1 << v

    mapping = [-1] * n

    def search(i: int, mapped_a: int, used_b: int) -> bool:
        if i == n:
            return True
        budget.tick()
        v = order[i]
        image = 0
        for u in iter_bits(a.adjacency[v] & mapped_a):
            image |= 1 << mapping[u]
        for w in iter_bits(by_color[colors_a[v]] & ~used_b):
            if b.adjacency[w] & used_b != image:
                continue
            mapping[v] = w
            if search(i + 1, mapped_a | 1 << v, used_b | 1 << w):
                return True
        mapping[v] = -1
        return False

    if search(0, 0, 0):
        return dict(enumerate(mapping))
    return None


def is_isomorphic(a: Graph, b: Graph, budget: Budget | None = None) -> bool:
    return find_isomorphism(a, b, budget) is not None
