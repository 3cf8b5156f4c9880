"""
列表着色求解器与相关类型

颜色用正整数表示，列表内部存为位向量（第 c 位表示颜色 c，第 0 位不用）。
求解器：最少剩余值选点 + 前向检查；每层先剥离“列表比未着色邻居多”的顶点
（它们总能最后着色），剩余部分若是团则直接用二分匹配（Hall 定理）判定。
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

from .budget import Budget
from .errors import GraphError
from .graph import Graph, Relabeled, bits_of, delete_vertices, iter_bits, mask_of

ColoringWitness = tuple[int, ...]


@dataclass(frozen=True)
class ListAssignment:
    """每个顶点的颜色列表；pot 为所有列表之并"""

    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        for v, mask in enumerate(self.masks):
            if mask < 0 or mask & 1:
                raise ValueError(f"顶点 {v} 的列表含非正颜色")

    @classmethod
    def from_lists(cls, lists: Iterable[Iterable[int]]) -> "ListAssignment":
        masks = []
        for v, colors in enumerate(lists):
            mask = 0
            for c in colors:
                c = int(c)
                if c < 1:
                    raise ValueError(f"顶点 {v} 的颜色 {c} 必须是正整数")
                mask |= 1 << c
            masks.append(mask)
        return cls(tuple(masks))

    @property
    def lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(bits_of(mask) for mask in self.masks)

    @property
    def pot_mask(self) -> int:
        pot = 0
        for mask in self.masks:
            pot |= mask
        return pot

    @property
    def pot(self) -> tuple[int, ...]:
        return bits_of(self.pot_mask)

    @property
    def pot_size(self) -> int:
        return self.pot_mask.bit_count()

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() for mask in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def flattened(self) -> tuple[int, ...]:
        return tuple(c for colors in self.lists for c in colors)

    def is_subset(self, x: int, y: int) -> bool:
        """L(x) ⊆ L(y)"""
        return not self.masks[x] & ~self.masks[y]

    def canonical(self) -> "ListAssignment":
        """颜色置换下字典序最小的代表（按顶点下标顺序）"""
        return ListAssignment(tuple(canonical_masks(self.masks, self.pot_mask)))

    def restricted(self, vertices: Iterable[int]) -> "ListAssignment":
        return ListAssignment(tuple(self.masks[v] for v in vertices))

    def to_json(self) -> dict[str, Any]:
        return {"pot_size": self.pot_size, "lists": [list(colors) for colors in self.lists]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ListAssignment":
        lists = data.get("lists")
        if not isinstance(lists, list):
            raise ValueError("列表分配 JSON 缺少 lists 字段")
        assignment = cls.from_lists(lists)
        pot_size = data.get("pot_size")
        if pot_size is not None and int(pot_size) != assignment.pot_size:
            raise ValueError(f"pot_size={pot_size} 与列表之并的大小 {assignment.pot_size} 不符")
        return assignment


def canonical_masks(masks: Sequence[int], pot_mask: int) -> list[int]:
    """
    颜色置换下的典范形式：依次处理各列表，颜色按“出现模式”分类，
    每类取编号最小的若干颜色。结果颜色编号为 1..|pot|。
    """
    classes = [pot_mask] if pot_mask else []
    result = []
    for mask in masks:
        new_classes = []
        new_mask = 0
        pos = 1
        for cls in classes:
            inside = cls & mask
            outside = cls & ~mask
            k = inside.bit_count()
            new_mask |= ((1 << k) - 1) << pos
            if inside:
                new_classes.append(inside)
            if outside:
                new_classes.append(outside)
            pos += cls.bit_count()
        classes = new_classes
        result.append(new_mask)
    return result


class Outcome(str, Enum):
    CHOOSABLE = "CHOOSABLE"
    NOT_CHOOSABLE = "NOT-CHOOSABLE"
    INDETERMINATE = "INDETERMINATE"


@dataclass
class SearchStats:
    assignments: int = 0
    prunes: int = 0
    nodes: int = 0
    elapsed: float = 0.0
    pot_sizes: list[int] = field(default_factory=list)
    peeled: int = 0

    def merge(self, other: Mapping[str, Any]) -> None:
        self.assignments += int(other.get("assignments", 0))
        self.prunes += int(other.get("prunes", 0))

    def to_json(self) -> dict[str, Any]:
        return {
            "assignments": self.assignments,
            "prunes": self.prunes,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 4),
            "pot_sizes": list(self.pot_sizes),
            "peeled": self.peeled,
        }


@dataclass
class ChoosabilityVerdict:
    outcome: Outcome
    witness: ListAssignment | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    reason: str = ""

    @property
    def choosable(self) -> bool | None:
        if self.outcome is Outcome.INDETERMINATE:
            return None
        return self.outcome is Outcome.CHOOSABLE

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"outcome": self.outcome.value, "stats": self.stats.to_json()}
        if self.witness is not None:
            data["witness"] = self.witness.to_json()
        if self.reason:
            data["reason"] = self.reason
        return data


# ---------------- 二分匹配 ----------------

def _match_lists(domains: Sequence[int]) -> list[int] | None:
    """Kuhn 增广路；返回每个位置的代表颜色，不存在相异代表系时返回 None"""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for c in iter_bits(domains[i]):
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = i
                return True
        return False

    for i in range(len(domains)):
        if not augment(i, set()):
            return None
    result = [0] * len(domains)
    for c, i in owner.items():
        result[i] = c
    return result


def clique_list_colorable(lists: Iterable[Iterable[int]]) -> ColoringWitness | None:
    """团上的列表着色 = 相异代表系；返回代表颜色序列或 None"""
    masks = ListAssignment.from_lists(lists).masks
    sdr = _match_lists(masks)
    return tuple(sdr) if sdr is not None else None


# ---------------- 回溯求解 ----------------

def _is_clique(adj: Sequence[int], mask: int) -> bool:
    for v in iter_bits(mask):
        if (mask & ~(1 << v)) & ~adj[v]:
            return False
    return True


def _solve(adj: Sequence[int], dom: list[int], uncolored: int, colors: list[int], budget: Budget) -> bool:
    budget.tick()
    peeled = []
    changed = True
    while changed:
        changed = False
        for v in iter_bits(uncolored):
            if dom[v].bit_count() > (adj[v] & uncolored).bit_count():
                uncolored &= ~(1 << v)
                peeled.append(v)
                changed = True

    if uncolored:
        if _is_clique(adj, uncolored):
            core = bits_of(uncolored)
            sdr = _match_lists([dom[v] for v in core])
            if sdr is None:
                return False
            for v, c in zip(core, sdr):
                colors[v] = c
        else:
            v = min(
                iter_bits(uncolored),
                key=lambda u: (dom[u].bit_count(), -(adj[u] & uncolored).bit_count(), u),
            )
            rest = uncolored & ~(1 << v)
            nbrs = adj[v] & rest
            for c in iter_bits(dom[v]):
                bit = 1 << c
                child = dom[:]
                dead = False
                for u in iter_bits(nbrs):
                    if child[u] & bit:
                        child[u] &= ~bit
                        if not child[u]:
                            dead = True
                            break
                if dead:
                    continue
                colors[v] = c
                if _solve(adj, child, rest, colors, budget):
                    break
                colors[v] = 0
            else:
                return False

    # 剥离的顶点逆序贪心着色
    for v in reversed(peeled):
        used = 0
        for u in iter_bits(adj[v]):
            if colors[u]:
                used |= 1 << colors[u]
        free = dom[v] & ~used
        colors[v] = (free & -free).bit_length() - 1
    return True


def solve_masks(adj: Sequence[int], masks: Sequence[int], budget: Budget) -> list[int] | None:
    """对原始位向量列表求解，供穷举内核在热路径上调用"""
    if any(mask == 0 for mask in masks):
        return None
    colors = [0] * len(masks)
    if _solve(adj, list(masks), (1 << len(masks)) - 1, colors, budget):
        return colors
    return None


def color_from_lists(g: Graph, lists: ListAssignment, budget: Budget | None = None) -> ColoringWitness | None:
    """从列表中取色的正常着色；穷尽搜索空间后才返回 None，结果对固定输入确定"""
    if len(lists) != g.order:
        raise GraphError(f"列表数 {len(lists)} 与顶点数 {g.order} 不符")
    budget = (budget or Budget.unlimited()).start()
    colors = solve_masks(g.adjacency, lists.masks, budget)
    return tuple(colors) if colors is not None else None


def is_proper_list_coloring(g: Graph, lists: ListAssignment, coloring: Sequence[int]) -> bool:
    if len(coloring) != g.order or len(lists) != g.order:
        return False
    for v, c in enumerate(coloring):
        if not lists.masks[v] >> c & 1:
            return False
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def color_with_repeated_color(g: Graph, lists: ListAssignment, budget: Budget | None = None) -> ColoringWitness | None:
    """
    用至多 |G| − 1 种颜色从列表着色

    等价于存在某对不相邻顶点同色：枚举这样的顶点对与公共颜色，固定后求解。
    """
    budget = (budget or Budget.unlimited()).start()
    masks = lists.masks
    for x in range(g.order):
        for y in range(x + 1, g.order):
            if g.has_edge(x, y):
                continue
            for c in iter_bits(masks[x] & masks[y]):
                fixed = list(masks)
                fixed[x] = fixed[y] = 1 << c
                colors = solve_masks(g.adjacency, fixed, budget)
                if colors is not None:
                    return tuple(colors)
    return None


# ---------------- 与证明相关的辅助构造 ----------------

def residual_lists(g: Graph, colored: Mapping[int, int], t: int) -> tuple[Relabeled, ListAssignment]:
    """
    部分着色 π 的剩余列表：L_π(x) = {1..t} − π(N(x) ∩ dom π)，定义在 G − dom π 上
    """
    for v, c in colored.items():
        g.check_vertex(v)
        if not 1 <= c <= t:
            raise ValueError(f"顶点 {v} 的颜色 {c} 不在 1..{t} 中")
    rest = delete_vertices(g, colored)
    full = ((1 << t) - 1) << 1
    masks = []
    for old in rest.origin:
        used = 0
        for u in iter_bits(g.adjacency[old]):
            if u in colored:
                used |= 1 << colored[u]
        masks.append(full & ~used)
    return rest, ListAssignment(tuple(masks))


def max_independent_condition(a_order: int, b: Graph, lists: ListAssignment, independent: Iterable[int]) -> bool:
    """(|A| − 1)|I| + |E_B(I)| > |Pot(L)|；成立时 B 可以用至多 |B| − 1 种颜色从 L 着色"""
    members = mask_of(independent)
    if not b.is_independent(members):
        raise GraphError(f"{bits_of(members)} 不是独立集")
    incident = sum(b.degree(v) for v in iter_bits(members))
    return (a_order - 1) * members.bit_count() + incident > lists.pot_size


def d_r_sizes(g: Graph, r: int) -> tuple[int, ...]:
    """f(v) = d(v) − r"""
    return tuple(d - r for d in g.degrees)


def random_assignment(sizes: Sequence[int], pot_size: int, rng: random.Random) -> ListAssignment:
    """从 {1..pot_size} 中随机抽取各顶点的列表（冒烟测试用）"""
    colors = list(range(1, pot_size + 1))
    return ListAssignment.from_lists(rng.sample(colors, size) for size in sizes)
