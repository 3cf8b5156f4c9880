"""
精确图不变量

团枚举用带枢轴的 Bron–Kerbosch（位向量实现）；χ 用迭代 k-可着色判定，
下界 max{ω, ⌈n/α⌉}，上界取 DSATUR 贪心着色。启发式只用于定界，结果必须精确。
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple

from .budget import Budget
from .errors import PreconditionError
from .graph import Graph, VertexSet, bits_of, complement, delete_vertex, iter_bits


@dataclass(frozen=True)
class GraphInvariants:
    order: int
    size: int
    max_degree: int
    clique_number: int
    chromatic_number: int
    independence_number: int

    def to_json(self) -> dict:
        return asdict(self)


class JoinWitness(NamedTuple):
    """K_s ∨ E_t 子图见证：s-团及其选中的 t 个公共邻居"""

    clique: VertexSet
    common: VertexSet


# ---------------- 团与独立集 ----------------

def _bron_kerbosch(g: Graph, r: int, p: int, x: int, out: list[int]) -> None:
    if not p and not x:
        out.append(r)
        return
    adj = g.adjacency
    pivot = max(iter_bits(p | x), key=lambda u: (adj[u] & p).bit_count())
    for v in list(iter_bits(p & ~adj[pivot])):
        bit = 1 << v
        _bron_kerbosch(g, r | bit, p & adj[v], x & adj[v], out)
        p &= ~bit
        x |= bit


def maximal_cliques(g: Graph) -> list[int]:
    """全部极大团（位向量），按顶点序列字典序排列"""
    if g.order == 0:
        return []
    out: list[int] = []
    _bron_kerbosch(g, 0, g.full_mask, 0, out)
    return sorted(out, key=bits_of)


def maximum_cliques(g: Graph) -> list[int]:
    cliques = maximal_cliques(g)
    best = max((c.bit_count() for c in cliques), default=0)
    return [c for c in cliques if c.bit_count() == best]


def clique_number(g: Graph) -> int:
    return max((c.bit_count() for c in maximal_cliques(g)), default=0)


def maximal_independent_sets(g: Graph) -> list[int]:
    return maximal_cliques(complement(g))


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def iter_cliques_of_size(g: Graph, s: int):
    """按字典序产出所有 s-团（位向量）"""
    adj = g.adjacency

    def extend(clique: int, candidates: int, need: int):
        if need == 0:
            yield clique
            return
        for v in iter_bits(candidates):
            if (candidates >> v).bit_count() < need:
                return
            yield from extend(clique | 1 << v, candidates & adj[v] & ~((2 << v) - 1), need - 1)

    yield from extend(0, g.full_mask, s)


def contains_clique_join(g: Graph, s: int, t: int) -> JoinWitness | None:
    """
    是否含 K_s ∨ E_t 子图（非诱导）

    即存在 s-团 Q 使 |∩_{q∈Q} N(q) \\ Q| ≥ t；见证取字典序第一个团及其前 t 个公共邻居。
    """
    if s < 1 or t < 0:
        raise PreconditionError(f"contains_clique_join 需要 s ≥ 1, t ≥ 0，收到 s={s}, t={t}")
    for clique in iter_cliques_of_size(g, s):
        common = g.common_neighbors(clique)
        if common.bit_count() >= t:
            return JoinWitness(bits_of(clique), bits_of(common)[:t])
    return None


# ---------------- 着色 ----------------

def greedy_coloring(g: Graph) -> tuple[int, ...]:
    """DSATUR 贪心着色，颜色从 0 开始"""
    n = g.order
    colors = [-1] * n
    seen = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (seen[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in iter_bits(g.adjacency[v]):
            seen[u] |= 1 << c
    return tuple(colors)


def is_k_colorable(g: Graph, k: int, budget: Budget | None = None) -> tuple[int, ...] | None:
    """
    精确判定 k-可着色，返回一个着色或 None

    DSATUR 选点 + 前向检查；新颜色只能取已用最大颜色 + 1，消去颜色置换对称。
    """
    n = g.order
    if n == 0:
        return ()
    if k <= 0:
        return None
    budget = (budget or Budget()).start()
    adj = g.adjacency
    colors = [-1] * n
    forbid = [0] * n
    full = (1 << k) - 1

    def pick() -> int:
        best, best_key = -1, None
        for u in range(n):
            if colors[u] >= 0:
                continue
            key = (forbid[u].bit_count(), adj[u].bit_count())
            if best_key is None or key > best_key:
                best, best_key = u, key
        return best

    def search(colored: int, max_used: int) -> bool:
        if colored == n:
            return True
        budget.tick()
        v = pick()
        limit = min(k, max_used + 2)
        for c in iter_bits(full & ~forbid[v] & ((1 << limit) - 1)):
            bit = 1 << c
            colors[v] = c
            touched = []
            dead = False
            for u in iter_bits(adj[v]):
                if colors[u] < 0 and not forbid[u] & bit:
                    forbid[u] |= bit
                    touched.append(u)
                    if forbid[u] & full == full:
                        dead = True
            if not dead and search(colored + 1, max(max_used, c)):
                return True
            for u in touched:
                forbid[u] &= ~bit
            colors[v] = -1
        return False

    if search(0, -1):
        return tuple(colors)
    return None


def chromatic_number(g: Graph, budget: Budget | None = None) -> int:
    if g.order == 0:
        return 0
    budget = (budget or Budget()).start()
    lower = max(clique_number(g), -(-g.order // independence_number(g)))
    upper = max(greedy_coloring(g)) + 1
    for k in range(lower, upper):
        if is_k_colorable(g, k, budget) is not None:
            return k
    return upper


def invariants(g: Graph, budget: Budget | None = None) -> GraphInvariants:
    """Δ、ω、χ、α 的精确值；预算耗尽时抛出 BudgetExhausted，绝不近似"""
    return GraphInvariants(
        order=g.order,
        size=g.size,
        max_degree=g.max_degree,
        clique_number=clique_number(g),
        chromatic_number=chromatic_number(g, budget),
        independence_number=independence_number(g),
    )


def is_vertex_critical(g: Graph, k: int, budget: Budget | None = None) -> bool:
    """χ(G) = k 且对每个 v 有 χ(G − v) = k − 1"""
    if g.order == 0:
        return False
    budget = (budget or Budget()).start()
    if is_k_colorable(g, k, budget) is None or is_k_colorable(g, k - 1, budget) is not None:
        return False
    for v in range(g.order):
        if _is_k_colorable_without(g, v, k - 1, budget) is None:
            return False
    return True


def _is_k_colorable_without(g: Graph, v: int, k: int, budget: Budget) -> tuple[int, ...] | None:
    return is_k_colorable(delete_vertex(g, v).graph, k, budget)


def borodin_kostochka_bound(inv: GraphInvariants) -> int:
    """max{ω, Δ − 1}"""
    return max(inv.clique_number, inv.max_degree - 1)


def brooks_bound(inv: GraphInvariants) -> int:
    """max{ω, Δ}"""
    return max(inv.clique_number, inv.max_degree)


# ---------------- 孪生点 ----------------

def twin_classes(g: Graph) -> list[VertexSet]:
    """
    孪生类：闭邻域相同（真孪生）或开邻域相同（假孪生）的顶点

    一个顶点不可能同时有真孪生和假孪生，两类划分互不冲突。交换同类两点是自同构。
    """
    closed: dict[int, list[int]] = {}
    for v in range(g.order):
        closed.setdefault(g.adjacency[v] | 1 << v, []).append(v)
    classes = [tuple(group) for group in closed.values() if len(group) > 1]
    grouped = {v for group in classes for v in group}
    opened: dict[int, list[int]] = {}
    for v in range(g.order):
        if v not in grouped:
            opened.setdefault(g.adjacency[v], []).append(v)
    classes += [tuple(group) for group in opened.values()]
    return sorted(classes)
