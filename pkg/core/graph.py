"""
小图表示与组合算子

邻接关系存为每个顶点一个位向量（int），顶点数上限 MAX_ORDER。
所有图对象不可变；删除/诱导/收缩类操作返回 Relabeled，携带旧→新下标映射。
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import networkx as nx

from .defaults import MAX_ORDER
from .errors import GraphError

VertexSet = tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    """按升序产出位向量中的顶点下标"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> VertexSet:
    return tuple(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    order: int
    adjacency: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.order <= MAX_ORDER:
            raise GraphError(f"顶点数 {self.order} 超出范围 0..{MAX_ORDER}")
        if len(self.adjacency) != self.order:
            raise GraphError("邻接表长度与顶点数不符")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.adjacency):
            if row & ~full:
                raise GraphError(f"顶点 {v} 的邻接包含越界下标")
            if row >> v & 1:
                raise GraphError(f"顶点 {v} 存在自环", pair=(v, v))
            for u in iter_bits(row):
                if not self.adjacency[u] >> v & 1:
                    raise GraphError(f"邻接关系不对称: {v}-{u}", pair=(v, u))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edges()})"

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def size(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def neighbors(self, v: int) -> int:
        return self.adjacency[v]

    def neighbor_list(self, v: int) -> VertexSet:
        return bits_of(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in iter_bits(self.adjacency[u] >> (u + 1) << (u + 1))]

    def is_clique(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if (mask & ~(1 << v)) & ~self.adjacency[v]:
                return False
        return True

    def is_independent(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if self.adjacency[v] & mask:
                return False
        return True

    def common_neighbors(self, mask: int) -> int:
        """mask 中所有顶点的公共邻居（不含 mask 自身）"""
        common = self.full_mask
        for v in iter_bits(mask):
            common &= self.adjacency[v]
        return common & ~mask

    def edges_within(self, mask: int) -> int:
        return sum((self.adjacency[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.order:
            raise GraphError(f"顶点下标 {v} 越界 (0..{self.order - 1})")


class Relabeled(NamedTuple):
    """结果图与旧→新下标映射（被删除的顶点不在映射中）"""

    graph: Graph
    index_map: dict[int, int]

    @property
    def origin(self) -> VertexSet:
        """新下标 → 旧下标（收缩时取代表元中最小者）"""
        back: dict[int, int] = {}
        for old, new in sorted(self.index_map.items()):
            back.setdefault(new, old)
        return tuple(back[i] for i in range(self.graph.order))


# ---------------- 构造 ----------------

def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """由顶点数与边表构造图；重复边合并，越界或自环报错并指出该边"""
    if not isinstance(n, int) or not 0 <= n <= MAX_ORDER:
        raise GraphError(f"顶点数 {n} 超出范围 0..{MAX_ORDER}")
    rows = [0] * n
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"边 ({u},{v}) 下标越界 (n={n})", pair=(u, v))
        if u == v:
            raise GraphError(f"边 ({u},{v}) 是自环", pair=(u, v))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"环至少需要 3 个顶点: C_{n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return from_edge_list(10, outer + inner + spokes)


# 小图的固定标号
_FIXED = {
    "claw": (4, [(0, 1), (0, 2), (0, 3)]),
    "paw": (4, [(0, 1), (0, 2), (1, 2), (0, 3)]),
    "antipaw": (4, [(0, 1), (0, 2)]),
    "chair": (5, [(0, 1), (1, 2), (1, 3), (2, 4)]),
    "antichair": (5, [(0, 1), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]),
}

_FAMILY_RE = re.compile(r"^([KEPC])_?\{?(\d+)\}?$")
_BIPARTITE_RE = re.compile(r"^K_?\{?(\d+),(\d+)\}?$")
_MULTIPLE_RE = re.compile(r"^(\d+)\s*(.+)$")


def named(name: str) -> Graph:
    """
    按名字构造图

    支持 K_n / E_n / P_n / C_n（写法 K5、K_5、K_{5} 均可）、K_{a,b}、
    claw、paw、antipaw、chair、antichair、petersen；
    "2P3" 表示两份 P_3 的不交并，"K3+P3" 表示不交并。
    """
    text = str(name).strip()
    if not text:
        raise GraphError("图名为空")
    if "+" in text:
        parts = [named(p) for p in text.split("+")]
        result = parts[0]
        for part in parts[1:]:
            result = disjoint_union(result, part)
        return result
    lowered = text.lower()
    if lowered in _FIXED:
        n, edges = _FIXED[lowered]
        return from_edge_list(n, edges)
    if lowered == "petersen":
        return petersen()
    match = _BIPARTITE_RE.match(text)
    if match:
        return complete_bipartite(int(match.group(1)), int(match.group(2)))
    match = _FAMILY_RE.match(text)
    if match:
        kind, n = match.group(1), int(match.group(2))
        if n < 1:
            raise GraphError(f"参数必须 ≥ 1: {name}")
        if kind == "K":
            return complete(n)
        if kind == "E":
            return empty(n)
        if kind == "P":
            return path(n)
        return cycle(n)
    match = _MULTIPLE_RE.match(text)
    if match and int(match.group(1)) >= 1:
        copies = int(match.group(1))
        base = named(match.group(2))
        result = base
        for _ in range(copies - 1):
            result = disjoint_union(result, base)
        return result
    raise GraphError(f"未知图名: {name}")


def blown_cycle(sizes: Iterable[int]) -> Graph:
    """5-环的每个顶点吹胀为团 B_i，B_i 与 B_{i+1 mod 5} 完全相连"""
    sizes = list(sizes)
    if len(sizes) != 5 or any(int(s) < 1 for s in sizes):
        raise GraphError(f"blown_cycle 需要 5 个正整数，收到 {sizes}")
    starts = [sum(sizes[:i]) for i in range(5)]
    blobs = [list(range(starts[i], starts[i] + sizes[i])) for i in range(5)]
    edges = []
    for i in range(5):
        blob, nxt = blobs[i], blobs[(i + 1) % 5]
        edges += [(u, v) for a, u in enumerate(blob) for v in blob[a + 1:]]
        edges += [(u, v) for u in blob for v in nxt]
    return from_edge_list(sum(sizes), edges)


# ---------------- 组合算子 ----------------

def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.order
    return Graph(a.order + b.order, a.adjacency + tuple(row << shift for row in b.adjacency))


def join(a: Graph, b: Graph) -> Graph:
    """A∨B：不交并再加上所有跨边"""
    mask_a = a.full_mask
    mask_b = b.full_mask << a.order
    rows = tuple(row | mask_b for row in a.adjacency)
    rows += tuple((row << a.order) | mask_a for row in b.adjacency)
    return Graph(a.order + b.order, rows)


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adjacency)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Relabeled:
    """诱导子图，顶点按原下标升序重新编号"""
    keep = sorted(set(vertices))
    if not keep:
        raise GraphError("诱导子图的顶点集不能为空")
    for v in keep:
        g.check_vertex(v)
    return _repack(g, keep)


def delete_vertex(g: Graph, v: int) -> Relabeled:
    g.check_vertex(v)
    return _repack(g, [u for u in range(g.order) if u != v])


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Relabeled:
    drop = set(vertices)
    for v in drop:
        g.check_vertex(v)
    return _repack(g, [u for u in range(g.order) if u not in drop])


def _repack(g: Graph, keep: Iterable[int]) -> Relabeled:
    keep = list(keep)
    index_map = {old: new for new, old in enumerate(keep)}
    rows = []
    for old in keep:
        row = 0
        for u in iter_bits(g.adjacency[old]):
            new = index_map.get(u)
            if new is not None:
                row |= 1 << new
        rows.append(row)
    return Relabeled(Graph(len(keep), tuple(rows)), index_map)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """H + xy；恒等映射即包含满同态"""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise GraphError(f"不能添加自环 ({u},{v})", pair=(u, v))
    rows = list(g.adjacency)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(g.order, tuple(rows))


def collapse_independent_set(g: Graph, vertices: Iterable[int]) -> Relabeled:
    """
    G/[I]：把独立集 I 收缩为一个新顶点，去掉重边

    其余顶点保持相对顺序，新顶点放在最后；index_map 即典范满同态 G ↠ G/[I]。
    """
    members = sorted(set(vertices))
    for v in members:
        g.check_vertex(v)
    if len(members) < 2:
        raise GraphError(f"收缩需要至少 2 个顶点，收到 {members}")
    mask = mask_of(members)
    if not g.is_independent(mask):
        bad = next((u, w) for u in members for w in members if u < w and g.has_edge(u, w))
        raise GraphError(f"顶点集 {members} 不是独立集", pair=bad)
    rest = [u for u in range(g.order) if not mask >> u & 1]
    base = _repack(g, rest)
    new_vertex = len(rest)
    union = 0
    for v in members:
        union |= g.adjacency[v]
    new_row = 0
    for u in iter_bits(union):
        new_row |= 1 << base.index_map[u]
    rows = [row | ((new_row >> i & 1) << new_vertex) for i, row in enumerate(base.graph.adjacency)]
    rows.append(new_row)
    index_map = dict(base.index_map)
    index_map.update({v: new_vertex for v in members})
    return Relabeled(Graph(new_vertex + 1, tuple(rows)), index_map)


# ---------------- 连通性 ----------------

def components(g: Graph) -> list[int]:
    """连通分量（位向量），按最小顶点升序"""
    seen = 0
    result = []
    for v in range(g.order):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            reach = 0
            for u in iter_bits(frontier):
                reach |= g.adjacency[u]
            frontier = reach & ~comp
            comp |= frontier
        seen |= comp
        result.append(comp)
    return result


def is_connected(g: Graph) -> bool:
    return g.order > 0 and len(components(g)) == 1


# ---------------- networkx 互转 ----------------

def to_networkx(g: Graph) -> nx.Graph:
    result = nx.Graph()
    result.add_nodes_from(range(g.order))
    result.add_edges_from(g.edges())
    return result


def from_networkx(graph: nx.Graph) -> Graph:
    """节点按 sorted 顺序（不可比较时按插入顺序）重新编号为 0..n-1"""
    nodes = list(graph.nodes())
    try:
        nodes = sorted(nodes)
    except TypeError:
        pass
    index = {node: i for i, node in enumerate(nodes)}
    return from_edge_list(len(nodes), [(index[u], index[v]) for u, v in graph.edges() if u != v])


def graph_inventory(max_order: int, *, min_order: int = 1, connected_only: bool = False) -> list[Graph]:
    """networkx 图谱中顶点数 ≤ max_order（≤ 7）的全部非同构图"""
    if max_order > 7:
        raise GraphError("networkx 图谱只覆盖 7 个顶点以内的图")
    result = []
    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if n < min_order or n > max_order:
            continue
        g = from_networkx(atlas_graph)
        if connected_only and not is_connected(g):
            continue
        result.append(g)
    return result
