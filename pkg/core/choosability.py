"""
f-可选性穷举内核

对每个 pot 大小 p（从 max f 到 |G| − 1），枚举颜色取自 {1..p} 且并集恰为 {1..p} 的
f-分配，每个颜色置换轨道恰取一个代表：颜色按“在已分配列表中的出现模式”分类
（每类是一段连续编号），下一个列表只决定每类取几个颜色，并总是取该类编号最小的那些。

可选的第二层对称性：孪生顶点（真孪生/假孪生，且 f 相同）放在连续位置组成块，
块结束时要求当前前缀不大于任意相邻对换后的典范形式。轨道中字典序最小的代表
总能通过检查，所以判定结果不变。

f(v) > d(v) 的顶点总能最后着色，枚举前迭代剥离；f(v) ≤ 0 直接判为不可选。
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from .budget import Budget
from .errors import BudgetExhausted, PreconditionError
from .graph import Graph, Relabeled, bits_of, induced_subgraph, iter_bits
from .invariants import twin_classes
from .list_coloring import (
    ChoosabilityVerdict,
    ListAssignment,
    Outcome,
    SearchStats,
    canonical_masks,
    color_from_lists,
    d_r_sizes,
    solve_masks,
)
from .logger import logger

# 前缀划分的目标任务数（与并行度无关，保证节点计数确定）
_TARGET_TASKS = 32


@dataclass(frozen=True)
class _Plan:
    """一个 pot 层级的静态搜索数据，可跨进程传递"""

    adjacency: tuple[int, ...]
    order: tuple[int, ...]
    sizes: tuple[int, ...]
    blocks: tuple[tuple[int, int], ...]
    pot_size: int

    @property
    def pot_mask(self) -> int:
        return ((1 << self.pot_size) - 1) << 1

    def to_vertex_order(self, masks: Sequence[int]) -> list[int]:
        result = [0] * len(self.order)
        for pos, v in enumerate(self.order):
            result[v] = masks[pos]
        return result


def _set_less(a: int, b: int) -> bool:
    """等大小颜色集按升序元组比较"""
    diff = a ^ b
    return bool(diff and a & (diff & -diff))


def _seq_less(x: Sequence[int], y: Sequence[int]) -> bool:
    for a, b in zip(x, y):
        if a != b:
            return _set_less(a, b)
    return False


def _choices(classes: list[tuple[int, int]], need: int) -> Iterator[tuple[int, list[tuple[int, int]]]]:
    """在各颜色类（区间）中分配取色个数；按生成列表的字典序递增产出"""
    m = len(classes)
    capacity = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        capacity[j] = capacity[j + 1] + classes[j][1]

    def rec(j: int, need: int, mask: int, parts: list[tuple[int, int]]):
        if j == m:
            if need == 0:
                yield mask, parts
            return
        start, length = classes[j]
        hi = min(length, need)
        lo = max(0, need - capacity[j + 1])
        for k in range(hi, lo - 1, -1):
            split = parts[:]
            if k:
                split.append((start, k))
            if k < length:
                split.append((start + k, length - k))
            yield from rec(j + 1, need - k, mask | (((1 << k) - 1) << start), split)

    yield from rec(0, need, 0, [])


class _Walker:
    """按典范顺序遍历一个 pot 层级的分配树"""

    def __init__(self, plan: _Plan, budget: Budget):
        self.plan = plan
        self.budget = budget
        self.prunes = 0
        n = len(plan.sizes)
        self.suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.suffix[i] = self.suffix[i + 1] + plan.sizes[i]
        self.block_end = {end: start for start, end in plan.blocks}

    def _state_after(self, prefix: Sequence[int]) -> tuple[list[tuple[int, int]], int]:
        p = self.plan.pot_size
        classes = [(1, p)]
        unused = p
        for mask in prefix:
            new_classes = []
            for start, length in classes:
                k = (mask & (((1 << length) - 1) << start)).bit_count()
                if k:
                    new_classes.append((start, k))
                if k < length:
                    new_classes.append((start + k, length - k))
            unused -= (mask & self._top(unused)).bit_count()
            classes = new_classes
        return classes, unused

    def _top(self, unused: int) -> int:
        p = self.plan.pot_size
        return ((1 << unused) - 1) << (p - unused + 1)

    def _block_minimal(self, assigned: list[int], start: int) -> bool:
        pot_mask = self.plan.pot_mask
        for a in range(start, len(assigned) - 1):
            if assigned[a] == assigned[a + 1]:
                continue
            swapped = assigned[:]
            swapped[a], swapped[a + 1] = swapped[a + 1], swapped[a]
            if _seq_less(canonical_masks(swapped, pot_mask), assigned):
                return False
        return True

    def walk(self, prefix: Sequence[int] = (), stop_at: int | None = None) -> Iterator[tuple[int, ...]]:
        """产出完整分配（位置顺序）；给定 stop_at 时产出该深度的前缀"""
        n = len(self.plan.sizes)
        stop = n if stop_at is None else stop_at
        classes, unused = self._state_after(prefix)
        yield from self._walk(len(prefix), list(prefix), classes, unused, stop)

    def _walk(self, i: int, assigned: list[int], classes, unused: int, stop: int):
        if i == stop:
            if stop < len(self.plan.sizes) or unused == 0:
                yield tuple(assigned)
            return
        self.budget.tick()
        top = self._top(unused)
        for mask, new_classes in _choices(classes, self.plan.sizes[i]):
            left = unused - (mask & top).bit_count()
            if left > self.suffix[i + 1]:
                self.prunes += 1
                continue
            assigned.append(mask)
            if i in self.block_end and not self._block_minimal(assigned, self.block_end[i]):
                self.prunes += 1
                assigned.pop()
                continue
            yield from self._walk(i + 1, assigned, new_classes, left, stop)
            assigned.pop()


def _run_prefix(plan: _Plan, prefix: tuple[int, ...], first_only: bool, budget: Budget) -> dict[str, Any]:
    """在一个前缀子树内找坏分配；first_only 时返回第一个，否则返回字典序最小者"""
    walker = _Walker(plan, budget)
    assignments = 0
    best: list[int] | None = None
    best_key = None
    exhausted = False
    try:
        for masks in walker.walk(prefix):
            assignments += 1
            vertex_masks = plan.to_vertex_order(masks)
            if solve_masks(plan.adjacency, vertex_masks, budget) is not None:
                continue
            if first_only:
                best = vertex_masks
                break
            key = _witness_key(vertex_masks)
            if best_key is None or key < best_key:
                best, best_key = vertex_masks, key
    except BudgetExhausted:
        exhausted = True
    return {
        "bad": best,
        "nodes": budget.nodes,
        "assignments": assignments,
        "prunes": walker.prunes,
        "exhausted": exhausted,
    }


def _run_task(args: tuple[_Plan, tuple[int, ...], bool, int, float]) -> dict[str, Any]:
    plan, prefix, first_only, max_nodes, max_seconds = args
    return _run_prefix(plan, prefix, first_only, Budget(max_nodes=max_nodes, max_seconds=max_seconds).start())


def _witness_key(masks: Sequence[int]) -> tuple[int, ...]:
    """颜色置换典范化之后展平的列表序列"""
    pot = 0
    for mask in masks:
        pot |= mask
    return tuple(c for mask in canonical_masks(masks, pot) for c in bits_of(mask))


def _prefixes(plan: _Plan, budget: Budget, stats: SearchStats) -> list[tuple[int, ...]]:
    n = len(plan.sizes)
    for depth in range(1, n + 1):
        walker = _Walker(plan, budget)
        prefixes = list(walker.walk(stop_at=depth))
        if len(prefixes) >= _TARGET_TASKS or depth == n:
            stats.prunes += walker.prunes
            return prefixes
    return [()]


def _search_level(plan: _Plan, budget: Budget, stats: SearchStats, *, first_only: bool, workers: int) -> list[int] | None:
    """搜索一个 pot 层级；节点预算按任务下标顺序累加，与并行度无关"""
    prefixes = _prefixes(plan, budget, stats) if plan.sizes else [()]
    best: list[int] | None = None
    best_key = None

    def absorb(result: dict[str, Any]) -> bool:
        nonlocal best, best_key
        stats.merge(result)
        budget.tick(result["nodes"])
        budget.check_clock()
        if result["exhausted"]:
            raise BudgetExhausted(stats=budget.snapshot())
        if result["bad"] is None:
            return False
        if first_only:
            best = result["bad"]
            return True
        key = _witness_key(result["bad"])
        if best_key is None or key < best_key:
            best, best_key = result["bad"], key
        return False

    if workers <= 1 or len(prefixes) <= 1:
        for prefix in prefixes:
            task_budget = Budget(max_nodes=budget.remaining_nodes, max_seconds=budget.remaining_seconds).start()
            if absorb(_run_prefix(plan, prefix, first_only, task_budget)):
                break
        return best

    tasks = [(plan, prefix, first_only, budget.remaining_nodes, budget.remaining_seconds) for prefix in prefixes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_task, task) for task in tasks]
        try:
            for future in futures:
                if absorb(future.result()):
                    break
        finally:
            for future in futures:
                future.cancel()
    return best


# ---------------- 预处理 ----------------

def _peel(g: Graph, f: Sequence[int]) -> tuple[Relabeled | None, list[int]]:
    """迭代删除 f(v) > d(v) 的顶点，返回剩余核心与被删顶点（删除顺序）"""
    alive = g.full_mask
    peeled: list[int] = []
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if f[v] > (g.adjacency[v] & alive).bit_count():
                alive &= ~(1 << v)
                peeled.append(v)
                changed = True
    if not alive:
        return None, peeled
    return induced_subgraph(g, bits_of(alive)), peeled


def _search_order(g: Graph, f: Sequence[int], symmetry: bool) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    if not symmetry:
        return tuple(range(g.order)), ()
    groups: list[tuple[int, ...]] = []
    for cls in twin_classes(g):
        by_size: dict[int, list[int]] = {}
        for v in cls:
            by_size.setdefault(f[v], []).append(v)
        groups += [tuple(members) for members in by_size.values() if len(members) > 1]
    groups.sort(key=lambda members: (-len(members), members[0]))
    order: list[int] = []
    blocks = []
    for members in groups:
        blocks.append((len(order), len(order) + len(members) - 1))
        order += members
    placed = set(order)
    order += [v for v in range(g.order) if v not in placed]
    return tuple(order), tuple(blocks)


def _make_plan(g: Graph, f: Sequence[int], pot_size: int, symmetry: bool) -> _Plan:
    order, blocks = _search_order(g, f, symmetry)
    return _Plan(g.adjacency, order, tuple(f[v] for v in order), blocks, pot_size)


def _check_sizes(g: Graph, f: Sequence[int]) -> tuple[int, ...]:
    sizes = tuple(int(x) for x in f)
    if len(sizes) != g.order:
        raise PreconditionError(f"列表大小函数长度 {len(sizes)} 与顶点数 {g.order} 不符")
    return sizes


def _trivial_witness(f: Sequence[int]) -> ListAssignment:
    return ListAssignment(tuple(((1 << x) - 1) << 1 if x > 0 else 0 for x in f))


def _lift(g: Graph, f: Sequence[int], core: Relabeled, core_masks: Sequence[int], peeled: Sequence[int]) -> ListAssignment:
    """把核心上的坏分配扩展到整个图：被剥离的顶点取编号最小的 f(v) 个颜色"""
    masks = [0] * g.order
    for old, new in core.index_map.items():
        masks[old] = core_masks[new]
    for v in peeled:
        masks[v] = ((1 << f[v]) - 1) << 1
    return ListAssignment(tuple(masks))


def _verify_bad(g: Graph, witness: ListAssignment) -> None:
    if color_from_lists(g, witness) is not None:
        raise RuntimeError("内部错误：返回的坏分配可以着色")


# ---------------- 对外接口 ----------------

def is_f_choosable(
    g: Graph,
    f: Sequence[int],
    budget: Budget | None = None,
    *,
    symmetry: bool = False,
    workers: int = 1,
    pot_limit: int | None = None,
) -> ChoosabilityVerdict:
    """
    判定 G 是否 f-可选

    CHOOSABLE：所有 pot 层级的代表分配都可着色；NOT_CHOOSABLE：返回按枚举顺序
    第一个坏分配（位于最小 pot 层级，已用求解器复核）；预算耗尽返回 INDETERMINATE。
    pot_limit 可把最大 pot 提高到 |G| − 1 以上，仅用于验证 pot 上界。
    """
    f = _check_sizes(g, f)
    budget = (budget or Budget()).start()
    stats = SearchStats()
    started = time.monotonic()

    def finish(outcome: Outcome, witness: ListAssignment | None = None, reason: str = "") -> ChoosabilityVerdict:
        stats.nodes = budget.nodes
        stats.elapsed = time.monotonic() - started
        verdict = ChoosabilityVerdict(outcome, witness, stats, reason)
        logger.info(
            f"[Enumerator] n={g.order} 结果={outcome.value} 分配数={stats.assignments} "
            f"节点={stats.nodes} 耗时={stats.elapsed:.2f}s"
        )
        return verdict

    if any(x <= 0 for x in f):
        witness = _trivial_witness(f)
        _verify_bad(g, witness)
        return finish(Outcome.NOT_CHOOSABLE, witness, "存在 f(v) ≤ 0 的顶点")

    core, peeled = _peel(g, f)
    stats.peeled = len(peeled)
    if core is None:
        return finish(Outcome.CHOOSABLE, reason="所有顶点均满足 f(v) > d(v)")
    core_f = [f[old] for old in core.origin]
    n = core.graph.order
    hi = n - 1
    if pot_limit is not None:
        if pot_limit < n - 1:
            raise PreconditionError(f"pot_limit={pot_limit} 小于 |G| − 1 = {n - 1}")
        hi = pot_limit

    try:
        for p in range(max(core_f), hi + 1):
            stats.pot_sizes.append(p)
            logger.debug(f"[Enumerator] 搜索 pot={p} (核心 {n} 个顶点, 剥离 {len(peeled)} 个)")
            plan = _make_plan(core.graph, core_f, p, symmetry)
            bad = _search_level(plan, budget, stats, first_only=True, workers=workers)
            if bad is not None:
                witness = _lift(g, f, core, bad, peeled)
                _verify_bad(g, witness)
                return finish(Outcome.NOT_CHOOSABLE, witness)
    except BudgetExhausted as e:
        logger.warning(f"[Enumerator] 预算耗尽: {e}")
        return finish(Outcome.INDETERMINATE, reason=str(e))
    return finish(Outcome.CHOOSABLE)


def is_d_r_choosable(g: Graph, r: int, budget: Budget | None = None, **options: Any) -> ChoosabilityVerdict:
    """f(v) = d(v) − r；r 可以为负"""
    return is_f_choosable(g, d_r_sizes(g, r), budget, **options)


def minimal_pot_bad_assignment(
    g: Graph,
    f: Sequence[int],
    budget: Budget | None = None,
    *,
    symmetry: bool = False,
    workers: int = 1,
) -> ListAssignment | None:
    """
    pot 最小的坏分配，同等 pot 下取典范化后展平字典序最小者；G 是 f-可选时返回 None

    预算耗尽抛出 BudgetExhausted。
    """
    f = _check_sizes(g, f)
    budget = (budget or Budget()).start()
    stats = SearchStats()
    if any(x <= 0 for x in f):
        return _trivial_witness(f).canonical()
    core, peeled = _peel(g, f)
    if core is None:
        return None
    core_f = [f[old] for old in core.origin]
    for p in range(max(core_f), core.graph.order):
        plan = _make_plan(core.graph, core_f, p, symmetry)
        if _search_level(plan, budget, stats, first_only=True, workers=workers) is None:
            continue
        best = _search_level(plan, budget, stats, first_only=False, workers=workers)
        witness = _lift(g, f, core, best, peeled).canonical()
        _verify_bad(g, witness)
        logger.debug(f"[Enumerator] 最小 pot={witness.pot_size}, 节点={budget.nodes}")
        return witness
    return None


def iter_bad_assignments(
    g: Graph,
    f: Sequence[int],
    pot_size: int,
    budget: Budget | None = None,
    *,
    symmetry: bool = False,
) -> Iterator[ListAssignment]:
    """
    枚举并集恰为 {1..pot_size} 的全部坏 f-分配（每个颜色置换轨道一个代表）

    不做剥离；symmetry=True 时只保证每个“颜色置换 × 孪生置换”轨道至少出现一次。
    """
    f = _check_sizes(g, f)
    if any(x <= 0 for x in f) or pot_size < max(f, default=0):
        raise PreconditionError(f"需要 f ≥ 1 且 pot_size ≥ max f，收到 pot_size={pot_size}")
    budget = (budget or Budget()).start()
    plan = _make_plan(g, f, pot_size, symmetry)
    walker = _Walker(plan, budget)
    for masks in walker.walk():
        vertex_masks = plan.to_vertex_order(masks)
        if solve_masks(plan.adjacency, vertex_masks, budget) is None:
            yield ListAssignment(tuple(vertex_masks))
