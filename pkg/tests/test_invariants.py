from __future__ import annotations

import random

import networkx as nx
import pytest

from core.budget import Budget
from core.classification import is_disjoint_union_of_cliques
from core.errors import BudgetExhausted, PreconditionError
from core.graph import (
    bits_of,
    blown_cycle,
    complete,
    components,
    cycle,
    empty,
    from_networkx,
    graph_inventory,
    join,
    named,
    path,
    to_networkx,
)
from core.invariants import (
    borodin_kostochka_bound,
    brooks_bound,
    chromatic_number,
    clique_number,
    contains_clique_join,
    greedy_coloring,
    independence_number,
    invariants,
    is_k_colorable,
    is_vertex_critical,
    iter_cliques_of_size,
    maximal_cliques,
    maximal_independent_sets,
    maximum_cliques,
    twin_classes,
)
from core.isomorphism import find_isomorphism, is_isomorphic


def test_maximal_cliques_match_networkx(small_graphs) -> None:
    for g in small_graphs:
        ours = sorted(bits_of(c) for c in maximal_cliques(g))
        theirs = sorted(tuple(sorted(c)) for c in nx.find_cliques(to_networkx(g)))
        assert ours == theirs


def test_maximum_cliques() -> None:
    g = named("K3+K3+P3")
    assert [bits_of(c) for c in maximum_cliques(g)] == [(0, 1, 2), (3, 4, 5)]


def test_clique_and_independence_numbers() -> None:
    assert clique_number(named("petersen")) == 2
    assert independence_number(named("petersen")) == 4
    assert clique_number(empty(0)) == 0
    assert independence_number(cycle(7)) == 3


def test_iter_cliques_of_size_lex_order() -> None:
    assert [bits_of(c) for c in iter_cliques_of_size(complete(4), 3)] == [
        (0, 1, 2),
        (0, 1, 3),
        (0, 2, 3),
        (1, 2, 3),
    ]


def test_contains_clique_join() -> None:
    g = join(complete(3), empty(4))
    witness = contains_clique_join(g, 3, 4)
    assert witness is not None
    assert witness.clique == (0, 1, 2)
    assert witness.common == (3, 4, 5, 6)
    assert contains_clique_join(g, 3, 5) is None
    assert contains_clique_join(cycle(5), 3, 0) is None


def test_contains_clique_join_rejects_bad_parameters() -> None:
    with pytest.raises(PreconditionError):
        contains_clique_join(complete(3), 0, 1)


def test_greedy_coloring_is_proper(small_graphs) -> None:
    for g in small_graphs:
        colors = greedy_coloring(g)
        assert all(colors[u] != colors[v] for u, v in g.edges())


@pytest.mark.parametrize(
    "name, chi",
    [("K5", 5), ("C5", 3), ("C6", 2), ("petersen", 3), ("E4", 1), ("P4", 2)],
)
def test_chromatic_number(name: str, chi: int) -> None:
    assert chromatic_number(named(name)) == chi


def test_chromatic_number_matches_brute_force(small_graphs) -> None:
    for g in small_graphs:
        chi = chromatic_number(g)
        assert is_k_colorable(g, chi) is not None
        assert chi == 0 or is_k_colorable(g, chi - 1) is None


def test_is_k_colorable_returns_proper_coloring() -> None:
    g = blown_cycle([2, 2, 2, 2, 2])
    coloring = is_k_colorable(g, 5)
    assert coloring is not None
    assert all(coloring[u] != coloring[v] for u, v in g.edges())
    assert is_k_colorable(g, 4) is None


def test_is_k_colorable_respects_budget() -> None:
    with pytest.raises(BudgetExhausted):
        is_k_colorable(blown_cycle([3, 3, 3, 3, 3]), 7, Budget(max_nodes=5, max_seconds=60))


def test_invariants_record() -> None:
    inv = invariants(join(cycle(5), complete(2)))
    assert inv.to_json() == {
        "order": 7,
        "size": 5 + 1 + 10,
        "max_degree": 6,
        "clique_number": 4,
        "chromatic_number": 5,
        "independence_number": 2,
    }


def test_vertex_critical() -> None:
    assert is_vertex_critical(cycle(5), 3)
    assert is_vertex_critical(complete(4), 4)
    assert not is_vertex_critical(cycle(6), 2)
    assert not is_vertex_critical(named("paw"), 3)
    assert not is_vertex_critical(cycle(5), 4)


def test_bounds() -> None:
    inv = invariants(blown_cycle([3, 3, 3, 3, 3]))
    assert (inv.chromatic_number, inv.clique_number, inv.max_degree) == (8, 6, 8)
    assert borodin_kostochka_bound(inv) == 7
    assert brooks_bound(inv) == 8


def test_brooks_on_random_graphs() -> None:
    rng = random.Random(20240611)
    checked = 0
    while checked < 1000:
        n = rng.randint(2, 10)
        g = from_networkx(nx.gnp_random_graph(n, rng.uniform(0.2, 0.8), seed=rng.randint(0, 10**6)))
        if g.max_degree > 8:
            continue
        inv = invariants(g)
        # 奇圈是 Brooks 定理唯一的例外
        assert inv.chromatic_number <= brooks_bound(inv) or (inv.max_degree == 2 and inv.chromatic_number == 3)
        checked += 1


def test_twin_classes() -> None:
    classes = twin_classes(join(complete(2), empty(3)))
    assert (0, 1) in classes
    assert (2, 3, 4) in classes
    assert twin_classes(path(4)) == [(0,), (1,), (2,), (3,)]


def test_isomorphism() -> None:
    a = named("antichair")
    b = from_networkx(nx.complement(to_networkx(named("chair"))))
    mapping = find_isomorphism(a, b)
    assert mapping is not None
    assert all(b.has_edge(mapping[u], mapping[v]) for u, v in a.edges())
    assert is_isomorphic(blown_cycle([2, 3, 2, 3, 3]), blown_cycle([3, 3, 2, 3, 2]))
    assert not is_isomorphic(cycle(6), named("K3+K3"))


def test_isomorphism_agrees_with_networkx(small_graphs) -> None:
    rng = random.Random(7)
    graphs = [g for g in small_graphs if g.order == 5]
    for _ in range(60):
        a, b = rng.choice(graphs), rng.choice(graphs)
        assert is_isomorphic(a, b) == nx.is_isomorphic(to_networkx(a), to_networkx(b))


@pytest.fixture(scope="module")
def graphs_up_to_seven() -> list:
    return graph_inventory(7)


def test_clique_chromatic_degree_sandwich(graphs_up_to_seven) -> None:
    for g in graphs_up_to_seven:
        assert clique_number(g) <= chromatic_number(g) <= g.max_degree + 1, g


def test_tight_maximum_independent_sets_force_clique_union(graphs_up_to_seven) -> None:
    """
    极大独立集 I 满足 Σ_{v∈I} d(v) ≥ |G| − |I|；

    每个最大独立集都取等号当且仅当 G 是 α(G) 个团的不交并。
    """
    for g in graphs_up_to_seven:
        alpha = independence_number(g)
        degrees = g.degrees
        tight = True
        for mask in maximal_independent_sets(g):
            size = mask.bit_count()
            total = sum(degrees[v] for v in bits_of(mask))
            assert total >= g.order - size, g
            if size == alpha and total != g.order - size:
                tight = False
        assert tight is is_disjoint_union_of_cliques(g), g
        if tight:
            assert len(components(g)) == alpha, g


def test_single_tight_maximum_independent_set_is_not_enough() -> None:
    g = path(4)
    assert independence_number(g) == 2
    assert sum(g.degrees[v] for v in (0, 3)) == g.order - 2
    assert sum(g.degrees[v] for v in (0, 2)) > g.order - 2
    assert not is_disjoint_union_of_cliques(g)
