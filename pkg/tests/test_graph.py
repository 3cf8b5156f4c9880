from __future__ import annotations

import random

import networkx as nx
import pytest

from core.errors import GraphError
from core.graph import (
    Graph,
    add_edge,
    blown_cycle,
    collapse_independent_set,
    complement,
    complete,
    components,
    cycle,
    delete_vertex,
    disjoint_union,
    empty,
    from_edge_list,
    from_networkx,
    graph_inventory,
    induced_subgraph,
    is_connected,
    join,
    named,
    path,
    to_networkx,
)
from core.invariants import chromatic_number


def test_from_edge_list_merges_duplicates() -> None:
    g = from_edge_list(3, [(0, 1), (1, 0), (1, 2)])
    assert g.size == 2
    assert g.edges() == [(0, 1), (1, 2)]


def test_from_edge_list_rejects_self_loop_with_pair() -> None:
    with pytest.raises(GraphError) as info:
        from_edge_list(3, [(0, 1), (2, 2)])
    assert info.value.pair == (2, 2)


def test_from_edge_list_rejects_out_of_range() -> None:
    with pytest.raises(GraphError) as info:
        from_edge_list(3, [(0, 3)])
    assert info.value.pair == (0, 3)


def test_graph_rejects_asymmetric_rows() -> None:
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))


def test_order_limit() -> None:
    with pytest.raises(GraphError):
        empty(31)


def test_degrees() -> None:
    g = named("claw")
    assert g.degrees == (3, 1, 1, 1)
    assert g.max_degree == 3
    assert g.min_degree == 1


@pytest.mark.parametrize(
    "name, order, size",
    [
        ("K5", 5, 10),
        ("K_5", 5, 10),
        ("K_{5}", 5, 10),
        ("E3", 3, 0),
        ("P_4", 4, 3),
        ("C6", 6, 6),
        ("K1,3", 4, 3),
        ("K_{2,3}", 5, 6),
        ("claw", 4, 3),
        ("paw", 4, 4),
        ("antipaw", 4, 2),
        ("chair", 5, 4),
        ("antichair", 5, 6),
        ("2P3", 6, 4),
        ("K3+P3", 6, 5),
        ("petersen", 10, 15),
    ],
)
def test_named(name: str, order: int, size: int) -> None:
    g = named(name)
    assert (g.order, g.size) == (order, size)


def test_named_antichair_is_complement_of_chair() -> None:
    assert nx.is_isomorphic(to_networkx(named("antichair")), nx.complement(to_networkx(named("chair"))))


def test_named_antipaw_is_complement_of_paw() -> None:
    assert nx.is_isomorphic(to_networkx(named("antipaw")), nx.complement(to_networkx(named("paw"))))


def test_named_unknown() -> None:
    with pytest.raises(GraphError):
        named("bogus")


def test_blown_cycle_sizes() -> None:
    g = blown_cycle([3, 3, 3, 3, 3])
    assert g.order == 15
    assert g.size == 60
    assert set(g.degrees) == {8}


def test_blown_cycle_rejects_bad_input() -> None:
    with pytest.raises(GraphError):
        blown_cycle([1, 2, 3])
    with pytest.raises(GraphError):
        blown_cycle([1, 1, 0, 1, 1])


def test_join_adds_all_cross_edges() -> None:
    g = join(complete(3), path(4))
    assert g.order == 7
    assert g.size == 3 + 3 + 12
    assert all(g.has_edge(a, b) for a in range(3) for b in range(3, 7))


def test_join_size_and_chromatic_number_are_additive(small_graphs) -> None:
    rng = random.Random(17)
    for _ in range(100):
        a, b = rng.choice(small_graphs), rng.choice(small_graphs)
        g = join(a, b)
        assert g.order == a.order + b.order
        assert g.size == a.size + b.size + a.order * b.order, (a, b)
        assert chromatic_number(g) == chromatic_number(a) + chromatic_number(b), (a, b)


def test_disjoint_union_and_components() -> None:
    g = disjoint_union(complete(3), cycle(4))
    assert components(g) == [0b111, 0b1111000]
    assert not is_connected(g)
    assert is_connected(complete(3))
    assert not is_connected(empty(0))


def test_complement() -> None:
    assert complement(complete(4)) == empty(4)
    assert complement(cycle(5)).size == 5


def test_induced_subgraph_relabels() -> None:
    g = cycle(5)
    sub = induced_subgraph(g, [4, 0, 1])
    assert sub.index_map == {0: 0, 1: 1, 4: 2}
    assert sub.origin == (0, 1, 4)
    assert sub.graph.edges() == [(0, 1), (0, 2)]


def test_induced_subgraph_rejects_empty() -> None:
    with pytest.raises(GraphError):
        induced_subgraph(complete(3), [])


def test_delete_vertex() -> None:
    rest = delete_vertex(path(3), 1)
    assert rest.graph == empty(2)
    assert rest.origin == (0, 2)


def test_collapse_independent_set_canonical_map() -> None:
    g = cycle(4)
    collapsed = collapse_independent_set(g, [0, 2])
    h = collapsed.graph
    assert h.order == 3
    assert h.edges() == [(0, 2), (1, 2)]
    assert collapsed.index_map == {1: 0, 3: 1, 0: 2, 2: 2}
    for u, v in g.edges():
        assert h.has_edge(collapsed.index_map[u], collapsed.index_map[v])


def test_collapse_rejects_non_independent() -> None:
    with pytest.raises(GraphError) as info:
        collapse_independent_set(cycle(4), [0, 1])
    assert info.value.pair == (0, 1)


def test_add_edge() -> None:
    g = add_edge(empty(3), 0, 2)
    assert g.edges() == [(0, 2)]
    with pytest.raises(GraphError):
        add_edge(g, 1, 1)


def test_networkx_roundtrip_preserves_structure() -> None:
    g = named("petersen")
    back = from_networkx(to_networkx(g))
    assert back == g
    assert nx.is_isomorphic(to_networkx(g), nx.petersen_graph())


def test_inventory_counts() -> None:
    assert len(graph_inventory(5)) == 52
    connected = graph_inventory(6, connected_only=True)
    assert len(connected) == 143
    assert sum(1 for g in connected if g.order == 6) == 112


def test_inventory_limit() -> None:
    with pytest.raises(GraphError):
        graph_inventory(8)
