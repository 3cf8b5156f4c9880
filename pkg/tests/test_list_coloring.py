from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from core.errors import GraphError
from core.graph import bits_of, complete, complete_bipartite, cycle, from_networkx, named, path
from core.invariants import maximal_independent_sets
from core.list_coloring import (
    ChoosabilityVerdict,
    ListAssignment,
    Outcome,
    SearchStats,
    clique_list_colorable,
    color_from_lists,
    color_with_repeated_color,
    d_r_sizes,
    is_proper_list_coloring,
    max_independent_condition,
    random_assignment,
    residual_lists,
)


def test_list_assignment_basics() -> None:
    lists = ListAssignment.from_lists([[1, 2], [2, 3], [5]])
    assert lists.lists == ((1, 2), (2, 3), (5,))
    assert lists.pot == (1, 2, 3, 5)
    assert lists.pot_size == 4
    assert lists.sizes == (2, 2, 1)
    assert lists.flattened() == (1, 2, 2, 3, 5)
    assert len(lists) == 3


def test_list_assignment_rejects_non_positive_colors() -> None:
    with pytest.raises(ValueError):
        ListAssignment.from_lists([[0, 1]])
    with pytest.raises(ValueError):
        ListAssignment((0b1,))


def test_canonical_form() -> None:
    lists = ListAssignment.from_lists([[3, 5], [5, 7]])
    assert lists.canonical().lists == ((1, 2), (1, 3))
    swapped = ListAssignment.from_lists([[7, 9], [4, 9]])
    assert swapped.canonical() == lists.canonical()


def test_is_subset_and_restricted() -> None:
    lists = ListAssignment.from_lists([[1], [1, 2], [3]])
    assert lists.is_subset(0, 1)
    assert not lists.is_subset(1, 0)
    assert lists.restricted([2, 0]).lists == ((3,), (1,))


def test_json_roundtrip_and_pot_check() -> None:
    lists = ListAssignment.from_lists([[1, 2], [2, 3]])
    data = lists.to_json()
    assert data == {"pot_size": 3, "lists": [[1, 2], [2, 3]]}
    assert ListAssignment.from_json(data) == lists
    with pytest.raises(ValueError):
        ListAssignment.from_json({"pot_size": 4, "lists": [[1, 2], [2, 3]]})
    with pytest.raises(ValueError):
        ListAssignment.from_json({"pot_size": 1})


def test_color_from_lists_examples() -> None:
    k3 = complete(3)
    assert color_from_lists(k3, ListAssignment.from_lists([[1, 2], [1, 2], [1, 2]])) is None
    lists = ListAssignment.from_lists([[1, 2], [1, 2], [1, 3]])
    coloring = color_from_lists(k3, lists)
    assert coloring is not None
    assert is_proper_list_coloring(k3, lists, coloring)
    c4 = cycle(4)
    lists = ListAssignment.from_lists([[1, 2]] * 4)
    coloring = color_from_lists(c4, lists)
    assert coloring is not None
    assert coloring[0] == coloring[2] != coloring[1] == coloring[3]


def test_color_from_lists_empty_list() -> None:
    assert color_from_lists(path(2), ListAssignment.from_lists([[1], []])) is None


def test_color_from_lists_length_mismatch() -> None:
    with pytest.raises(GraphError):
        color_from_lists(path(3), ListAssignment.from_lists([[1], [2]]))


def test_k33_is_not_two_choosable() -> None:
    lists = ListAssignment.from_lists([[1, 2], [1, 3], [2, 3]] * 2)
    assert color_from_lists(complete_bipartite(3, 3), lists) is None


def test_color_from_lists_agrees_with_brute_force() -> None:
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(2, 6)
        g = from_networkx(nx.gnp_random_graph(n, 0.6, seed=rng.randint(0, 10**6)))
        lists = random_assignment([rng.randint(1, 3) for _ in range(n)], 4, rng)
        found = color_from_lists(g, lists)
        exists = any(
            is_proper_list_coloring(g, lists, candidate)
            for candidate in _all_colorings(lists)
        )
        assert (found is not None) == exists
        if found is not None:
            assert is_proper_list_coloring(g, lists, found)


def _all_colorings(lists: ListAssignment):
    return itertools.product(*lists.lists)


def test_clique_list_colorable() -> None:
    assert clique_list_colorable([[1], [1], [2]]) is None
    assert clique_list_colorable([[1, 2, 3]] * 3) is not None
    sdr = clique_list_colorable([[1, 2], [2, 3], [3, 1]])
    assert sdr is not None and len(set(sdr)) == 3


def test_clique_list_colorable_agrees_with_solver() -> None:
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        lists = random_assignment([rng.randint(1, 3) for _ in range(n)], 5, rng)
        assert (clique_list_colorable(lists.lists) is None) == (color_from_lists(complete(n), lists) is None)


def test_color_with_repeated_color() -> None:
    assert color_with_repeated_color(complete(3), ListAssignment.from_lists([[1, 2, 3]] * 3)) is None
    coloring = color_with_repeated_color(path(3), ListAssignment.from_lists([[1], [2], [1]]))
    assert coloring == (1, 2, 1)


def test_residual_lists() -> None:
    rest, lists = residual_lists(path(3), {0: 1}, 2)
    assert rest.origin == (1, 2)
    assert lists.lists == ((2,), (1, 2))
    with pytest.raises(ValueError):
        residual_lists(path(3), {0: 3}, 2)


def test_max_independent_condition() -> None:
    claw = named("claw")
    lists = ListAssignment.from_lists([[1, 2, 3], [1, 4], [2, 5], [3, 4]])
    assert max_independent_condition(2, claw, lists, [1, 2, 3])
    assert not max_independent_condition(1, claw, lists, [1, 2, 3])
    with pytest.raises(GraphError):
        max_independent_condition(2, claw, lists, [0, 1])


def test_max_independent_condition_implies_repeated_color() -> None:
    rng = random.Random(5)
    hits = 0
    for _ in range(300):
        n = rng.randint(2, 6)
        b = from_networkx(nx.gnp_random_graph(n, 0.4, seed=rng.randint(0, 10**6)))
        a_order = rng.randint(2, 3)
        sizes = [a_order + d - 1 for d in b.degrees]
        lists = random_assignment(sizes, max(sizes) + rng.randint(0, 3), rng)
        for members in maximal_independent_sets(b):
            if max_independent_condition(a_order, b, lists, bits_of(members)):
                hits += 1
                assert color_with_repeated_color(b, lists) is not None
    assert hits > 0


def test_d_r_sizes() -> None:
    assert d_r_sizes(named("claw"), 1) == (2, 0, 0, 0)
    assert d_r_sizes(cycle(4), -1) == (3, 3, 3, 3)


def test_random_assignment() -> None:
    rng = random.Random(1)
    lists = random_assignment([2, 3, 1], 4, rng)
    assert lists.sizes == (2, 3, 1)
    assert set(lists.pot) <= {1, 2, 3, 4}


def test_verdict_json() -> None:
    witness = ListAssignment.from_lists([[1], [1]])
    verdict = ChoosabilityVerdict(Outcome.NOT_CHOOSABLE, witness, SearchStats(assignments=1), "")
    data = verdict.to_json()
    assert data["outcome"] == "NOT-CHOOSABLE"
    assert data["witness"] == {"pot_size": 1, "lists": [[1], [1]]}
    assert verdict.choosable is False
    assert ChoosabilityVerdict(Outcome.INDETERMINATE).choosable is None
    assert ChoosabilityVerdict(Outcome.CHOOSABLE).choosable is True
