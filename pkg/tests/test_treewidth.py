import pytest

from elemconn.generators import random_graph, random_tw, tw_chain
from elemconn.graph import subdivide_terminal_edges
from elemconn.oracle import validate_packing
from elemconn.reduction import reduce_to_bipartite
from elemconn.treewidth import (TreeDecomposition, map_through_trace, min_degree_decomposition,
                                pack_treewidth_trees, treewidth_count_floor)

from helpers import graph_from, with_terminal_edges


def test_count_floor():
    assert treewidth_count_floor(8, 3) == 1
    assert treewidth_count_floor(10_000, 2) == 80
    assert treewidth_count_floor(1000, 1) == 52


def test_validation_catches_each_failure():
    g = graph_from([0, 1], [2], [(0, 2), (2, 1)])
    good = TreeDecomposition({0: frozenset({0, 2}), 1: frozenset({1, 2})}, [(0, 1)])
    assert good.problems(g) == [] and good.width == 1
    missing_edge = TreeDecomposition({0: frozenset({0, 2}), 1: frozenset({1})}, [(0, 1)])
    assert missing_edge.problems(g)
    not_tree = TreeDecomposition({0: frozenset({0, 2}), 1: frozenset({1, 2})}, [])
    assert not_tree.problems(g)
    split = TreeDecomposition({0: frozenset({0, 2}), 1: frozenset({0, 1}), 2: frozenset({1, 2})},
                              [(0, 1), (1, 2)])
    assert split.problems(g)
    with pytest.raises(ValueError):
        split.validate(g)


def test_tw_chain_decomposition():
    inst = tw_chain(5, 6)
    assert len(inst.terminals) == 10
    assert inst.td.width == 4
    assert inst.td.problems(inst.graph) == []


@pytest.mark.parametrize("seed", range(10))
def test_min_degree_is_valid(seed):
    g = random_graph(12, 0.35, 3, seed=seed).graph
    assert min_degree_decomposition(g).problems(g) == []


@pytest.mark.parametrize("seed", range(10))
def test_mapping_follows_reduction(seed):
    g = with_terminal_edges(random_graph(11, 0.4, 4, seed=seed).graph, seed)
    td = min_degree_decomposition(g)
    sub, strace = subdivide_terminal_edges(g)
    td_sub = map_through_trace(td, strace, g)
    assert td_sub.problems(sub) == []
    assert td_sub.width <= max(td.width, 2)
    red = reduce_to_bipartite(sub)
    td_red = map_through_trace(td_sub, red.trace, sub)
    assert td_red.problems(red.reduced) == []
    assert td_red.width <= td_sub.width


def test_pack_chain_meets_floor():
    inst = tw_chain(5, 8)
    p = pack_treewidth_trees(inst.graph, inst.terminals, 8, inst.td)
    assert len(p) >= treewidth_count_floor(8, 4)
    assert validate_packing(inst.graph, [tuple(inst.terminals)], p).passed


def test_pack_random_tw():
    inst = random_tw(14, 2, 10, seed=0, thickness=6)
    p = pack_treewidth_trees(inst.graph, inst.terminals, inst.k, inst.td)
    assert len(p) >= 1
    assert validate_packing(inst.graph, [tuple(inst.terminals)], p).passed


def test_pack_rejects_bad_decomposition():
    inst = tw_chain(3, 2)
    bad = TreeDecomposition({0: frozenset(inst.terminals)}, [])
    with pytest.raises(ValueError):
        pack_treewidth_trees(inst.graph, inst.terminals, 2, bad)
