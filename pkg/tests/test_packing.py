import random

import pytest

from elemconn.errors import InfeasibleError, NoPackingError
from elemconn.generators import gk, k3k, random_graph
from elemconn.graph import Color, ColoredMultigraph
from elemconn.oracle import validate_packing
from elemconn.packing import (Packing, find_good_separator, forest_count_floor, pack_forests,
                              pack_trees_random_coloring, prune_to_forest, separator_threshold,
                              tree_count_floor)
from elemconn.reduction import reduce_to_bipartite

from helpers import graph_from


def test_count_floors():
    assert tree_count_floor(32, 3) == 3
    assert tree_count_floor(4, 3) == 1
    assert forest_count_floor(100, 4, 4) == 2
    assert separator_threshold(4, 2) == 2


def test_two_terminals_gives_all_disjoint_paths():
    inst = gk(4)
    s, t = inst.groups[0]
    p = pack_trees_random_coloring(inst.graph, [s, t], 4)
    assert len(p) == 4
    assert validate_packing(inst.graph, [(s, t)], p).passed


def test_k3k_packing_is_valid_and_bounded():
    inst = k3k(6)
    p = pack_trees_random_coloring(inst.graph, inst.terminals, 6, seed=2)
    assert len(p) >= 1
    assert validate_packing(inst.graph, inst.groups, p).passed
    stars = Packing([frozenset(e for e in inst.graph.edges if w in inst.graph.edges[e].key)
                     for w in inst.graph.whites()], inst.groups, "trees")
    assert len(stars) == 6 and validate_packing(inst.graph, inst.groups, stars).passed


def test_seed_is_deterministic():
    inst = k3k(20)
    a = pack_trees_random_coloring(inst.graph, inst.terminals, 20, seed=7)
    b = pack_trees_random_coloring(inst.graph, inst.terminals, 20, seed=7)
    assert a.subgraphs == b.subgraphs


def test_disconnected_terminals_raise():
    g = graph_from([0, 1], [2], [(0, 2)])
    with pytest.raises(NoPackingError):
        pack_trees_random_coloring(g, [0, 1], 1)


def test_verify_rejects_overstated_k():
    with pytest.raises(InfeasibleError):
        pack_trees_random_coloring(k3k(3).graph, [0, 1, 2], 4, verify=True)


def test_prune_strips_steiner_leaves_and_cycles():
    g = graph_from([0, 1], [2, 3, 4], [(0, 2), (2, 1), (0, 3), (3, 1), (2, 4)])
    kept = prune_to_forest(g, g.edges, [0, 1])
    assert len(kept) == 2


def _two_hk_groups_through_w():
    g = ColoredMultigraph()
    groups = []
    for lab in range(2):
        a = g.add_vertex(Color.BLACK, lab)
        b = g.add_vertex(Color.BLACK, lab)
        for _ in range(4):
            w = g.add_vertex()
            g.add_edge(a, w)
            g.add_edge(w, b)
        groups.append((a, b))
    w = g.add_vertex()
    g.add_edge(groups[0][0], w)
    g.add_edge(w, groups[1][0])
    return g, groups, w


def test_good_separator_cuts_single_white():
    g, groups, w = _two_hk_groups_through_w()
    sep = find_good_separator(g, groups, 4)
    assert sep.cut == frozenset({w})
    inside = [t for t in groups if t[0] in sep.core]
    assert len(inside) == 1 and set(inside[0]) <= sep.core


def test_single_group_has_empty_cut():
    inst = k3k(4)
    assert find_good_separator(inst.graph, inst.groups, 4).cut == frozenset()


def test_forests_on_joined_groups():
    g, groups, _ = _two_hk_groups_through_w()
    p = pack_forests(g, groups, 4)
    assert len(p) >= forest_count_floor(4, 4, 2)
    assert validate_packing(g, groups, p).passed


def test_forests_on_disjoint_components():
    g = ColoredMultigraph()
    groups = []
    for _ in range(2):
        ts = [g.add_vertex(Color.BLACK) for _ in range(3)]
        for _ in range(12):
            w = g.add_vertex()
            for t in ts:
                g.add_edge(t, w)
        groups.append(tuple(ts))
    p = pack_forests(g, groups, 12)
    assert validate_packing(g, groups, p).passed and len(p) >= 1


def test_gk_forests_valid():
    inst = gk(3)
    p = pack_forests(inst.graph, inst.groups, 3)
    assert validate_packing(inst.graph, inst.groups, p).passed


@pytest.mark.parametrize("seed", range(8))
def test_random_trees_valid(seed):
    rng = random.Random(seed)
    inst = random_graph(rng.randint(8, 14), 0.5, rng.randint(3, 5), seed=seed)
    if inst.k < 1:
        pytest.skip("terminals not connected")
    p = pack_trees_random_coloring(inst.graph, inst.terminals, inst.k, seed=seed)
    assert validate_packing(inst.graph, inst.groups, p).passed


@pytest.mark.parametrize("k", [3, 4, 6])
def test_gk_core_terminals_meet_threshold(k):
    from elemconn.connectivity import set_element_connectivity
    inst = gk(k)
    b = reduce_to_bipartite(inst.graph).reduced
    sep = find_good_separator(b, inst.groups, k)
    core_terms = [x for x in inst.terminals if x in sep.core]
    # with m = 1 + k(k-1) groups the threshold is 1, so no cut is needed
    assert sep.connectivity_floor == 1 and sep.cut == frozenset()
    assert set_element_connectivity(b.recolored(core_terms), core_terms) >= sep.connectivity_floor
