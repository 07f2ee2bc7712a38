import random

import pytest

from elemconn.connectivity import all_pairs_element_connectivity
from elemconn.errors import InternalConsistencyError
from elemconn.generators import gk, random_graph
from elemconn.reduction import Decision, classify_edge, reduce_to_bipartite, star_pairs

from helpers import graph_from, with_terminal_edges


def test_classify_deletes_redundant_chord():
    g = graph_from([0, 1], [2, 3], [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    base = all_pairs_element_connectivity(g)
    assert classify_edge(g, 4, base) is Decision.DELETE


def test_classify_contracts_bridge():
    g = graph_from([0, 1], [2, 3], [(0, 2), (2, 3), (3, 1)])
    base = all_pairs_element_connectivity(g)
    assert classify_edge(g, 1, base) is Decision.CONTRACT


def test_classify_needs_white_white_edge():
    g = graph_from([0, 1], [2], [(0, 2), (2, 1)])
    with pytest.raises(ValueError):
        classify_edge(g, 0, all_pairs_element_connectivity(g))


def test_path_contracts_to_single_white():
    g = graph_from([0, 1], [2, 3], [(0, 2), (2, 3), (3, 1)])
    red = reduce_to_bipartite(g)
    assert red.decisions == [(1, Decision.CONTRACT)]
    assert sorted(red.reduced.vertices) == [0, 1, 2]
    assert all_pairs_element_connectivity(red.reduced) == {(0, 1): 1}


def test_gk_is_already_bipartite():
    red = reduce_to_bipartite(gk(3).graph)
    assert red.decisions == []
    assert red.reduced == gk(3).graph


@pytest.mark.parametrize("seed", range(30))
def test_random_graph_reduction(seed):
    rng = random.Random(seed)
    inst = random_graph(rng.randint(6, 14), rng.choice((0.3, 0.5)), rng.randint(2, 5), seed=seed)
    g = with_terminal_edges(inst.graph, seed)
    red = reduce_to_bipartite(g, verify=seed % 5 == 0)
    h = red.reduced
    assert not h.white_white_edges() and not h.black_black_edges()
    assert all_pairs_element_connectivity(h) == all_pairs_element_connectivity(g)
    assert red.trace.replay(g) == h


def test_lift_maps_subdivided_halves_and_clusters():
    g = graph_from([0, 1], [2, 3, 4], [(0, 2), (2, 3), (3, 4), (4, 1), (0, 1)])
    red = reduce_to_bipartite(g)
    h = red.reduced
    lifted = red.lift_edges(h.edges)
    assert lifted == frozenset(g.edges)
    half = next(e for e in h.edges if e not in g.edges)
    assert red.lift_edges([half]) == frozenset()


def test_pairs_restriction_keeps_listed_pairs():
    inst = random_graph(12, 0.4, 5, seed=3)
    g = inst.graph
    pairs = star_pairs([g.blacks()])
    red = reduce_to_bipartite(g, pairs=pairs)
    before = all_pairs_element_connectivity(g, pairs)
    assert all_pairs_element_connectivity(red.reduced, pairs) == before
    assert not red.reduced.white_white_edges()


def test_star_pairs():
    assert star_pairs([(5, 2, 9), (1,)]) == [(2, 5), (2, 9)]


def test_verify_mode_accepts_correct_run():
    g = graph_from([0, 1, 5], [2, 3, 4], [(0, 2), (2, 3), (3, 4), (4, 1), (2, 4), (3, 5)])
    red = reduce_to_bipartite(g, verify=True)
    assert not red.reduced.white_white_edges()
    assert isinstance(InternalConsistencyError("x"), Exception)
