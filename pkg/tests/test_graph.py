import pytest

from elemconn.graph import (Color, ColoredMultigraph, ContractEdge, DeleteEdge, MinorTrace, contract_edge,
                            delete_edge, is_connected_on, merge_vertices, subdivide_terminal_edges)

from helpers import graph_from


def test_vertex_and_edge_ids_are_stable():
    g = graph_from([0, 1], [2], [(0, 2), (2, 1), (0, 1)])
    assert sorted(g.edges) == [0, 1, 2]
    h = delete_edge(g, 1)
    assert sorted(h.edges) == [0, 2]
    assert sorted(g.edges) == [0, 1, 2]
    assert h.add_edge(0, 2) == 3


def test_group_only_on_black():
    g = ColoredMultigraph()
    with pytest.raises(ValueError):
        g.add_vertex(Color.WHITE, group=1)


def test_self_loop_rejected():
    g = graph_from([0], [], [])
    with pytest.raises(ValueError):
        g.add_edge(0, 0)


def test_contract_keeps_smaller_id_and_drops_loops():
    g = graph_from([0], [1, 2], [(1, 2), (1, 2), (0, 2)])
    h, rec = contract_edge(g, 0)
    assert rec == ContractEdge(0, 1, 2)
    assert 2 not in h
    assert sorted(h.edges) == [2]
    assert {h.edges[2].u, h.edges[2].v} == {0, 1}


def test_contract_with_black_endpoint_stays_black():
    g = graph_from([0], [1], [(0, 1)])
    h, _ = contract_edge(g, 0)
    assert h.is_black(0)


def test_merge_vertices_unions_neighbourhoods():
    g = graph_from([0, 1], [2, 3], [(0, 2), (1, 3), (0, 1)])
    h, rec = merge_vertices(g, 0, 1)
    assert rec.survivor == 0 and 1 not in h
    assert h.neighbors(0) == {2, 3}


def test_subdivision_trace_replays():
    g = graph_from([0, 1], [2], [(0, 1), (0, 1), (0, 2)])
    h, trace = subdivide_terminal_edges(g)
    assert not h.black_black_edges()
    assert len(h.whites()) == 3
    assert trace.replay(g) == h


def test_trace_vertex_map_follows_contractions():
    g = graph_from([0], [1, 2, 3], [(1, 2), (2, 3), (0, 3)])
    t = MinorTrace.start(g)
    h = g.copy()
    for rec in (ContractEdge(1, 2, 3), ContractEdge(0, 1, 2)):
        from elemconn.graph import _apply
        _apply(h, rec)
        t.record(rec)
    t.record(DeleteEdge(2))
    assert t.vertex_map == {0: 0, 1: 1, 2: 1, 3: 1}


def test_components_and_connectivity():
    g = graph_from([0, 1, 4], [2, 3], [(0, 2), (2, 1), (3, 4)])
    assert sorted(map(sorted, g.components())) == [[0, 1, 2], [3, 4]]
    assert is_connected_on(g, [0, 1])
    assert not is_connected_on(g, [0, 4])
    assert sorted(map(sorted, g.components(removed={2}))) == [[0], [1], [3, 4]]


def test_with_edges_keeps_isolated_vertices():
    g = graph_from([0, 1], [2], [(0, 2), (2, 1)])
    h = g.with_edges([0])
    assert set(h.vertices) == {0, 1, 2} and list(h.edges) == [0]


def test_recolored_drops_groups_of_new_whites():
    g = graph_from([0, 1], [2], [(0, 2)])
    g.set_vertex(0, Color.BLACK, 5)
    h = g.recolored([2])
    assert h.blacks() == [2] and h.is_white(0)
