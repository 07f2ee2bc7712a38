from fractions import Fraction

import pytest

from elemconn.errors import ParseError
from elemconn.formats import (emit_dot, emit_graph, emit_td, load_certificate, parse_graph, parse_td)
from elemconn.generators import hk, tw_chain
from elemconn.graph import Color, ColoredMultigraph


def test_empty_document():
    g = parse_graph("elemgraph v1\n")
    assert not g.vertices and not g.edges
    assert emit_graph(g) == "elemgraph v1\n"


def test_hk_round_trip():
    g = hk(4).graph
    text = emit_graph(g)
    back = parse_graph(text)
    assert len(back.vertices) == 6 and len(back.edges) == 8
    assert back == g
    assert emit_graph(back) == text


def test_parallel_copies_collapse():
    text = "elemgraph v1\nv 0 black\nv 1 white\ne 0 1 cost=3/2 mult=3\n"
    g = parse_graph(text)
    assert sorted(g.edges) == [0, 1, 2]
    assert all(e.cost == Fraction(3, 2) for e in g.edges.values())
    assert emit_graph(g) == text


def test_edge_id_gaps_survive():
    g = ColoredMultigraph()
    a, b = g.add_vertex(Color.BLACK, 0), g.add_vertex()
    g.add_edge(a, b, eid=0)
    g.add_edge(a, b, eid=5)
    g.add_edge(a, b, eid=6)
    text = emit_graph(g)
    assert "id=5" in text and "mult=2" in text
    assert sorted(parse_graph(text).edges) == [0, 5, 6]


def test_comments_and_groups():
    g = parse_graph("# hi\nelemgraph v1\n# note\nv 3 black group=2\nv 4 white\ne 3 4\n")
    assert g.vertices[3].group == 2 and g.is_white(4)


@pytest.mark.parametrize("body, line", [
    ("", 1),
    ("elemgraph v2\n", 1),
    ("elemgraph v1\nv 0 black\nv 0 white\n", 3),
    ("elemgraph v1\nv 0 black\ne 0 1\n", 3),
    ("elemgraph v1\nv 0 purple\n", 2),
    ("elemgraph v1\nv 0 black\nv 1 white\ne 0 1 mult=0\n", 4),
    ("elemgraph v1\nv 0 black\nv 1 white\ne 0 1 cost=0.5\n", 4),
    ("elemgraph v1\nv 0 black\nv 1 white\ne 0 1 cost=-1\n", 4),
    ("elemgraph v1\nv 0 black\ne 0 0\n", 3),
    ("elemgraph v1\nv 0 white group=1\n", 2),
    ("elemgraph v1\nv 0 black\nv 1 white\ne 0 1 id=0\ne 0 1 id=0\n", 5),
    ("elemgraph v1\nx 1 2\n", 2),
])
def test_parse_errors_carry_line_numbers(body, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(body)
    assert exc.value.line_no == line


def test_td_round_trip():
    inst = tw_chain(3, 2)
    text = emit_td(inst.td, len(inst.graph.vertices))
    assert text.startswith(f"s td {len(inst.td.bags)} 5 {len(inst.graph.vertices)}")
    back = parse_td("c a comment\n" + text)
    assert back.bags == inst.td.bags and sorted(back.edges) == sorted(inst.td.edges)


@pytest.mark.parametrize("text", [
    "b 0 1 2\n",
    "s td 2 2 2\nb 0 1\n",
    "s td 1 1 2\nb 0 1 2\n",
    "s td 1 2 2\nb 0 1\nb 0 2\n",
    "s tw 1 2 2\n",
])
def test_td_parse_errors(text):
    with pytest.raises(ParseError):
        parse_td(text)


def test_dot_highlights_subgraphs():
    g = hk(2).graph
    dot = emit_dot(g, [[0, 1]])
    assert dot.startswith("graph G {") and dot.rstrip().endswith("}")
    assert dot.count("penwidth") == 2
    assert "fillcolor=black" in dot


def test_certificate_loading():
    assert load_certificate('{"kind": "ssk"}')["kind"] == "ssk"
    with pytest.raises(ParseError):
        load_certificate("{nope")
    with pytest.raises(ParseError):
        load_certificate('{"kind": "other"}')
