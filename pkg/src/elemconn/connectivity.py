"""Element-, vertex- and white-separator queries on top of the flow engine.

Element gadget: black-black edges are subdivided first, every white vertex
``w`` becomes an arc ``(in, w) -> (out, w)`` of capacity 1, black vertices
stay unsplit, and each edge copy contributes an uncapacitated arc in both
directions. A maximum u-v flow then equals the element-connectivity and a
minimum cut consists of white vertices only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .flow import FlowNetwork, decompose_into_paths, max_flow
from .graph import ColoredMultigraph, subdivide_terminal_edges


@dataclass
class ElementCutResult:
    value: int
    witness_paths: list[list[int]] = field(default_factory=list)
    witness_edges: list[list[int]] = field(default_factory=list)
    witness_cut: frozenset[int] = frozenset()
    # black-black edges of the query graph that the minimum cut crosses
    cut_edges: frozenset[int] = frozenset()
    complete: bool = True


@dataclass
class WhiteSeparator:
    cut: frozenset[int]
    components: list[frozenset[int]]
    pair: tuple[int, int]


def _node_in(h: ColoredMultigraph, x):
    return ("b", x) if h.is_black(x) else ("i", x)


def _node_out(h: ColoredMultigraph, x):
    return ("b", x) if h.is_black(x) else ("o", x)


def element_network(h: ColoredMultigraph, skip_edges=frozenset()) -> FlowNetwork:
    """Element gadget of ``h``; ``h`` must have no black-black edges."""
    net = FlowNetwork()
    big = len(h.vertices) + 1
    for x in h.vertices:
        if h.is_black(x):
            net.add_node(("b", x))
        else:
            net.add_arc(("i", x), ("o", x), 1, tag=("v", x))
    for eid, e in h.edges.items():
        if eid in skip_edges:
            continue
        net.add_arc(_node_out(h, e.u), _node_in(h, e.v), big, tag=("e", eid, e.u, e.v))
        net.add_arc(_node_out(h, e.v), _node_in(h, e.u), big, tag=("e", eid, e.v, e.u))
    return net


def _check_pair(g: ColoredMultigraph, u: int, v: int) -> None:
    for x in (u, v):
        if x not in g:
            raise KeyError(f"vertex {x} not in graph")
        if not g.is_black(x):
            raise ValueError(f"vertex {x} is white; element-connectivity is defined on blacks")
    if u == v:
        raise ValueError("query pair must be two distinct vertices")


def element_connectivity(g: ColoredMultigraph, u: int, v: int, limit: int | None = None,
                         skip_edges=frozenset(), paths: bool = True) -> ElementCutResult:
    """Element-connectivity of black ``u`` and ``v`` with witnesses.

    With ``limit`` the flow stops at that value; the result is then marked
    incomplete when the limit is reached and carries no cut.
    """
    _check_pair(g, u, v)
    if g.black_black_edges():
        h, trace = subdivide_terminal_edges(g)
        fresh = {rec.vertex: rec.edge for rec in trace.records}
        parent = {half: rec.edge for rec in trace.records for half in rec.halves}
    else:
        h, fresh, parent = g, {}, {}
    net = element_network(h, skip_edges)
    f = max_flow(net, ("b", u), ("b", v), limit)
    res = ElementCutResult(f.value)
    if limit is not None and f.value >= limit:
        res.complete = False
    else:
        side = f.source_side
        cut = {x for x in h.whites() if ("i", x) in side and ("o", x) not in side}
        res.witness_cut = frozenset(x for x in cut if x not in fresh)
        res.cut_edges = frozenset(fresh[x] for x in cut if x in fresh)
    if not paths:
        return res
    for arc_path in decompose_into_paths(net, f, ("b", u), ("b", v)):
        verts = [u]
        eids: list[int] = []
        for i in arc_path:
            tag = net.arcs[i].tag
            if tag[0] != "e":
                continue
            _, eid, _, y = tag
            if eid in parent:
                if not eids or eids[-1] != parent[eid]:
                    eids.append(parent[eid])
            else:
                eids.append(eid)
            if y not in fresh:
                verts.append(y)
        res.witness_paths.append(verts)
        res.witness_edges.append(eids)
    return res


def element_connectivity_value(g: ColoredMultigraph, u: int, v: int,
                               limit: int | None = None, skip_edges=frozenset()) -> int:
    return element_connectivity(g, u, v, limit, skip_edges, paths=False).value


def all_pairs_element_connectivity(g: ColoredMultigraph,
                                   pairs: Iterable[tuple[int, int]] | None = None
                                   ) -> dict[tuple[int, int], int]:
    """Table of element-connectivity keyed by ``(min, max)`` black pairs."""
    if pairs is None:
        b = g.blacks()
        pairs = [(x, y) for i, x in enumerate(b) for y in b[i + 1:]]
    table = {}
    for x, y in pairs:
        key = (min(x, y), max(x, y))
        if key not in table:
            table[key] = element_connectivity_value(g, *key)
    return table


def set_element_connectivity(g: ColoredMultigraph, terminals: Iterable[int],
                             limit: int | None = None) -> int | None:
    """min over pairs of ``terminals``; None when fewer than two are given.

    Uses pairs through the smallest terminal only; the triangle inequality
    of element-connectivity makes that minimum the global one.
    """
    ts = sorted(set(terminals))
    if len(ts) < 2:
        return None
    return min(element_connectivity_value(g, ts[0], t, limit) for t in ts[1:])


def _separates(g: ColoredMultigraph, cut: set[int], a: int, b: int) -> bool:
    for comp in g.components(removed=cut):
        if a in comp:
            return b not in comp
    return True


def min_white_separator_below(g: ColoredMultigraph, terminals: Iterable[int],
                              threshold: int) -> WhiteSeparator | None:
    """A white cut of size < ``threshold`` separating two of ``terminals``.

    The cut is inclusion-minimal for the pair it separates. Returns None
    when every pair is at least ``threshold``-element-connected.
    """
    ts = sorted(set(terminals))
    if len(ts) < 2:
        raise ValueError("need at least two terminals")
    if threshold <= 0:
        return None
    if g.black_black_edges():
        raise ValueError("graph has black-black edges; subdivide or reduce it first")
    t0 = ts[0]
    for t in ts[1:]:
        res = element_connectivity(g, t0, t, limit=threshold, paths=False)
        if res.value >= threshold:
            continue
        cut = set(res.witness_cut)
        for x in sorted(res.witness_cut):
            if _separates(g, cut - {x}, t0, t):
                cut.discard(x)
        return WhiteSeparator(frozenset(cut), g.components(removed=cut), (t0, t))
    return None


def vertex_connectivity(g: ColoredMultigraph, u: int, v: int,
                        limit: int | None = None) -> int:
    """Number of internally vertex-disjoint u-v paths; colors are ignored.

    Each direct u-v edge copy counts as one path.
    """
    for x in (u, v):
        if x not in g:
            raise KeyError(f"vertex {x} not in graph")
    if u == v:
        raise ValueError("query pair must be two distinct vertices")
    net = FlowNetwork()
    big = len(g.vertices) + 1

    def n_in(x):
        return ("b", x) if x in (u, v) else ("i", x)

    def n_out(x):
        return ("b", x) if x in (u, v) else ("o", x)

    for x in g.vertices:
        if x in (u, v):
            net.add_node(("b", x))
        else:
            net.add_arc(("i", x), ("o", x), 1)
    for e in g.edges.values():
        cap = 1 if {e.u, e.v} == {u, v} else big
        net.add_arc(n_out(e.u), n_in(e.v), cap)
        net.add_arc(n_out(e.v), n_in(e.u), cap)
    return max_flow(net, ("b", u), ("b", v), limit).value
