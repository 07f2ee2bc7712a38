"""Black/white multigraphs with stable vertex and edge identities.

Vertices are integers. Black vertices are terminals and may carry a group
label; white vertices are Steiner vertices. Parallel edges are distinct
edge ids; self-loops are never stored.

Graphs are values: the module-level operations (``delete_edge``,
``contract_edge``, ``subdivide_terminal_edges``, ``merge_vertices``) never
touch their input. The ``add_*``/``remove_*`` methods exist for building
a graph before it is handed to an algorithm.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union


class Color(str, Enum):
    BLACK = "black"
    WHITE = "white"


@dataclass(frozen=True)
class Vertex:
    color: Color
    group: int | None = None


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    cost: Fraction = Fraction(1)

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x} is not an endpoint of {self}")

    @property
    def key(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)


class ColoredMultigraph:
    def __init__(self):
        self._vertices: dict[int, Vertex] = {}
        self._edges: dict[int, Edge] = {}
        self._inc: dict[int, set[int]] = {}
        self._next_vid = 0
        self._next_eid = 0

    # construction -------------------------------------------------------

    def add_vertex(self, color: Color | str = Color.WHITE, group: int | None = None,
                   vid: int | None = None) -> int:
        color = Color(color)
        if group is not None and color is not Color.BLACK:
            raise ValueError("group labels are only allowed on black vertices")
        if vid is None:
            vid = self._next_vid
        if vid in self._vertices:
            raise ValueError(f"duplicate vertex id {vid}")
        self._vertices[vid] = Vertex(color, group)
        self._inc[vid] = set()
        self._next_vid = max(self._next_vid, vid + 1)
        return vid

    def add_edge(self, u: int, v: int, cost=1, eid: int | None = None) -> int:
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if u not in self._vertices or v not in self._vertices:
            raise KeyError(f"unknown endpoint in edge {u}-{v}")
        if eid is None:
            eid = self._next_eid
        if eid in self._edges:
            raise ValueError(f"duplicate edge id {eid}")
        self._edges[eid] = Edge(u, v, Fraction(cost))
        self._inc[u].add(eid)
        self._inc[v].add(eid)
        self._next_eid = max(self._next_eid, eid + 1)
        return eid

    def remove_edge(self, eid: int) -> None:
        e = self._edges.pop(eid)
        self._inc[e.u].discard(eid)
        self._inc[e.v].discard(eid)

    def remove_vertex(self, v: int) -> None:
        for eid in list(self._inc[v]):
            self.remove_edge(eid)
        del self._inc[v]
        del self._vertices[v]

    def set_vertex(self, v: int, color: Color | str, group: int | None = None) -> None:
        color = Color(color)
        if group is not None and color is not Color.BLACK:
            raise ValueError("group labels are only allowed on black vertices")
        self._vertices[v] = Vertex(color, group)

    def _repoint(self, eid: int, old: int, new: int) -> None:
        e = self._edges[eid]
        u = new if e.u == old else e.u
        v = new if e.v == old else e.v
        self._inc[old].discard(eid)
        self._inc[new].add(eid)
        self._edges[eid] = Edge(u, v, e.cost)

    def copy(self) -> "ColoredMultigraph":
        g = ColoredMultigraph()
        g._vertices = dict(self._vertices)
        g._edges = dict(self._edges)
        g._inc = {v: set(s) for v, s in self._inc.items()}
        g._next_vid = self._next_vid
        g._next_eid = self._next_eid
        return g

    @property
    def next_vertex_id(self) -> int:
        return self._next_vid

    @property
    def next_edge_id(self) -> int:
        return self._next_eid

    # queries ------------------------------------------------------------

    @property
    def vertices(self) -> Mapping[int, Vertex]:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, Edge]:
        return self._edges

    def __contains__(self, v) -> bool:
        return v in self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredMultigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __repr__(self) -> str:
        return (f"ColoredMultigraph(|B|={len(self.blacks())}, |W|={len(self.whites())}, "
                f"|E|={len(self._edges)})")

    def color(self, v: int) -> Color:
        return self._vertices[v].color

    def group(self, v: int) -> int | None:
        return self._vertices[v].group

    def is_black(self, v: int) -> bool:
        return self._vertices[v].color is Color.BLACK

    def is_white(self, v: int) -> bool:
        return self._vertices[v].color is Color.WHITE

    def blacks(self) -> list[int]:
        return sorted(v for v, x in self._vertices.items() if x.color is Color.BLACK)

    def whites(self) -> list[int]:
        return sorted(v for v, x in self._vertices.items() if x.color is Color.WHITE)

    def incident(self, v: int) -> list[int]:
        return sorted(self._inc[v])

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def neighbors(self, v: int) -> set[int]:
        return {self._edges[e].other(v) for e in self._inc[v]}

    def edges_between(self, u: int, v: int) -> list[int]:
        return sorted(e for e in self._inc[u] if self._edges[e].other(u) == v)

    def groups(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {}
        for v, x in self._vertices.items():
            if x.group is not None:
                out.setdefault(x.group, set()).add(v)
        return {gid: frozenset(s) for gid, s in sorted(out.items())}

    def edge_multiset(self) -> Counter:
        return Counter((*e.key, e.cost) for e in self._edges.values())

    def white_white_edges(self) -> list[int]:
        """White-white edge ids in (min endpoint, max endpoint, id) order."""
        ww = [eid for eid, e in self._edges.items()
              if self.is_white(e.u) and self.is_white(e.v)]
        return sorted(ww, key=lambda eid: (*self._edges[eid].key, eid))

    def black_black_edges(self) -> list[int]:
        return sorted(eid for eid, e in self._edges.items()
                      if self.is_black(e.u) and self.is_black(e.v))

    def components(self, removed: Iterable[int] = ()) -> list[frozenset[int]]:
        """Connected components after deleting the ``removed`` vertices."""
        removed = set(removed)
        seen: set[int] = set()
        comps = []
        for s in sorted(self._vertices):
            if s in seen or s in removed:
                continue
            comp = {s}
            queue = deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                for y in self.neighbors(x):
                    if y not in seen and y not in removed:
                        seen.add(y)
                        comp.add(y)
                        queue.append(y)
            comps.append(frozenset(comp))
        return comps

    # derived graphs -------------------------------------------------------

    def induced(self, keep: Iterable[int]) -> "ColoredMultigraph":
        keep = set(keep)
        g = self.copy()
        for v in list(g._vertices):
            if v not in keep:
                g.remove_vertex(v)
        return g

    def edge_subgraph(self, eids: Iterable[int]) -> "ColoredMultigraph":
        """Graph on the endpoints of ``eids`` with only those edges."""
        eids = set(eids)
        g = ColoredMultigraph()
        g._next_vid, g._next_eid = self._next_vid, self._next_eid
        for eid in sorted(eids):
            e = self._edges[eid]
            for x in (e.u, e.v):
                if x not in g._vertices:
                    g._vertices[x] = self._vertices[x]
                    g._inc[x] = set()
            g._edges[eid] = e
            g._inc[e.u].add(eid)
            g._inc[e.v].add(eid)
        return g

    def with_edges(self, eids: Iterable[int]) -> "ColoredMultigraph":
        """All vertices of this graph, only the edges in ``eids``."""
        keep = set(eids)
        g = self.copy()
        for eid in list(g._edges):
            if eid not in keep:
                g.remove_edge(eid)
        return g

    def recolored(self, blacks: Iterable[int]) -> "ColoredMultigraph":
        """Copy in which exactly ``blacks`` are black; other groups are dropped."""
        blacks = set(blacks)
        g = self.copy()
        for v, x in self._vertices.items():
            if v in blacks:
                g._vertices[v] = Vertex(Color.BLACK, x.group)
            else:
                g._vertices[v] = Vertex(Color.WHITE)
        return g


# minor trace -------------------------------------------------------------

@dataclass(frozen=True)
class DeleteEdge:
    edge: int


@dataclass(frozen=True)
class ContractEdge:
    edge: int
    survivor: int
    absorbed: int


@dataclass(frozen=True)
class SubdivideEdge:
    edge: int
    vertex: int
    halves: tuple[int, int]


@dataclass(frozen=True)
class MergeVertices:
    u: int
    v: int
    survivor: int
    group: int | None = None


TraceRecord = Union[DeleteEdge, ContractEdge, SubdivideEdge, MergeVertices]


@dataclass
class MinorTrace:
    """Ordered delete/contract/subdivide/merge history plus the vertex map.

    ``vertex_map`` sends every vertex of the graph the trace started from
    to the vertex that currently represents it.
    """

    records: list[TraceRecord] = field(default_factory=list)
    vertex_map: dict[int, int] = field(default_factory=dict)

    @classmethod
    def start(cls, g: ColoredMultigraph) -> "MinorTrace":
        return cls([], {v: v for v in g.vertices})

    def record(self, rec: TraceRecord) -> None:
        self.records.append(rec)
        if isinstance(rec, (ContractEdge, MergeVertices)):
            gone = rec.absorbed if isinstance(rec, ContractEdge) else (
                rec.v if rec.survivor == rec.u else rec.u)
            for orig, cur in self.vertex_map.items():
                if cur == gone:
                    self.vertex_map[orig] = rec.survivor

    def extend(self, other: "MinorTrace") -> None:
        for rec in other.records:
            self.record(rec)

    def replay(self, original: ColoredMultigraph) -> ColoredMultigraph:
        g = original.copy()
        for rec in self.records:
            _apply(g, rec)
        return g

    def __len__(self) -> int:
        return len(self.records)


def _merge_into(g: ColoredMultigraph, survivor: int, gone: int, group) -> None:
    for eid in list(g._inc[gone]):
        e = g._edges[eid]
        if e.other(gone) == survivor:
            g.remove_edge(eid)
        else:
            g._repoint(eid, gone, survivor)
    black = g.is_black(survivor) or g.is_black(gone)
    del g._inc[gone]
    del g._vertices[gone]
    g._vertices[survivor] = Vertex(Color.BLACK, group) if black else Vertex(Color.WHITE)


def _contract_group(g: ColoredMultigraph, survivor: int, absorbed: int):
    if g.is_black(survivor):
        return g.group(survivor)
    if g.is_black(absorbed):
        return g.group(absorbed)
    return None


def _apply(g: ColoredMultigraph, rec: TraceRecord) -> None:
    """Apply one record to ``g`` in place."""
    if isinstance(rec, DeleteEdge):
        g.remove_edge(rec.edge)
    elif isinstance(rec, ContractEdge):
        _merge_into(g, rec.survivor, rec.absorbed, _contract_group(g, rec.survivor, rec.absorbed))
    elif isinstance(rec, SubdivideEdge):
        e = g.edges[rec.edge]
        g.remove_edge(rec.edge)
        g.add_vertex(Color.WHITE, vid=rec.vertex)
        g.add_edge(e.u, rec.vertex, e.cost, eid=rec.halves[0])
        g.add_edge(rec.vertex, e.v, 0, eid=rec.halves[1])
    elif isinstance(rec, MergeVertices):
        gone = rec.v if rec.survivor == rec.u else rec.u
        _merge_into(g, rec.survivor, gone, rec.group)
    else:
        raise TypeError(f"not a minor operation: {rec!r}")


# operations ----------------------------------------------------------------

def delete_edge(g: ColoredMultigraph, e: int) -> ColoredMultigraph:
    if e not in g.edges:
        raise KeyError(f"unknown edge id {e}")
    h = g.copy()
    h.remove_edge(e)
    return h


def contract_edge(g: ColoredMultigraph, e: int) -> tuple[ColoredMultigraph, ContractEdge]:
    """Merge the endpoints of ``e``; the smaller id survives, loops are dropped."""
    if e not in g.edges:
        raise KeyError(f"unknown edge id {e}")
    edge = g.edges[e]
    rec = ContractEdge(e, min(edge.u, edge.v), max(edge.u, edge.v))
    h = g.copy()
    _apply(h, rec)
    return h, rec


def merge_vertices(g: ColoredMultigraph, u: int, v: int,
                   group: int | None = None) -> tuple[ColoredMultigraph, MergeVertices]:
    if u not in g or v not in g or u == v:
        raise KeyError(f"cannot merge {u} and {v}")
    rec = MergeVertices(u, v, min(u, v), group)
    h = g.copy()
    _apply(h, rec)
    return h, rec


def subdivide_terminal_edges(g: ColoredMultigraph) -> tuple[ColoredMultigraph, MinorTrace]:
    """Put a fresh white vertex on every black-black edge."""
    h = g.copy()
    trace = MinorTrace.start(g)
    for eid in g.black_black_edges():
        s = h.next_vertex_id
        e1 = h.next_edge_id
        rec = SubdivideEdge(eid, s, (e1, e1 + 1))
        _apply(h, rec)
        trace.record(rec)
    return h, trace


def is_connected_on(g: ColoredMultigraph, terminals: Iterable[int]) -> bool:
    terminals = list(terminals)
    if len(terminals) <= 1:
        return True
    for comp in g.components():
        if terminals[0] in comp:
            return all(t in comp for t in terminals)
    return False
