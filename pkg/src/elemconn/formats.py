"""Text formats: graph documents, tree decompositions, DOT and JSON certificates.

Graph document::

    elemgraph v1
    # comment
    v 0 black group=0
    v 1 white
    e 0 1 cost=3/2 mult=2

Edge ids are assigned in order of appearance; a line may carry ``id=<n>``
to start its run of ids elsewhere, which the emitter writes only when the
ids are not the next free ones.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .errors import ParseError
from .graph import Color, ColoredMultigraph
from .treewidth import TreeDecomposition

HEADER = "elemgraph v1"


def _fraction(tok: str, line_no: int) -> Fraction:
    try:
        val = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line_no, f"bad rational {tok!r}") from None
    if "." in tok or "e" in tok.lower():
        raise ParseError(line_no, f"costs must be integers or p/q, got {tok!r}")
    if val < 0:
        raise ParseError(line_no, "negative cost")
    return val


def _int(tok: str, line_no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line_no, f"bad {what} {tok!r}") from None


def _attrs(tokens: list[str], allowed: set[str], line_no: int) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in allowed:
            raise ParseError(line_no, f"unexpected token {tok!r}")
        if key in out:
            raise ParseError(line_no, f"repeated attribute {key!r}")
        out[key] = val
    return out


def parse_graph(text: str) -> ColoredMultigraph:
    g = ColoredMultigraph()
    seen_header = False
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(line_no, f"expected header {HEADER!r}")
            seen_header = True
            continue
        tok = line.split()
        if tok[0] == "v":
            if len(tok) < 3:
                raise ParseError(line_no, "vertex line needs an id and a color")
            vid = _int(tok[1], line_no, "vertex id")
            if tok[2] not in ("black", "white"):
                raise ParseError(line_no, f"bad color token {tok[2]!r}")
            attrs = _attrs(tok[3:], {"group"}, line_no)
            group = _int(attrs["group"], line_no, "group") if "group" in attrs else None
            if vid in g:
                raise ParseError(line_no, f"duplicate vertex id {vid}")
            if group is not None and tok[2] != "black":
                raise ParseError(line_no, "only black vertices take a group")
            g.add_vertex(Color(tok[2]), group, vid=vid)
        elif tok[0] == "e":
            if len(tok) < 3:
                raise ParseError(line_no, "edge line needs two endpoints")
            u = _int(tok[1], line_no, "vertex id")
            v = _int(tok[2], line_no, "vertex id")
            for x in (u, v):
                if x not in g:
                    raise ParseError(line_no, f"unknown vertex {x}")
            if u == v:
                raise ParseError(line_no, f"self-loop at {u}")
            attrs = _attrs(tok[3:], {"cost", "mult", "id"}, line_no)
            cost = _fraction(attrs["cost"], line_no) if "cost" in attrs else Fraction(1)
            mult = _int(attrs.get("mult", "1"), line_no, "mult")
            if mult < 1:
                raise ParseError(line_no, f"mult must be at least 1, got {mult}")
            start = _int(attrs["id"], line_no, "edge id") if "id" in attrs else g.next_edge_id
            for i in range(mult):
                if start + i in g.edges:
                    raise ParseError(line_no, f"duplicate edge id {start + i}")
                g.add_edge(u, v, cost, eid=start + i)
        else:
            raise ParseError(line_no, f"unknown line type {tok[0]!r}")
    if not seen_header:
        raise ParseError(1, f"missing header {HEADER!r}")
    return g


def _cost_str(c: Fraction) -> str:
    return str(Fraction(c))


def emit_graph(g: ColoredMultigraph, comments: Iterable[str] = ()) -> str:
    lines = [HEADER]
    lines += [f"# {c}" for c in comments]
    for vid in sorted(g.vertices):
        vx = g.vertices[vid]
        extra = f" group={vx.group}" if vx.group is not None else ""
        lines.append(f"v {vid} {vx.color.value}{extra}")
    nxt = 0
    eids = sorted(g.edges)
    i = 0
    while i < len(eids):
        e = g.edges[eids[i]]
        j = i + 1
        # collapse runs of consecutive ids with identical endpoints and cost
        while j < len(eids) and eids[j] == eids[j - 1] + 1 and g.edges[eids[j]] == e:
            j += 1
        parts = [f"e {e.u} {e.v}"]
        if e.cost != 1:
            parts.append(f"cost={_cost_str(e.cost)}")
        if j - i > 1:
            parts.append(f"mult={j - i}")
        if eids[i] != nxt:
            parts.append(f"id={eids[i]}")
        lines.append(" ".join(parts))
        nxt = eids[j - 1] + 1
        i = j
    return "\n".join(lines) + "\n"


# tree decompositions ---------------------------------------------------------

def parse_td(text: str) -> TreeDecomposition:
    """PACE-style decomposition; vertex ids are those of the graph document."""
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    header = None
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "s":
            if len(tok) != 5 or tok[1] != "td":
                raise ParseError(line_no, "header must be 's td <bags> <width+1> <vertices>'")
            header = tuple(_int(t, line_no, "count") for t in tok[2:])
        elif tok[0] == "b":
            if header is None:
                raise ParseError(line_no, "bag before header")
            bid = _int(tok[1], line_no, "bag id") if len(tok) > 1 else None
            if bid is None or bid in bags:
                raise ParseError(line_no, "missing or duplicate bag id")
            bags[bid] = frozenset(_int(t, line_no, "vertex id") for t in tok[2:])
        else:
            if header is None or len(tok) != 2:
                raise ParseError(line_no, "expected a bag-tree edge 'a b'")
            a, b = (_int(t, line_no, "bag id") for t in tok)
            edges.append((a, b))
    if header is None:
        raise ParseError(1, "missing 's td' header")
    if header[0] != len(bags):
        raise ParseError(1, f"header announces {header[0]} bags, found {len(bags)}")
    td = TreeDecomposition(bags, edges)
    if bags and header[1] < td.width + 1:
        raise ParseError(1, f"header width+1 {header[1]} below the largest bag {td.width + 1}")
    return td


def emit_td(td: TreeDecomposition, n_vertices: int | None = None) -> str:
    verts = {x for bag in td.bags.values() for x in bag}
    n = len(verts) if n_vertices is None else n_vertices
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for bid in sorted(td.bags):
        lines.append(" ".join(["b", str(bid)] + [str(x) for x in sorted(td.bags[bid])]))
    lines += [f"{a} {b}" for a, b in td.edges]
    return "\n".join(lines) + "\n"


# DOT -----------------------------------------------------------------------

_PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal"]


def emit_dot(g: ColoredMultigraph, highlight: list[Iterable[int]] = ()) -> str:
    """Undirected DOT; terminals filled, whites hollow, subgraphs colored."""
    color_of = {}
    for i, sub in enumerate(highlight):
        for eid in sub:
            color_of[eid] = _PALETTE[i % len(_PALETTE)]
    lines = ["graph G {", "  node [shape=circle];"]
    for vid in sorted(g.vertices):
        if g.is_black(vid):
            lines.append(f'  {vid} [style=filled, fillcolor=black, fontcolor=white];')
        else:
            lines.append(f"  {vid};")
    for eid in sorted(g.edges):
        e = g.edges[eid]
        attrs = [f'label="{eid}"']
        if eid in color_of:
            attrs.append(f"color={color_of[eid]}, penwidth=2")
        lines.append(f"  {e.u} -- {e.v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# certificates --------------------------------------------------------------

def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    return str(x)


def dump_certificate(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=_plain) + "\n"


def packing_certificate(p) -> dict:
    return {"kind": "packing", "subgraph_kind": p.kind, "groups": [list(t) for t in p.groups],
            "subgraphs": [sorted(s) for s in p.subgraphs], "meta": p.meta}


def spider_certificate(sd, blacks, k) -> dict:
    return {"kind": "spiders", "k": k, "blacks": sorted(blacks),
            "spiders": [{"head": sp.head, "legs": sp.legs, "leg_edges": sp.leg_edges}
                        for sp in sd.spiders]}


def ssk_certificate(inst, res) -> dict:
    return {"kind": "ssk", "root": inst.root, "k": inst.k, "terminals": list(inst.terminals),
            "edges": sorted(res.edges), "cost": str(res.cost), "order": res.order,
            "step_costs": [str(c) for c in res.step_costs]}


def load_certificate(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"certificate is not JSON: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("kind") not in ("packing", "spiders", "ssk"):
        raise ParseError(1, "certificate needs kind packing, spiders or ssk")
    return doc
