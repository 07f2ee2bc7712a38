"""Tree decompositions and Steiner tree packing in bounded-treewidth graphs.

The packer follows an induction on the number of terminals: with few
terminals the random-coloring packer suffices; otherwise a bag of the
decomposition cuts off between r and 2r terminals, a short peeling loop
finds a well-connected core among them, trees are packed in the core, the
core is contracted to one fresh terminal and the procedure recurses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .connectivity import min_white_separator_below
from .errors import InternalConsistencyError, NoPackingError
from .graph import Color, ColoredMultigraph, MinorTrace, SubdivideEdge, is_connected_on


@dataclass
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {b: [] for b in self.bags}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj.values():
            lst.sort()
        return adj

    def problems(self, g: ColoredMultigraph) -> list[str]:
        """Reasons this is not a tree decomposition of ``g`` (empty if valid)."""
        out = []
        adj = self.neighbors()
        if any(a not in self.bags or b not in self.bags for a, b in self.edges):
            return ["tree edge names an unknown bag"]
        if self.bags:
            start = min(self.bags)
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(self.bags) or len(self.edges) != len(self.bags) - 1:
                out.append("bags do not form a tree")
        elif g.vertices:
            out.append("no bags")
        holders: dict[int, set[int]] = {}
        for bid, bag in self.bags.items():
            for x in bag:
                if x not in g:
                    out.append(f"bag {bid} holds unknown vertex {x}")
                holders.setdefault(x, set()).add(bid)
        for x in g.vertices:
            if x not in holders:
                out.append(f"vertex {x} in no bag")
        for eid, e in g.edges.items():
            if not holders.get(e.u, set()) & holders.get(e.v, set()):
                out.append(f"edge {eid} ({e.u}-{e.v}) in no bag")
        for x, hs in holders.items():
            start = min(hs)
            seen = {start}
            stack = [start]
            while stack:
                y = stack.pop()
                for z in adj[y]:
                    if z in hs and z not in seen:
                        seen.add(z)
                        stack.append(z)
            if seen != hs:
                out.append(f"bags holding vertex {x} are not connected")
        return out

    def validate(self, g: ColoredMultigraph) -> None:
        bad = self.problems(g)
        if bad:
            raise ValueError("invalid tree decomposition: " + "; ".join(bad[:5]))

    def relabeled(self, vertex_map: dict[int, int], extra: Iterable[tuple[frozenset[int], int]] = ()
                  ) -> "TreeDecomposition":
        """Map bag contents through ``vertex_map``; vertices absent from it are dropped.

        ``extra`` lists (bag, attach-to) pairs appended as new leaf bags.
        """
        bags = {b: frozenset(vertex_map[x] for x in bag if x in vertex_map)
                for b, bag in self.bags.items()}
        edges = list(self.edges)
        nxt = max(bags, default=-1) + 1
        for bag, host in extra:
            bags[nxt] = frozenset(bag)
            if host is not None:
                edges.append((host, nxt))
            nxt += 1
        return TreeDecomposition(bags, edges)


def min_degree_decomposition(g: ColoredMultigraph) -> TreeDecomposition:
    """Tree decomposition from a min-degree elimination order (no width guarantee)."""
    adj = {x: set(g.neighbors(x)) for x in g.vertices}
    order: list[int] = []
    bag_of: dict[int, frozenset[int]] = {}
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        nb = adj.pop(v)
        bag_of[v] = frozenset(nb | {v})
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        order.append(v)
    pos = {v: i for i, v in enumerate(order)}
    bags = {i: bag_of[v] for i, v in enumerate(order)}
    edges = []
    roots = []
    for i, v in enumerate(order):
        later = [x for x in bag_of[v] if x != v]
        if later:
            edges.append((i, min(pos[x] for x in later)))
        else:
            roots.append(i)
    edges += [(roots[0], r) for r in roots[1:]]
    return TreeDecomposition(bags, edges)


def map_through_trace(td: TreeDecomposition, trace: MinorTrace, g: ColoredMultigraph) -> TreeDecomposition:
    """Decomposition of the minor reached from ``g`` by ``trace``.

    Contractions and deletions keep a decomposition valid once vertices are
    renamed; every subdivision vertex gets a leaf bag next to a bag holding
    both ends of the edge it splits.
    """
    extra = []
    for rec in trace.records:
        if isinstance(rec, SubdivideEdge):
            e = g.edges[rec.edge]
            host = next(b for b, bag in sorted(td.bags.items()) if e.u in bag and e.v in bag)
            ends = frozenset((trace.vertex_map[e.u], trace.vertex_map[e.v]))
            extra.append((ends | {rec.vertex}, host))
    return td.relabeled(trace.vertex_map, extra)


# packing -------------------------------------------------------------------

def _cutset_walk(td: TreeDecomposition, terminals: set[int], r: int):
    """Cutset C and vertex set V' behind it holding between r and 2r terminals.

    Post-order over the decomposition rooted at its smallest bag: the first
    node whose subtree reaches r terminals (below its separator) either is
    the answer itself or has children that can be accumulated to land in
    [r, 2r).
    """
    adj = td.neighbors()
    root = min(td.bags)
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in reversed(adj[x]):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    children: dict[int, list[int]] = {b: [] for b in td.bags}
    for b, p in parent.items():
        if p is not None:
            children[p].append(b)
    below: dict[int, set[int]] = {}
    for b in reversed(order):
        below[b] = set(td.bags[b]).union(*(below[c] for c in children[b]))
    for b in reversed(order):
        sep = td.bags[b] & td.bags[parent[b]] if parent[b] is not None else frozenset()
        inside = below[b] - sep
        count = len(inside & terminals)
        if count < r:
            continue
        if count <= 2 * r:
            return sep, inside
        # every child subtree holds fewer than r, so accumulating them lands in [r, 2r)
        cut = td.bags[b]
        acc: set[int] = set()
        for c in sorted(children[b]):
            acc |= below[c] - cut
            if len(acc & terminals) >= r:
                return cut, acc
        raise InternalConsistencyError("cutset walk found no subtree with r to 2r terminals")
    raise InternalConsistencyError("fewer than r terminals in the whole decomposition")


def _peel_core(gp: ColoredMultigraph, side_terms: set[int], threshold: int, r: int):
    """Shrink ``gp`` by small white cuts until its terminals are well linked.

    Each round keeps a component holding a terminal from ``side_terms``.
    Returns the core graph and the number of rounds.
    """
    cur = gp
    rounds = 0
    while True:
        terms = cur.blacks()
        sep = min_white_separator_below(cur, terms, threshold) if len(terms) >= 2 else None
        if sep is None:
            return cur, rounds
        rounds += 1
        if rounds > r:
            raise InternalConsistencyError(f"core search needed more than r = {r} rounds")
        pick = None
        for comp in sep.components:
            hits = sorted(comp & side_terms)
            if hits and (pick is None or hits[0] < pick[0]):
                pick = (hits[0], comp)
        if pick is None:
            raise InternalConsistencyError("no component keeps a terminal of the cut-off side")
        cur = cur.induced(pick[1])


def treewidth_count_floor(k: int, r: int) -> int:
    """max(1, floor(k / (12 r^2 log2(3r))))."""
    return max(1, math.floor(k / (12 * r * r * math.log2(3 * r))))


def pack_treewidth_trees(g: ColoredMultigraph, terminals: Iterable[int], k: int,
                         td: TreeDecomposition, seed=0):
    """Element-disjoint Steiner trees on ``terminals`` using the decomposition ``td``."""
    from .packing import Packing, prune_to_forest

    ts = sorted(set(terminals))
    if len(ts) < 2:
        raise ValueError("need at least two terminals")
    td.validate(g)
    h = g.recolored(ts)
    if not is_connected_on(h, ts):
        raise NoPackingError("terminals are not connected")
    r = td.width + 1
    meta = {"r": r, "core_iterations": [], "fallbacks": 0}
    subs = _tw_rec(h, ts, k, td, r, str(seed), meta)
    subs = [prune_to_forest(h, s, ts) for s in subs]
    return Packing(subs, [tuple(ts)], "trees", meta)


def _tw_rec(h: ColoredMultigraph, ts: list[int], k: int, td: TreeDecomposition, r: int,
            seed: str, meta) -> list[frozenset[int]]:
    from .packing import pack_trees_random_coloring, prune_to_forest
    from .reduction import reduce_to_bipartite, star_pairs

    if len(ts) <= 2 ** r:
        return pack_trees_random_coloring(h, ts, k, seed).subgraphs
    red = reduce_to_bipartite(h, pairs=star_pairs([ts]))
    b = red.reduced
    tdb = map_through_trace(td, red.trace, h)
    if tdb.problems(b):
        tdb = min_degree_decomposition(b)
    if tdb.width > r - 1:
        # subdividing parallel terminal edges can lift width 1 to 2, never beyond
        if tdb.width > max(r - 1, 2):
            raise InternalConsistencyError("could not keep the decomposition width after reduction")
        r = tdb.width + 1
        meta["r"] = max(meta["r"], r)
    tset = set(ts)
    cut, side = _cutset_walk(tdb, tset, r)
    blacks_c = {x for x in cut if x in tset}
    gp = b.induced(side | blacks_c)
    threshold = math.ceil(k / (2 * r * r))
    core, rounds = _peel_core(gp, side & tset, threshold, r)
    meta["core_iterations"].append(rounds)
    core_ts = sorted(x for x in core.vertices if x in tset)
    if core_ts:
        core = core.induced(next(c for c in core.components() if core_ts[0] in c))
        core_ts = sorted(x for x in core.vertices if x in tset)
    if len(core_ts) < 2:
        # connectivity too low for the peeling argument; fall back to one packing of everything
        meta["fallbacks"] += 1
        return pack_trees_random_coloring(h, ts, k, seed).subgraphs
    trees = pack_trees_random_coloring(core, core_ts, threshold, f"{seed}.core").subgraphs
    core_v = set(core.vertices)
    s_set = sorted({y for x in core_v for y in b.neighbors(x)} - core_v)
    if any(b.is_black(u) for u in s_set):
        raise InternalConsistencyError("core boundary contains a terminal")
    anchor = {}
    for u in s_set:
        anchor[u] = min(eid for eid in b.incident(u) if b.edges[eid].other(u) in core_v)

    # contract the core into a fresh terminal adjacent to its boundary
    b2 = b.induced(set(b.vertices) - core_v)
    star = b2.add_vertex(Color.BLACK)
    link = {b2.add_edge(star, u, 0): u for u in s_set}
    vmap = {x: (star if x in core_v else x) for x in b.vertices}
    td2 = tdb.relabeled(vmap)
    if td2.problems(b2) or td2.width > r - 1:
        td2 = min_degree_decomposition(b2)
        if td2.width > r - 1:
            raise InternalConsistencyError("contracted graph exceeds the width bound")
    ts2 = sorted((tset - set(core_ts)) | {star})
    rest = _tw_rec(b2, ts2, k, td2, r, f"{seed}.rest", meta)
    out = []
    for tree, other in zip(trees, rest):
        edges = set(tree)
        for eid in other:
            edges.add(anchor[link[eid]] if eid in link else eid)
        lifted = red.lift_edges(prune_to_forest(b, edges, ts))
        out.append(prune_to_forest(h, lifted, ts))
    return out
