"""Element-disjoint Steiner tree and forest packing in general graphs.

Trees come from random coloring of the white vertices of the bipartite
reduction. Forests come from a recursion on good separators: pack trees in
a well-connected core, shrink the core away, and recurse on the rest with a
clique on the separator standing in for the core.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .connectivity import element_connectivity, min_white_separator_below, set_element_connectivity
from .errors import InfeasibleError, InternalConsistencyError, NoPackingError
from .graph import ColoredMultigraph, is_connected_on
from .reduction import reduce_to_bipartite, star_pairs

RESEEDS_PER_COLOR_COUNT = 20


@dataclass
class Packing:
    subgraphs: list[frozenset[int]]
    groups: list[tuple[int, ...]]
    kind: str  # "trees" or "forests"
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.subgraphs)


@dataclass
class GoodSeparator:
    cut: frozenset[int]
    core: frozenset[int]
    connectivity_floor: int


def tree_count_floor(k: int, n_terminals: int) -> int:
    """max(1, floor(k / (6 log2 |T|)))."""
    return max(1, math.floor(k / (6 * math.log2(max(2, n_terminals)))))


def forest_count_floor(k: int, n_terminals: int, n_groups: int) -> int:
    """max(1, floor(k / (12 log2 |T| max(1, log2 m))))."""
    denom = 12 * math.log2(max(2, n_terminals)) * max(1.0, math.log2(max(1, n_groups)))
    return max(1, math.floor(k / denom))


def separator_threshold(k: int, n_groups: int) -> int:
    return math.ceil(k / (2 * max(1.0, math.log2(max(1, n_groups)))))


def prune_to_forest(g: ColoredMultigraph, eids: Iterable[int], required: Iterable[int]) -> frozenset[int]:
    """Spanning forest of the edge set with non-required leaves stripped.

    Edges are scanned in ascending id order, so the result is deterministic.
    """
    required = set(required)
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept: set[int] = set()
    for eid in sorted(set(eids)):
        e = g.edges[eid]
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
            kept.add(eid)
    inc: dict[int, set[int]] = {}
    for eid in kept:
        e = g.edges[eid]
        inc.setdefault(e.u, set()).add(eid)
        inc.setdefault(e.v, set()).add(eid)
    leaves = [x for x, s in inc.items() if len(s) == 1 and x not in required]
    while leaves:
        x = leaves.pop()
        if len(inc.get(x, ())) != 1:
            continue
        (eid,) = inc.pop(x)
        kept.discard(eid)
        y = g.edges[eid].other(x)
        inc[y].discard(eid)
        if len(inc[y]) == 1 and y not in required:
            leaves.append(y)
    return frozenset(kept)


def _bfs_connector(b: ColoredMultigraph, terminals: Sequence[int], allowed: set[int]) -> set[int] | None:
    """Edges of a BFS tree from the first terminal through ``allowed`` vertices.

    Returns None when some terminal is unreachable.
    """
    start = terminals[0]
    seen = {start}
    tree: set[int] = set()
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for eid in b.incident(x):
            y = b.edges[eid].other(x)
            if y in seen or y not in allowed:
                continue
            seen.add(y)
            tree.add(eid)
            queue.append(y)
    if any(t not in seen for t in terminals):
        return None
    return tree


def color_classes(whites: Sequence[int], colors: int, rng: random.Random) -> list[set[int]]:
    classes: list[set[int]] = [set() for _ in range(colors)]
    for w in whites:
        classes[rng.randrange(colors)].add(w)
    return classes


def connecting_classes(b: ColoredMultigraph, terminals: Sequence[int], colors: int,
                       rng: random.Random) -> list[set[int] | None]:
    """Color the whites of ``b`` once and grow a connector inside each class.

    Entry ``j`` is the edge set of the connector for class ``j`` or None if
    that class does not connect ``terminals``.
    """
    ts = sorted(terminals)
    blacks = set(b.blacks())
    return [_bfs_connector(b, ts, blacks | cls) for cls in color_classes(b.whites(), colors, rng)]


def _two_terminal_paths(h: ColoredMultigraph, s: int, t: int) -> list[frozenset[int]]:
    res = element_connectivity(h, s, t)
    return [prune_to_forest(h, eids, (s, t)) for eids in res.witness_edges]


def pack_trees_random_coloring(g: ColoredMultigraph, terminals: Iterable[int], k: int,
                               seed=0, verify: bool = False,
                               reseeds: int = RESEEDS_PER_COLOR_COUNT) -> Packing:
    """Element-disjoint Steiner trees on ``terminals`` by random coloring.

    Vertices outside ``terminals`` are treated as Steiner vertices.
    """
    ts = sorted(set(terminals))
    if len(ts) < 2:
        raise ValueError("need at least two terminals")
    for x in ts:
        if x not in g:
            raise KeyError(f"terminal {x} not in graph")
    h = g.recolored(ts)
    if not is_connected_on(h, ts):
        raise NoPackingError("terminals are not connected")
    if verify:
        got = set_element_connectivity(h, ts, limit=k)
        if got < k:
            raise InfeasibleError(f"terminals are only {got}-element-connected, not {k}")
    group = (tuple(ts),)
    if len(ts) == 2:
        subs = _two_terminal_paths(h, *ts)
        return Packing(subs, list(group), "trees", {"colors": None, "attempts": 0})

    red = reduce_to_bipartite(h, pairs=star_pairs([ts]))
    b = red.reduced
    target = tree_count_floor(k, len(ts))
    colors = target
    attempts = 0
    while True:
        for attempt in range(reseeds):
            attempts += 1
            rng = random.Random(f"{seed}:{colors}:{attempt}")
            found = connecting_classes(b, ts, colors, rng)
            if all(c is not None for c in found):
                subs = []
                for edges in found:
                    lifted = red.lift_edges(prune_to_forest(b, edges, ts))
                    subs.append(prune_to_forest(h, lifted, ts))
                meta = {"colors": colors, "target": target, "attempts": attempts}
                return Packing(subs, list(group), "trees", meta)
        if colors == 1:
            raise InternalConsistencyError("a single color class must connect connected terminals")
        colors = max(1, colors // 2)


# forests ---------------------------------------------------------------------

def _normalize_groups(groups) -> list[tuple[int, ...]]:
    out = sorted({tuple(sorted(set(t))) for t in groups if len(set(t)) >= 2})
    seen: set[int] = set()
    for t in out:
        if seen & set(t):
            raise ValueError("terminal groups must be disjoint")
        seen |= set(t)
    return out


def _group_index(groups):
    return {x: i for i, t in enumerate(groups) for x in t}


def find_good_separator(g: ColoredMultigraph, groups, k: int) -> GoodSeparator:
    """White cut and core component whose terminals are well connected.

    ``g`` must have no black-black edges. The cut is the union of the
    per-round separators, trimmed to an inclusion-minimal set that still
    isolates the core's terminals from all other terminals.
    """
    groups = _normalize_groups(groups)
    if not groups:
        raise ValueError("need at least one group with two terminals")
    floor = separator_threshold(k, len(groups))
    owner = _group_index(groups)
    current = g
    cut: set[int] = set()
    rounds = 0
    while True:
        terms = sorted(x for x in owner if x in current)
        sep = min_white_separator_below(current, terms, floor) if len(terms) >= 2 else None
        if sep is None:
            break
        rounds += 1
        cut |= sep.cut
        best = None
        for comp in sep.components:
            present = {owner[x] for x in comp if x in owner}
            if not present:
                continue
            for gi in present:
                if not set(groups[gi]) <= comp:
                    raise InternalConsistencyError(f"group {groups[gi]} split by a white cut")
            key = (len(present), min(comp))
            if best is None or key < best[0]:
                best = (key, comp)
        current = current.induced(best[1])
    core_terms = {x for x in owner if x in current}
    if not rounds:
        return GoodSeparator(frozenset(), frozenset(g.vertices), floor)

    def core_of(s: set[int]) -> frozenset[int] | None:
        anchor = min(core_terms)
        for comp in g.components(removed=s):
            if anchor in comp:
                if any(x in comp for x in owner if x not in core_terms):
                    return None
                return comp
        raise InternalConsistencyError("core terminal vanished")

    for x in sorted(cut):
        if core_of(cut - {x}) is not None:
            cut.discard(x)
    core = core_of(cut)
    return GoodSeparator(frozenset(cut), core, floor)


def pack_forests(g: ColoredMultigraph, groups, k: int, seed=0, verify: bool = False) -> Packing:
    """Element-disjoint Steiner forests for the given terminal groups.

    Singleton groups need no connection and are ignored. Vertices outside
    every group are treated as Steiner vertices.
    """
    norm = _normalize_groups(groups)
    if not norm:
        raise ValueError("need at least one group with two terminals")
    terminals = sorted(x for t in norm for x in t)
    for x in terminals:
        if x not in g:
            raise KeyError(f"terminal {x} not in graph")
    h = g.recolored(terminals)
    for t in norm:
        if not is_connected_on(h, t):
            raise NoPackingError(f"group {t} is not connected")
        if verify:
            got = set_element_connectivity(h, t, limit=k)
            if got < k:
                raise InfeasibleError(f"group {t} is only {got}-element-connected, not {k}")
    meta = {"separators": []}
    subs = _forests(h, norm, k, str(seed), meta)
    return Packing(subs, norm, "forests", meta)


def _forests(h: ColoredMultigraph, groups, k: int, seed: str, meta) -> list[frozenset[int]]:
    terminals = sorted(x for t in groups for x in t)
    if len(groups) == 1:
        return pack_trees_random_coloring(h, groups[0], k, seed).subgraphs
    red = reduce_to_bipartite(h, pairs=star_pairs(groups))
    b = red.reduced
    sep = find_good_separator(b, groups, k)
    meta["separators"].append({"cut": sorted(sep.cut), "floor": sep.connectivity_floor,
                               "core_size": len(sep.core)})
    core_terms = sorted(x for x in terminals if x in sep.core)
    outer = [t for t in groups if t[0] not in sep.core]
    # core terminals are all well linked, so trees on all of them serve every inner group
    trees = pack_trees_random_coloring(b.induced(sep.core), core_terms, sep.connectivity_floor,
                                       f"{seed}.core").subgraphs
    if not outer:
        combined = list(trees)
    else:
        rest = b.induced(set(b.vertices) - sep.core)
        clique: dict[int, tuple[int, int]] = {}
        s_list = sorted(sep.cut)
        for i, u in enumerate(s_list):
            for v in s_list[i + 1:]:
                clique[rest.add_edge(u, v, 0)] = (u, v)
        forests = _forests(rest, outer, k, f"{seed}.rest", meta)
        anchor = {}
        core_set = set(core_terms)
        for u in s_list:
            links = [eid for eid in b.incident(u) if b.edges[eid].other(u) in core_set]
            if not links:
                raise InternalConsistencyError(f"separator vertex {u} not adjacent to the core")
            anchor[u] = min(links)
        combined = []
        for tree, forest in zip(trees, forests):
            edges = set(tree)
            for eid in forest:
                if eid in clique:
                    u, v = clique[eid]
                    edges.update((anchor[u], anchor[v]))
                else:
                    edges.add(eid)
            combined.append(edges)
    out = []
    for edges in combined:
        lifted = red.lift_edges(prune_to_forest(b, edges, terminals))
        out.append(prune_to_forest(h, lifted, terminals))
    return out
