"""Planar Steiner tree and forest packing by merging heavy terminal pairs.

After the bipartite reduction every white vertex of degree 2 is replaced by
a direct terminal-terminal edge. In a planar instance some terminal pair
then carries many parallel edges; one copy goes to each tree, the pair is
merged, and the process repeats. For forests, a group merged down to one
terminal is replaced by a white grid so the remaining groups can continue.

Every edge of the working graph lifts to edges of the input: terminal
edges created from degree-2 whites carry their lifted path eagerly, grid
edges lift to nothing, and anything else goes back through the stack of
reductions.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .connectivity import element_connectivity
from .errors import NoPackingError, ThresholdViolation
from .graph import Color, ColoredMultigraph, MergeVertices, _apply, is_connected_on
from .reduction import ReductionResult, reduce_to_bipartite, star_pairs


class _Lifter:
    """Maps edge sets of the current working graph back to the input graph."""

    def __init__(self):
        self.layers: list[ReductionResult] = []
        # edges whose input-graph image is already known (made from whites, or grid edges)
        self.direct: dict[int, frozenset[int]] = {}

    def resolve(self, eids: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        cur = set(eids)
        for red in reversed(self.layers):
            for e in [e for e in cur if e in self.direct]:
                out |= self.direct[e]
                cur.discard(e)
            cur = set(red.lift_edges(cur))
        for e in cur:
            out |= self.direct.get(e, frozenset((e,)))
        return frozenset(out)


@dataclass
class ReducedPlanarInstance:
    multigraph: ColoredMultigraph
    # terminal-terminal edge -> edges of the source graph it stands for
    lift: dict[int, frozenset[int]]
    reduction: ReductionResult | None = None


def _normalize(m: ColoredMultigraph, lifter: _Lifter) -> None:
    """Drop parallel white-terminal copies and dissolve whites of degree <= 2 (in place).

    Assumes every white is adjacent to terminals only.
    """
    for w in m.whites():
        by_nb: dict[int, list[int]] = {}
        for eid in m.incident(w):
            by_nb.setdefault(m.edges[eid].other(w), []).append(eid)
        for es in by_nb.values():
            for eid in es[1:]:
                m.remove_edge(eid)
        if len(by_nb) <= 1:
            m.remove_vertex(w)
        elif len(by_nb) == 2:
            (b1, (e1, *_)), (b2, (e2, *_)) = sorted(by_nb.items())
            path = lifter.resolve((e1, e2))
            m.remove_vertex(w)
            new = m.add_edge(b1, b2, 1)
            lifter.direct[new] = path


def _reduce_layer(m: ColoredMultigraph, lifter: _Lifter, pairs) -> ColoredMultigraph:
    red = reduce_to_bipartite(m, pairs=pairs)
    lifter.layers.append(red)
    out = red.reduced.copy()
    _normalize(out, lifter)
    return out


def build_reduced_instance(g: ColoredMultigraph, pairs=None) -> ReducedPlanarInstance:
    """Bipartite reduction followed by dissolving degree-2 whites into terminal edges."""
    lifter = _Lifter()
    m = _reduce_layer(g, lifter, pairs)
    lift = {eid: lifter.resolve((eid,)) for eid in m.black_black_edges()}
    return ReducedPlanarInstance(m, lift, lifter.layers[0])


def heavy_pair_threshold(k: int, genus_c: int | None = None) -> int:
    """Parallel copies needed per merge: ceil(k/5) - 1, or ceil(k/c) with a genus constant; at least 1."""
    if genus_c is not None:
        if genus_c < 1:
            raise ValueError("genus constant must be positive")
        return max(1, math.ceil(k / genus_c))
    return max(1, math.ceil(k / 5) - 1)


def find_heavy_terminal_pair(ri, k: int, genus_c: int | None = None) -> tuple[int, int, list[int]]:
    """Terminal pair with the most parallel edges, plus the copies to hand out.

    Ties go to the lexicographically smallest pair; the lowest edge ids are
    chosen. Raises ThresholdViolation when no pair reaches the threshold.
    """
    m = ri.multigraph if isinstance(ri, ReducedPlanarInstance) else ri
    need = heavy_pair_threshold(k, genus_c)
    copies: dict[tuple[int, int], list[int]] = {}
    for eid in m.black_black_edges():
        copies.setdefault(m.edges[eid].key, []).append(eid)
    best = max(copies.items(), key=lambda kv: (len(kv[1]), [-x for x in kv[0]]), default=None)
    mult = len(best[1]) if best else 0
    if mult < need:
        raise ThresholdViolation(
            f"largest terminal-pair multiplicity {mult} is below the required {need}; "
            "the input is not planar or its terminals are less connected than declared",
            instance=m, multiplicity=mult, required=need)
    (a, b), eids = best
    return a, b, sorted(eids)[:need]


def _grid_in_place(m: ColoredMultigraph, t: int) -> list[int]:
    """Swap terminal ``t`` for a d x d white grid; returns the new grid edge ids.

    The d edges of ``t``, in ascending id order, keep their ids and move to
    the grid's first row.
    """
    eids = m.incident(t)
    d = len(eids)
    if d == 0:
        m.remove_vertex(t)
        return []
    ends = [(eid, m.edges[eid].other(t), m.edges[eid].cost) for eid in eids]
    m.remove_vertex(t)
    grid = [[m.add_vertex(Color.WHITE) for _ in range(d)] for _ in range(d)]
    made = []
    for i in range(d):
        for j in range(d):
            if j + 1 < d:
                made.append(m.add_edge(grid[i][j], grid[i][j + 1], 0))
            if i + 1 < d:
                made.append(m.add_edge(grid[i][j], grid[i + 1][j], 0))
    for j, (eid, x, cost) in enumerate(ends):
        m.add_edge(grid[0][j], x, cost, eid=eid)
    return made


def replace_dead_terminal_with_grid(g: ColoredMultigraph, t: int) -> ColoredMultigraph:
    """Copy of ``g`` with black ``t`` replaced by a white grid of side deg(t)."""
    if t not in g or not g.is_black(t):
        raise ValueError(f"{t} is not a black vertex")
    h = g.copy()
    _grid_in_place(h, t)
    return h


@dataclass
class _State:
    m: ColoredMultigraph
    groups: list[set[int]]
    lifter: _Lifter = field(default_factory=_Lifter)

    def live(self) -> list[set[int]]:
        return [grp for grp in self.groups if len(grp) >= 2]

    def pairs(self) -> list[tuple[int, int]]:
        return star_pairs(self.live())


def _fallback_merge(st: _State) -> tuple[int, int, int, tuple[int, int]] | None:
    """Merge two terminals through one white when no terminal edge exists.

    Picks the first white (ascending) and terminal pair around it whose
    merge, with the white removed, keeps every live group connected.
    """
    m = st.m
    for w in m.whites():
        nbs: dict[int, int] = {}
        for eid in m.incident(w):
            x = m.edges[eid].other(w)
            if m.is_black(x):
                nbs.setdefault(x, eid)
        blacks = sorted(nbs)
        for i, a in enumerate(blacks):
            for b in blacks[i + 1:]:
                trial = m.copy()
                trial.remove_vertex(w)
                _apply(trial, MergeVertices(a, b, min(a, b), None))
                survivor, gone = min(a, b), max(a, b)
                ok = all(is_connected_on(trial, [survivor if x == gone else x for x in grp])
                         for grp in st.live())
                if ok:
                    return w, a, b, (nbs[a], nbs[b])
    return None


def _merge(st: _State, a: int, b: int) -> int:
    survivor, gone = min(a, b), max(a, b)
    _apply(st.m, MergeVertices(a, b, survivor, None))
    ga = next(grp for grp in st.groups if a in grp)
    gb = next(grp for grp in st.groups if b in grp)
    if ga is not gb:
        ga |= gb
        st.groups.remove(gb)
    ga.discard(gone)
    ga.add(survivor)
    return survivor


def _planar_pack(g: ColoredMultigraph, groups, k: int, genus_c, forests: bool, verify: bool):
    from .oracle import is_planar
    from .packing import Packing, prune_to_forest

    norm = [tuple(sorted(set(t))) for t in groups if len(set(t)) >= 1]
    terminals = sorted(x for t in norm for x in t)
    if len(set(terminals)) != len(terminals):
        raise ValueError("terminal groups must be disjoint")
    for x in terminals:
        if x not in g:
            raise KeyError(f"terminal {x} not in graph")
    required_terms = sorted(x for t in norm if len(t) >= 2 for x in t)
    if not required_terms:
        raise ValueError("need a group with at least two terminals")
    h = g.recolored(terminals)
    for t in norm:
        if not is_connected_on(h, t):
            raise NoPackingError(f"group {t} is not connected")
    meta = {"merges": 0, "fallback_merges": 0, "grids": 0, "reductions": 0, "nonplanar_steps": 0}
    if verify and not is_planar(h):
        raise ValueError("input graph is not planar")
    need = heavy_pair_threshold(k, genus_c)
    st = _State(h.copy(), [set(t) for t in norm])

    for grp in [grp for grp in st.groups if len(grp) == 1]:
        (t,) = grp
        for e in _grid_in_place(st.m, t):
            st.lifter.direct[e] = frozenset()
        st.groups.remove(grp)
        meta["grids"] += 1

    subs: list[set[int]] | None = None
    reduce_next = True
    while True:
        if reduce_next:
            st.m = _reduce_layer(st.m, st.lifter, st.pairs())
            meta["reductions"] += 1
            reduce_next = False
        if verify and not is_planar(st.m):
            meta["nonplanar_steps"] += 1
        live = st.live()
        if not live:
            break
        if len(live) == 1 and len(live[0]) == 2:
            a, b = sorted(live[0])
            paths = element_connectivity(st.m, a, b).witness_edges
            if subs is None:
                subs = [set() for _ in paths]
            if len(paths) < len(subs):
                raise ThresholdViolation("too few disjoint paths for the final pair",
                                         instance=st.m, multiplicity=len(paths), required=len(subs))
            for j in range(len(subs)):
                subs[j] |= st.lifter.resolve(paths[j])
            break
        if subs is None:
            subs = [set() for _ in range(need)]
        try:
            a, b, chosen = find_heavy_terminal_pair(st.m, k, genus_c)
            for j, eid in enumerate(chosen):
                subs[j] |= st.lifter.resolve((eid,))
            meta["merges"] += 1
        except ThresholdViolation:
            if need != 1:
                raise
            pick = _fallback_merge(st)
            if pick is None:
                raise
            w, a, b, via = pick
            subs[0] |= st.lifter.resolve(via)
            st.m.remove_vertex(w)
            meta["fallback_merges"] += 1
        survivor = _merge(st, a, b)
        _normalize(st.m, st.lifter)
        grp = next(grp for grp in st.groups if survivor in grp)
        if len(grp) == 1:
            st.groups.remove(grp)
            if st.live():
                for e in _grid_in_place(st.m, survivor):
                    st.lifter.direct[e] = frozenset()
                meta["grids"] += 1
                reduce_next = True
    subs = subs or []
    out = [prune_to_forest(h, s, required_terms) for s in subs]
    kind = "forests" if forests else "trees"
    return Packing(out, [t for t in norm if len(t) >= 2], kind, meta)


def pack_planar_trees(g: ColoredMultigraph, terminals: Iterable[int], k: int,
                      genus_c: int | None = None, verify: bool = False):
    """Element-disjoint Steiner trees on a planar graph; whites end with degree 2."""
    ts = sorted(set(terminals))
    if len(ts) < 2:
        raise ValueError("need at least two terminals")
    return _planar_pack(g, [ts], k, genus_c, forests=False, verify=verify)


def pack_planar_forests(g: ColoredMultigraph, groups, k: int, genus_c: int | None = None,
                        verify: bool = False):
    """Element-disjoint Steiner forests on a planar graph, one per merge round."""
    return _planar_pack(g, groups, k, genus_c, forests=True, verify=verify)


def white_degrees_ok(g: ColoredMultigraph, eids: Iterable[int], terminals: Iterable[int]) -> bool:
    """Whether every non-terminal touched by ``eids`` has degree exactly 2 in it."""
    terminals = set(terminals)
    deg: Counter = Counter()
    for eid in eids:
        e = g.edges[eid]
        deg[e.u] += 1
        deg[e.v] += 1
    return all(d == 2 for x, d in deg.items() if x not in terminals)
