"""Delete-or-contract reduction of white-white edges.

For every white-white edge, deleting it or contracting it leaves all the
pairwise element-connectivities of the black vertices unchanged; at least
one of the two always works. Repeating this until no white-white edge
remains gives a bipartite minor of the input with the same connectivity
table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .connectivity import element_connectivity
from .errors import InternalConsistencyError
from .graph import (ColoredMultigraph, ContractEdge, DeleteEdge, MinorTrace,
                    SubdivideEdge, _apply, subdivide_terminal_edges)

Pair = tuple[int, int]


class Decision(str, Enum):
    DELETE = "delete"
    CONTRACT = "contract"


def _all_black_pairs(g: ColoredMultigraph) -> list[Pair]:
    b = g.blacks()
    return [(x, y) for i, x in enumerate(b) for y in b[i + 1:]]


def star_pairs(groups) -> list[Pair]:
    """Pairs joining the smallest terminal of each group to the rest of it.

    Keeping these pairs' connectivity keeps every group's connectivity,
    since any pair is at least as connected as the weaker of its two pairs
    through the hub.
    """
    out = []
    for t in groups:
        t = sorted(set(t))
        out += [(t[0], x) for x in t[1:]]
    return out


class _WitnessCache:
    """Edges and vertices used by a known maximum flow for each pair.

    Deleting an edge no cached flow uses cannot lower that pair's value, so
    most pairs skip the flow computation during classification.
    """

    def __init__(self):
        self._paths: dict[Pair, tuple[frozenset, frozenset]] = {}

    def store(self, pair: Pair, res) -> None:
        edges = frozenset(e for p in res.witness_edges for e in p)
        verts = frozenset(x for p in res.witness_paths for x in p)
        self._paths[pair] = (edges, verts)

    def uses_edge(self, pair: Pair, e: int) -> bool:
        hit = self._paths.get(pair)
        return hit is None or e in hit[0]

    def drop_touching(self, vertices: set[int]) -> None:
        for pair in [p for p, (_, vs) in self._paths.items() if vs & vertices]:
            del self._paths[pair]


def classify_edge(g: ColoredMultigraph, e: int, baseline: dict[Pair, int],
                  cache: _WitnessCache | None = None) -> Decision:
    """DELETE when removing ``e`` keeps every baseline value, else CONTRACT."""
    edge = g.edges[e]
    if not (g.is_white(edge.u) and g.is_white(edge.v)):
        raise ValueError(f"edge {e} is not a white-white edge")
    for pair in sorted(baseline):
        if cache is not None and not cache.uses_edge(pair, e):
            continue
        res = element_connectivity(g, *pair, limit=baseline[pair], skip_edges={e},
                                   paths=cache is not None)
        if res.value < baseline[pair]:
            return Decision.CONTRACT
        if cache is not None:
            cache.store(pair, res)
    return Decision.DELETE


@dataclass
class ReductionResult:
    source: ColoredMultigraph
    reduced: ColoredMultigraph
    trace: MinorTrace
    decisions: list[tuple[int, Decision]]
    pairs: list[Pair]
    _baseline: dict[Pair, int] | None = None
    _clusters: tuple | None = field(default=None, repr=False)

    @property
    def baseline(self) -> dict[Pair, int]:
        if self._baseline is None:
            self._baseline = {p: element_connectivity(self.source, *p, paths=False).value
                              for p in self.pairs}
        return self._baseline

    def _cluster_index(self):
        if self._clusters is None:
            parent: dict[int, int] = {}

            def find(x):
                while parent.get(x, x) != x:
                    parent[x] = parent.get(parent[x], parent[x])
                    x = parent[x]
                return x

            tree_edges = []
            for rec in self.trace.records:
                if isinstance(rec, ContractEdge):
                    e = self.source.edges[rec.edge]
                    tree_edges.append((rec.edge, e.u, e.v))
                    parent[find(e.u)] = find(e.v)
            member = {x: find(x) for _, a, b in tree_edges for x in (a, b)}
            by_root: dict[int, list] = {}
            for eid, a, b in tree_edges:
                by_root.setdefault(member[a], []).append((eid, a, b))
            subdiv = {}
            for rec in self.trace.records:
                if isinstance(rec, SubdivideEdge):
                    for h in rec.halves:
                        subdiv[h] = rec
            self._clusters = (member, by_root, subdiv)
        return self._clusters

    def lift_edges(self, eids: Iterable[int]) -> frozenset[int]:
        """Map an edge set of the reduced graph back to edges of the source.

        Halves of a subdivided terminal edge map to that edge when both are
        present and are dropped otherwise; every contracted white cluster
        touched by the set contributes the smallest subtree of its
        contraction tree joining the touched vertices.
        """
        member, by_root, subdiv = self._cluster_index()
        ids = set(eids)
        lifted: set[int] = set()
        for eid in ids:
            rec = subdiv.get(eid)
            if rec is None:
                lifted.add(eid)
            elif all(h in ids for h in rec.halves):
                lifted.add(rec.edge)
        touched: dict[int, set[int]] = {}
        for eid in lifted:
            e = self.source.edges[eid]
            for x in (e.u, e.v):
                if x in member:
                    touched.setdefault(member[x], set()).add(x)
        for root, keep in touched.items():
            if len(keep) < 2:
                continue
            lifted |= _steiner_subtree(by_root[root], keep)
        return frozenset(lifted)


def _steiner_subtree(tree_edges, keep: set[int]) -> set[int]:
    """Edges of the minimal subtree of a tree that spans ``keep``."""
    adj: dict[int, dict[int, int]] = {}
    for eid, a, b in tree_edges:
        adj.setdefault(a, {})[b] = eid
        adj.setdefault(b, {})[a] = eid
    leaves = [x for x, nb in adj.items() if len(nb) == 1 and x not in keep]
    while leaves:
        x = leaves.pop()
        if x not in adj or len(adj[x]) != 1:
            continue
        (y,) = adj[x]
        del adj[y][x]
        del adj[x]
        if len(adj[y]) == 1 and y not in keep:
            leaves.append(y)
    return {eid for a, nb in adj.items() for b, eid in nb.items() if a < b}


def _check_preserved(h: ColoredMultigraph, baseline: dict[Pair, int], step) -> None:
    for pair, want in baseline.items():
        got = element_connectivity(h, *pair, paths=False).value
        if got != want:
            raise InternalConsistencyError(
                f"step {step}: connectivity of {pair} changed from {want} to {got}")


def reduce_to_bipartite(g: ColoredMultigraph, verify: bool = False,
                        pairs: Iterable[Pair] | None = None) -> ReductionResult:
    """Remove every white-white edge by deletion or contraction.

    ``pairs`` restricts which black pairs must keep their connectivity
    (default: all of them). With ``verify`` the whole table is recomputed
    after every step.
    """
    pairs = sorted({(min(p), max(p)) for p in pairs}) if pairs is not None else _all_black_pairs(g)
    h, trace = subdivide_terminal_edges(g)
    result = ReductionResult(g, h, trace, [], pairs)
    if not h.white_white_edges() and not verify:
        return result

    cache = _WitnessCache()
    baseline = {}
    for p in pairs:
        res = element_connectivity(h, *p)
        baseline[p] = res.value
        cache.store(p, res)
    result._baseline = baseline

    step = 0
    while True:
        ww = h.white_white_edges()
        if not ww:
            break
        e = ww[0]
        decision = classify_edge(h, e, baseline, cache)
        if decision is Decision.DELETE:
            rec = DeleteEdge(e)
        else:
            edge = h.edges[e]
            rec = ContractEdge(e, min(edge.u, edge.v), max(edge.u, edge.v))
            cache.drop_touching({edge.u, edge.v})
        _apply(h, rec)
        trace.record(rec)
        result.decisions.append((e, decision))
        step += 1
        if verify:
            _check_preserved(h, baseline, step)
    return result
