"""Brute-force ground truth and certificate validators.

Nothing here uses the flow gadgets for the quantity being checked: the
connectivity oracles enumerate vertex subsets, and the validators work with
plain set computations. They are exponential and capped by size.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable

from .errors import InfeasibleError, SizeLimitError
from .graph import ColoredMultigraph

BRUTE_KAPPA_MAX_VERTICES = 16
BRUTE_SSK_MAX_EDGES = 22


def _adjacency(g: ColoredMultigraph) -> dict[int, set[int]]:
    adj = {x: set() for x in g.vertices}
    for e in g.edges.values():
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    return adj


def _reaches(adj, a: int, b: int, removed: set[int]) -> bool:
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            return True
        for y in adj[x]:
            if y not in seen and y not in removed:
                seen.add(y)
                stack.append(y)
    return False


def brute_element_connectivity(g: ColoredMultigraph, u: int, v: int) -> int:
    """Smallest white set whose removal separates ``u`` from ``v``.

    Black-black edges count as one extra white each (their subdivision
    vertex), so they are tallied directly instead of building the
    subdivided graph.
    """
    if len(g.vertices) > BRUTE_KAPPA_MAX_VERTICES:
        raise SizeLimitError(f"brute-force connectivity capped at {BRUTE_KAPPA_MAX_VERTICES} vertices")
    if u == v or not (g.is_black(u) and g.is_black(v)):
        raise ValueError("need two distinct black vertices")
    # vertices of the subdivided graph: originals plus one token per black-black edge
    adj: dict[Any, set] = {x: set() for x in g.vertices}
    whites: list[Any] = list(g.whites())
    for eid, e in g.edges.items():
        if g.is_black(e.u) and g.is_black(e.v):
            s = ("sub", eid)
            adj[s] = {e.u, e.v}
            adj[e.u].add(s)
            adj[e.v].add(s)
            whites.append(s)
        else:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
    for size in range(len(whites) + 1):
        for cut in combinations(whites, size):
            if not _reaches(adj, u, v, set(cut)):
                return size
    raise AssertionError("removing every white always separates two blacks")


def brute_vertex_connectivity(g: ColoredMultigraph, u: int, v: int) -> int:
    """Direct u-v edge copies plus a minimum vertex cut of the rest."""
    if len(g.vertices) > BRUTE_KAPPA_MAX_VERTICES:
        raise SizeLimitError(f"brute-force connectivity capped at {BRUTE_KAPPA_MAX_VERTICES} vertices")
    direct = len(g.edges_between(u, v))
    adj = _adjacency(g)
    adj[u].discard(v)
    adj[v].discard(u)
    inner = [x for x in g.vertices if x not in (u, v)]
    for size in range(len(inner) + 1):
        for cut in combinations(inner, size):
            if not _reaches(adj, u, v, set(cut)):
                return direct + size
    raise AssertionError("unreachable")


# reports -------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    invariant: str
    index: int | None
    witness: Any


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, invariant: str, index, witness) -> None:
        self.violations.append(Violation(invariant, index, witness))

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        if self.passed:
            return "pass"
        return "; ".join(f"{v.invariant} [{v.index}]: {v.witness}" for v in self.violations)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def validate_packing(g: ColoredMultigraph, groups: Iterable[Iterable[int]], packing,
                     upper_bound: bool = True) -> ValidationReport:
    """Check a tree or forest packing against ``g``.

    ``packing`` needs ``subgraphs`` (edge-id sets) and ``kind``. Vertices in
    no group count as Steiner vertices whatever their color in ``g``. With
    ``upper_bound`` the count is compared to the smallest element
    connectivity inside any group (computed by brute force when small).
    """
    groups = [sorted(set(t)) for t in groups]
    terminals = {x for t in groups for x in t}
    rep = ValidationReport()
    white_owner: dict[int, int] = {}
    edge_owner: dict[int, int] = {}
    for i, sub in enumerate(packing.subgraphs):
        sub = set(sub)
        missing = sorted(e for e in sub if e not in g.edges)
        if missing:
            rep.add("edge-exists", i, missing[0])
            continue
        uf = _UnionFind()
        touched = set()
        for eid in sorted(sub):
            e = g.edges[eid]
            touched.update((e.u, e.v))
            if not uf.union(e.u, e.v):
                rep.add("acyclic", i, eid)
            if eid in edge_owner:
                rep.add("edge-disjoint", i, (eid, edge_owner[eid]))
            edge_owner[eid] = i
        for x in sorted(touched):
            if x not in terminals:
                if x in white_owner:
                    rep.add("white-disjoint", i, (x, white_owner[x]))
                white_owner[x] = i
        for t in groups:
            if len(t) < 2:
                continue
            roots = {uf.find(x) for x in t}
            if len(roots) != 1:
                rep.add("group-connected", i, tuple(t))
        if packing.kind == "trees" and sub:
            roots = {uf.find(x) for x in touched}
            if len(roots) != 1:
                rep.add("single-tree", i, len(roots))
    if upper_bound:
        # vertices outside every group act as white for the bound
        g = g.recolored(terminals)
        bound = None
        for t in groups:
            for a, b in combinations(t, 2):
                if len(g.vertices) <= BRUTE_KAPPA_MAX_VERTICES:
                    val = brute_element_connectivity(g, a, b)
                else:
                    from .connectivity import element_connectivity_value
                    val = element_connectivity_value(g, a, b)
                bound = val if bound is None else min(bound, val)
        if bound is not None and len(packing.subgraphs) > bound:
            rep.add("upper-bound", None, (len(packing.subgraphs), bound))
    return rep


def validate_spider_decomposition(g: ColoredMultigraph, blacks: Iterable[int], k: int,
                                  sd) -> ValidationReport:
    """Check the three spider conditions plus disjointness and edge existence."""
    blacks = set(blacks)
    rep = ValidationReport()
    feet_count: dict[int, int] = defaultdict(int)
    white_owner: dict[int, int] = {}
    edge_owner: dict[int, int] = {}
    for i, sp in enumerate(sd.spiders):
        if len(sp.legs) != len(sp.feet) or len(sp.legs) != len(sp.leg_edges):
            rep.add("shape", i, "legs, leg edges and feet differ in number")
            continue
        if len(set(sp.feet)) != len(sp.feet):
            rep.add("distinct-feet", i, sorted(sp.feet))
        vertices = {sp.head}
        for leg, eids, foot in zip(sp.legs, sp.leg_edges, sp.feet):
            if not leg or leg[0] != sp.head or leg[-1] != foot or len(eids) != len(leg) - 1:
                rep.add("leg-shape", i, tuple(leg))
                continue
            if foot not in blacks:
                rep.add("foot-black", i, foot)
            for a, b, eid in zip(leg, leg[1:], eids):
                e = g.edges.get(eid)
                if e is None or {e.u, e.v} != {a, b}:
                    rep.add("edge-exists", i, eid)
                if eid in edge_owner:
                    rep.add("edge-disjoint", i, (eid, edge_owner[eid]))
                edge_owner[eid] = i
            for x in leg[1:-1]:
                if x in blacks:
                    rep.add("intermediate-white", i, x)
                if x in vertices:
                    rep.add("single-head", i, x)
                vertices.add(x)
            if foot in vertices:
                rep.add("single-head", i, foot)
            vertices.add(foot)
            feet_count[foot] += 1
        for x in vertices:
            if x not in blacks:
                if x in white_owner:
                    rep.add("white-disjoint", i, (x, white_owner[x]))
                white_owner[x] = i
        if sp.head not in blacks and len(sp.feet) < 2:
            rep.add("white-head-two-feet", i, sp.head)
    for b in sorted(blacks):
        if feet_count.get(b, 0) != k:
            rep.add("foot-count", None, (b, feet_count.get(b, 0)))
    return rep


# single-sink k-vertex-connectivity ----------------------------------------

def _ssk_feasible(g: ColoredMultigraph, eids, root, terminals, k) -> bool:
    from .connectivity import vertex_connectivity
    h = g.with_edges(eids)
    return all(vertex_connectivity(h, t, root, limit=k) >= k for t in terminals)


def brute_ssk_opt(inst) -> tuple[Fraction, frozenset[int]]:
    """Cheapest edge set giving every terminal ``k`` disjoint paths to the root.

    Branch and bound over edges in decreasing cost order: an edge is first
    dropped (if the remaining edges stay feasible), then kept.
    """
    g = inst.graph
    if len(g.edges) > BRUTE_SSK_MAX_EDGES:
        raise SizeLimitError(f"brute-force optimum capped at {BRUTE_SSK_MAX_EDGES} edges")
    order = sorted(g.edges, key=lambda e: (-g.edges[e].cost, e))
    all_edges = frozenset(order)
    if not _ssk_feasible(g, all_edges, inst.root, inst.terminals, inst.k):
        raise InfeasibleError("the full graph does not meet the requirement")
    best = [sum((g.edges[e].cost for e in all_edges), Fraction(0)), all_edges]

    def search(i: int, chosen: frozenset, cost: Fraction):
        if cost >= best[0] and i < len(order):
            # nothing cheaper below; equal cost keeps the first optimum found
            return
        if i == len(order):
            if cost < best[0]:
                best[0], best[1] = cost, chosen
            return
        e = order[i]
        rest = chosen | frozenset(order[i + 1:])
        if _ssk_feasible(g, rest, inst.root, inst.terminals, inst.k):
            search(i + 1, chosen, cost)
        search(i + 1, chosen | {e}, cost + g.edges[e].cost)

    search(0, frozenset(), Fraction(0))
    return best[0], best[1]


def is_planar(g: ColoredMultigraph) -> bool:
    import networkx as nx
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(e.key for e in g.edges.values())
    return nx.check_planarity(h)[0]
