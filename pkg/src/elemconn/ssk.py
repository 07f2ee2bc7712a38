"""Single-sink k-vertex-connectivity by greedy min-cost augmentation.

Terminals are taken in a seeded random order. Each one buys the cheapest
set of k internally disjoint paths to the root or to terminals already
served, with previously bought edges priced at zero.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .connectivity import vertex_connectivity
from .errors import InfeasibleError, InternalConsistencyError
from .flow import FlowNetwork, decompose_into_paths, min_cost_flow_of_value
from .graph import ColoredMultigraph


@dataclass
class SskInstance:
    graph: ColoredMultigraph
    root: int
    terminals: tuple[int, ...]
    k: int

    def __post_init__(self):
        self.terminals = tuple(sorted(set(self.terminals)))
        if self.root not in self.graph:
            raise KeyError(f"root {self.root} not in graph")
        if self.root in self.terminals:
            raise ValueError("the root cannot be a terminal")
        for t in self.terminals:
            if t not in self.graph:
                raise KeyError(f"terminal {t} not in graph")
        if self.k < 1:
            raise ValueError("k must be positive")
        if any(e.cost < 0 for e in self.graph.edges.values()):
            raise ValueError("edge costs must be non-negative")

    def check_feasible(self) -> None:
        short = verify_ssk_feasible(self.graph.edges, self).failures
        if short:
            t, val = short[0]
            raise InfeasibleError(f"terminal {t} has only {val} disjoint paths to the root, need {self.k}")


@dataclass
class Augmentation:
    terminal: int
    paths: list[list[int]]  # vertex sequences from the terminal
    path_edges: list[list[int]]
    cost: Fraction

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for p in self.path_edges for e in p)


@dataclass
class SskReport:
    values: dict[int, int]
    k: int

    @property
    def failures(self) -> list[tuple[int, int]]:
        return [(t, v) for t, v in sorted(self.values.items()) if v < self.k]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class SskResult:
    edges: frozenset[int]
    cost: Fraction
    step_costs: list[Fraction]
    order: list[int]
    augmentations: list[Augmentation] = field(default_factory=list)


_SINK = ("sink",)


def _augmentation_network(inst: SskInstance, t: int, served: set[int], bought: set[int]) -> FlowNetwork:
    g, r = inst.graph, inst.root
    net = FlowNetwork()

    def enter(x):
        return ("in", x) if x not in (t, r) else x

    def leave(x):
        return ("out", x) if x not in (t, r) else x

    for x in g.vertices:
        if x in (t, r):
            continue
        if x in served:
            # one unit through the terminal, either passing on or stopping here
            net.add_arc(("in", x), ("mid", x), 1)
            net.add_arc(("mid", x), ("out", x), 1)
            net.add_arc(("mid", x), _SINK, 1)
        else:
            net.add_arc(("in", x), ("out", x), 1)
    net.add_arc(r, _SINK, inst.k)
    for eid in sorted(g.edges):
        e = g.edges[eid]
        cost = 0 if eid in bought else e.cost
        for a, b in ((e.u, e.v), (e.v, e.u)):
            if b == t or a == r:
                continue
            net.add_arc(leave(a), enter(b), 1, cost, tag=(eid, a, b))
    net.add_node(t)
    return net


def min_cost_augmentation(inst: SskInstance, t: int, served: Iterable[int],
                          bought: Iterable[int] = ()) -> Augmentation | None:
    """Cheapest k internally disjoint paths from ``t`` to the root or ``served``.

    Each served terminal ends at most one path and is then used by no other.
    Edges in ``bought`` cost nothing. Returns None when no such paths exist.
    """
    served = set(served)
    if t in served or t == inst.root:
        raise ValueError("the terminal must be new and not the root")
    net = _augmentation_network(inst, t, served, set(bought))
    f = min_cost_flow_of_value(net, t, _SINK, inst.k)
    if f is None:
        return None
    paths, path_edges = [], []
    for arcs in decompose_into_paths(net, f, t, _SINK):
        verts, eids = [t], []
        for i in arcs:
            tag = net.arcs[i].tag
            if tag is not None:
                eids.append(tag[0])
                verts.append(tag[2])
        paths.append(verts)
        path_edges.append(eids)
    return Augmentation(t, paths, path_edges, f.cost)


def augmentation_problems(inst: SskInstance, aug: Augmentation, served: Iterable[int]) -> list[str]:
    """Ways ``aug`` breaks the augmentation rules (empty when it is valid)."""
    served = set(served)
    out = []
    if len(aug.paths) != inst.k:
        out.append(f"{len(aug.paths)} paths instead of {inst.k}")
    inner_seen: set[int] = set()
    ends = []
    for verts in aug.paths:
        if verts[0] != aug.terminal:
            out.append(f"path {verts} does not start at the terminal")
        end = verts[-1]
        if end != inst.root and end not in served:
            out.append(f"path {verts} ends outside the root and served terminals")
        if end != inst.root:
            ends.append(end)
        inner = verts[1:-1]
        if inst.root in inner or len(set(inner)) != len(inner):
            out.append(f"path {verts} is not simple or passes the root")
        if inner_seen & set(inner):
            out.append(f"paths share internal vertices {sorted(inner_seen & set(inner))}")
        inner_seen |= set(inner)
    if len(set(ends)) != len(ends):
        out.append("a served terminal ends two paths")
    if inner_seen & set(ends):
        out.append("a served terminal is both an endpoint and internal")
    for verts, eids in zip(aug.paths, aug.path_edges):
        for a, b, eid in zip(verts, verts[1:], eids):
            e = inst.graph.edges.get(eid)
            if e is None or {e.u, e.v} != {a, b}:
                out.append(f"edge {eid} does not join {a} and {b}")
    return out


def verify_ssk_feasible(edges: Iterable[int], inst: SskInstance) -> SskReport:
    """Disjoint-path count from every terminal to the root inside ``edges`` (capped at k)."""
    h = inst.graph.with_edges(edges)
    return SskReport({t: vertex_connectivity(h, t, inst.root, limit=inst.k) for t in inst.terminals}, inst.k)


def greedy_ssk(inst: SskInstance, seed=0, check: bool = False) -> SskResult:
    """Serve terminals in a seeded random order with min-cost augmentations.

    With ``check`` every step re-verifies feasibility for the terminals
    served so far and the structure of its augmentation.
    """
    inst.check_feasible()
    order = list(inst.terminals)
    random.Random(f"ssk:{seed}").shuffle(order)
    bought: set[int] = set()
    served: list[int] = []
    steps: list[Fraction] = []
    augs: list[Augmentation] = []
    for t in order:
        aug = min_cost_augmentation(inst, t, served, bought)
        if aug is None:
            raise InfeasibleError(f"no augmentation for terminal {t}")
        if check:
            bad = augmentation_problems(inst, aug, served)
            if bad:
                raise InternalConsistencyError(f"augmentation for {t}: {bad[0]}")
        bought |= aug.edges
        served.append(t)
        steps.append(aug.cost)
        augs.append(aug)
        if check:
            partial = SskInstance(inst.graph, inst.root, tuple(served), inst.k)
            rep = verify_ssk_feasible(bought, partial)
            if not rep:
                raise InternalConsistencyError(f"partial solution infeasible after {t}: {rep.failures}")
    total = sum((inst.graph.edges[e].cost for e in bought), Fraction(0))
    if total != sum(steps, Fraction(0)):
        raise InternalConsistencyError("total cost differs from the sum of step costs")
    return SskResult(frozenset(bought), total, steps, order, augs)
