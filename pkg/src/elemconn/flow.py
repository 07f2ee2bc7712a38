"""Integral max-flow, min-cost flow and path decomposition.

Capacities and flows are integers and costs are ``Fraction`` values, so
every comparison is exact. Max-flow uses BFS augmenting paths; min-cost
flow uses successive shortest paths with Bellman-Ford on the residual
network. Both are meant for desk-scale networks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable


_ZERO = Fraction(0)


@dataclass(frozen=True)
class Arc:
    tail: Hashable
    head: Hashable
    capacity: int
    cost: Fraction = Fraction(0)
    tag: Any = None


class FlowNetwork:
    def __init__(self):
        self.nodes: set = set()
        self.arcs: list[Arc] = []
        self._out: dict = {}
        self._in: dict = {}

    def add_node(self, n) -> None:
        if n not in self.nodes:
            self.nodes.add(n)
            self._out[n] = []
            self._in[n] = []

    def add_arc(self, tail, head, capacity: int, cost=0, tag=None) -> int:
        if tail == head:
            raise ValueError(f"arc from {tail!r} to itself")
        if int(capacity) != capacity or capacity < 0:
            raise ValueError(f"capacity must be a non-negative integer, got {capacity!r}")
        if cost:
            cost = Fraction(cost)
            if cost < 0:
                raise ValueError("arc costs must be non-negative")
        else:
            cost = _ZERO
        self.add_node(tail)
        self.add_node(head)
        idx = len(self.arcs)
        self.arcs.append(Arc(tail, head, int(capacity), cost, tag))
        self._out[tail].append(idx)
        self._in[head].append(idx)
        return idx

    def out_arcs(self, n) -> list[int]:
        return self._out[n]

    def in_arcs(self, n) -> list[int]:
        return self._in[n]


@dataclass
class FlowAssignment:
    flow: list[int]
    value: int
    cost: Fraction
    source_side: frozenset = frozenset()

    def support(self) -> list[int]:
        return [i for i, f in enumerate(self.flow) if f > 0]


def _check_terminals(n: FlowNetwork, s, t) -> None:
    if s not in n.nodes or t not in n.nodes:
        raise KeyError(f"source {s!r} or sink {t!r} not in network")
    if s == t:
        raise ValueError("source and sink must differ")


def _residual_steps(n: FlowNetwork, flow: list[int], x):
    """Yield (arc index, direction, next node) for residual moves out of x."""
    for i in n._out[x]:
        if flow[i] < n.arcs[i].capacity:
            yield i, 1, n.arcs[i].head
    for i in n._in[x]:
        if flow[i] > 0:
            yield i, -1, n.arcs[i].tail


def _reachable(n: FlowNetwork, flow: list[int], s) -> frozenset:
    seen = {s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for _, _, y in _residual_steps(n, flow, x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def max_flow(n: FlowNetwork, s, t, limit: int | None = None) -> FlowAssignment:
    """Maximum integral s-t flow.

    With ``limit`` the search stops once the value reaches it; the returned
    ``source_side`` is then only a cut when the value is below ``limit``.
    """
    _check_terminals(n, s, t)
    flow = [0] * len(n.arcs)
    value = 0
    while limit is None or value < limit:
        pred = {s: None}
        queue = deque([s])
        while queue and t not in pred:
            x = queue.popleft()
            for i, d, y in _residual_steps(n, flow, x):
                if y not in pred:
                    pred[y] = (x, i, d)
                    queue.append(y)
        if t not in pred:
            break
        path = []
        y = t
        while pred[y] is not None:
            x, i, d = pred[y]
            path.append((i, d))
            y = x
        push = min(n.arcs[i].capacity - flow[i] if d > 0 else flow[i] for i, d in path)
        if limit is not None:
            push = min(push, limit - value)
        for i, d in path:
            flow[i] += d * push
        value += push
    cost = sum((n.arcs[i].cost * f for i, f in enumerate(flow) if f), Fraction(0))
    return FlowAssignment(flow, value, cost, _reachable(n, flow, s))


def min_cost_flow_of_value(n: FlowNetwork, s, t, value: int) -> FlowAssignment | None:
    """Cheapest integral flow of exactly ``value`` units, or None if none exists."""
    if value < 0:
        raise ValueError("flow value must be non-negative")
    _check_terminals(n, s, t)
    flow = [0] * len(n.arcs)
    sent = 0
    while sent < value:
        # Bellman-Ford with a FIFO queue; the residual network has no
        # negative cycles because every intermediate flow is cost-optimal.
        dist = {s: Fraction(0)}
        pred = {s: None}
        queue = deque([s])
        queued = {s}
        while queue:
            x = queue.popleft()
            queued.discard(x)
            for i, d, y in _residual_steps(n, flow, x):
                nd = dist[x] + d * n.arcs[i].cost
                if y not in dist or nd < dist[y]:
                    dist[y] = nd
                    pred[y] = (x, i, d)
                    if y not in queued:
                        queued.add(y)
                        queue.append(y)
        if t not in dist:
            return None
        path = []
        y = t
        while pred[y] is not None:
            x, i, d = pred[y]
            path.append((i, d))
            y = x
        push = min(n.arcs[i].capacity - flow[i] if d > 0 else flow[i] for i, d in path)
        push = min(push, value - sent)
        for i, d in path:
            flow[i] += d * push
        sent += push
    cost = sum((n.arcs[i].cost * f for i, f in enumerate(flow) if f), Fraction(0))
    return FlowAssignment(flow, sent, cost, _reachable(n, flow, s))


def decompose_into_paths(n: FlowNetwork, f: FlowAssignment, s, t) -> list[list[int]]:
    """Split a flow into ``f.value`` unit s-t paths given as arc-index lists.

    Flow cycles met along the way are cancelled and dropped.
    """
    _check_terminals(n, s, t)
    if len(f.flow) != len(n.arcs):
        raise ValueError("flow does not match network")
    rest = list(f.flow)
    for i, x in enumerate(rest):
        if x < 0 or x > n.arcs[i].capacity:
            raise ValueError(f"flow on arc {i} outside [0, capacity]")
    for x in n.nodes:
        if x in (s, t):
            continue
        if sum(rest[i] for i in n._in[x]) != sum(rest[i] for i in n._out[x]):
            raise ValueError(f"flow not conserved at {x!r}")
    net = sum(rest[i] for i in n._out[s]) - sum(rest[i] for i in n._in[s])
    if net != f.value:
        raise ValueError(f"flow value {f.value} does not match net outflow {net}")

    paths = []
    for _ in range(f.value):
        walk: list[int] = []
        pos = {s: 0}
        x = s
        while x != t:
            nxt = next((i for i in n._out[x] if rest[i] > 0), None)
            if nxt is None:
                raise ValueError(f"flow stalls at {x!r}")
            walk.append(nxt)
            y = n.arcs[nxt].head
            if y in pos:
                # cancel the cycle y -> ... -> x -> y
                cycle = walk[pos[y]:]
                for i in cycle:
                    rest[i] -= 1
                del walk[pos[y]:]
                for i in cycle:
                    pos.pop(n.arcs[i].head, None)
                pos[y] = len(walk)
            else:
                pos[y] = len(walk)
            x = y
        for i in walk:
            rest[i] -= 1
        paths.append(walk)
    return paths
