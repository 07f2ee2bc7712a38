"""Seeded instance generators, including the classic counterexample graphs.

Every generator returns an :class:`Instance`. For the structured kinds
``k`` is the connectivity the construction guarantees; for random kinds it
is measured after generation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .connectivity import set_element_connectivity
from .graph import Color, ColoredMultigraph
from .treewidth import TreeDecomposition


@dataclass
class Instance:
    graph: ColoredMultigraph
    groups: list[tuple[int, ...]]
    k: int
    td: TreeDecomposition | None = None
    meta: dict = field(default_factory=dict)

    @property
    def terminals(self) -> list[int]:
        return sorted(x for t in self.groups for x in t)


def _add_h(g: ColoredMultigraph, k: int, group: int | None) -> tuple[int, int]:
    """Two blacks joined through ``k`` private whites; returns the blacks."""
    x = g.add_vertex(Color.BLACK, group)
    y = g.add_vertex(Color.BLACK, group)
    for _ in range(k):
        w = g.add_vertex(Color.WHITE)
        g.add_edge(x, w)
        g.add_edge(w, y)
    return x, y


def hk(k: int) -> Instance:
    """Gadget with blacks 0 and 1 and ``k`` whites adjacent to both."""
    if k < 1:
        raise ValueError("k must be positive")
    g = ColoredMultigraph()
    x, y = _add_h(g, k, 0)
    return Instance(g, [(x, y)], k)


def gk(k: int) -> Instance:
    """``k`` white paths of length k+1 between s and t, with a gadget on every white-white edge.

    Groups are {s, t} plus the two blacks of each inserted gadget.
    """
    if k < 1:
        raise ValueError("k must be positive")
    g = ColoredMultigraph()
    s = g.add_vertex(Color.BLACK, 0)
    t = g.add_vertex(Color.BLACK, 0)
    groups = [(s, t)]
    for _ in range(k):
        path = [g.add_vertex(Color.WHITE) for _ in range(k)]
        g.add_edge(s, path[0])
        for p, q in zip(path, path[1:]):
            x, y = _add_h(g, k, len(groups))
            groups.append((x, y))
            g.add_edge(p, x)
            g.add_edge(y, q)
        g.add_edge(path[-1], t)
    return Instance(g, groups, k)


def k3k(k: int) -> Instance:
    """Complete bipartite graph between 3 blacks and ``k`` whites."""
    g = ColoredMultigraph()
    ts = [g.add_vertex(Color.BLACK, 0) for _ in range(3)]
    for _ in range(k):
        w = g.add_vertex(Color.WHITE)
        for t in ts:
            g.add_edge(t, w)
    return Instance(g, [tuple(ts)], k)


def tw_chain(m: int, k: int) -> Instance:
    """Chain of 2-terminal groups joined by columns of ``k`` degree-4 whites.

    Comes with a width-4 tree decomposition.
    """
    if m < 2 or k < 1:
        raise ValueError("need m >= 2 and k >= 1")
    g = ColoredMultigraph()
    groups = [(g.add_vertex(Color.BLACK, i), g.add_vertex(Color.BLACK, i)) for i in range(m)]
    bags: dict[int, frozenset[int]] = {}
    tree: list[tuple[int, int]] = []
    for i in range(m - 1):
        hub = len(bags)
        bags[hub] = frozenset(groups[i] + groups[i + 1])
        if i:
            tree.append((hub - k - 1, hub))
        for _ in range(k):
            w = g.add_vertex(Color.WHITE)
            for b in groups[i] + groups[i + 1]:
                g.add_edge(b, w)
            bag = len(bags)
            bags[bag] = bags[hub] | {w}
            tree.append((hub, bag))
    return Instance(g, groups, k, TreeDecomposition(bags, tree))


def random_graph(n: int, p: float, terminals: int, seed=0, groups: int = 1) -> Instance:
    """G(n, p) with ``terminals`` random blacks split round-robin into groups."""
    rng = random.Random(f"random:{seed}")
    if not 2 <= terminals <= n:
        raise ValueError("need 2 <= terminals <= n")
    chosen = sorted(rng.sample(range(n), terminals))
    label = {x: i % groups for i, x in enumerate(chosen)}
    g = ColoredMultigraph()
    for v in range(n):
        if v in label:
            g.add_vertex(Color.BLACK, label[v], vid=v)
        else:
            g.add_vertex(Color.WHITE, vid=v)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    grouped = [tuple(x for x in chosen if label[x] == j) for j in range(groups)]
    return _measured(g, grouped)


def _measured(g: ColoredMultigraph, groups, td=None, **meta) -> Instance:
    groups = [t for t in groups if len(t) >= 1]
    values = [set_element_connectivity(g, t) for t in groups if len(t) >= 2]
    return Instance(g, groups, min(values) if values else 0, td, meta)


def random_planar(n: int, terminals: int, seed=0, keep: float = 1.0) -> Instance:
    """Stacked triangulation on ``n`` vertices, each edge kept with prob ``keep``."""
    if n < 3:
        raise ValueError("need n >= 3")
    rng = random.Random(f"random-planar:{seed}")
    pairs = {(0, 1), (1, 2), (0, 2)}
    faces = [(0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        pairs |= {(a, v), (b, v), (c, v)}
        faces += [(a, b, v), (b, c, v), (a, c, v)]
    chosen = set(rng.sample(range(n), terminals))
    g = ColoredMultigraph()
    for v in range(n):
        g.add_vertex(Color.BLACK if v in chosen else Color.WHITE, 0 if v in chosen else None, vid=v)
    for u, v in sorted(pairs):
        if rng.random() < keep:
            g.add_edge(u, v)
    return _measured(g, [tuple(sorted(chosen))])


def planar_wheel(terminals: int, k: int, seed=0) -> Instance:
    """Terminals on a rim joined by bundles of white paths, plus a white hub.

    Consecutive rim terminals get ``k // 2`` paths with one or two whites
    (chosen at random); the hub touches every terminal when ``k`` is odd.
    Every pair of terminals is then ``k``-element-connected.
    """
    if terminals < 2 or k < 1:
        raise ValueError("need at least 2 terminals and k >= 1")
    rng = random.Random(f"planar-wheel:{seed}")
    g = ColoredMultigraph()
    ts = [g.add_vertex(Color.BLACK, 0) for _ in range(terminals)]
    half = k // 2
    rim = range(terminals) if terminals > 2 else range(1)
    # with two terminals both bundles join the same pair
    bundles = half if terminals > 2 else 2 * half
    for i in rim:
        a, b = ts[i], ts[(i + 1) % terminals]
        for _ in range(bundles):
            prev = a
            for _ in range(rng.choice((1, 2))):
                w = g.add_vertex(Color.WHITE)
                g.add_edge(prev, w)
                prev = w
            g.add_edge(prev, b)
    if k % 2:
        hub = g.add_vertex(Color.WHITE)
        for t in ts:
            g.add_edge(hub, t)
    return Instance(g, [tuple(ts)], k, meta={"planar": True})


def random_tw(n: int, width: int, terminals: int, seed=0, keep: float = 0.8,
              thickness: int = 1) -> Instance:
    """Random partial ``width``-tree with its tree decomposition.

    With ``thickness`` > 1 every edge becomes that many parallel paths
    through private whites, which keeps the width at max(width, 2).
    """
    if n <= width:
        raise ValueError("need n > width")
    rng = random.Random(f"random-tw:{seed}")
    base = list(range(width + 1))
    pairs = {(a, b) for a in base for b in base if a < b}
    bags = {0: frozenset(base)}
    tree = []
    cliques = [(0, frozenset(base))]
    for v in range(width + 1, n):
        host, bag = cliques[rng.randrange(len(cliques))]
        drop = rng.choice(sorted(bag))
        clique = bag - {drop}
        pairs |= {(min(c, v), max(c, v)) for c in clique}
        idx = len(bags)
        bags[idx] = clique | {v}
        tree.append((host, idx))
        cliques.append((idx, bags[idx]))
    chosen = set(rng.sample(range(n), terminals))
    g = ColoredMultigraph()
    for v in range(n):
        g.add_vertex(Color.BLACK if v in chosen else Color.WHITE, 0 if v in chosen else None, vid=v)
    for u, v in sorted(pairs):
        if rng.random() >= keep:
            continue
        if thickness <= 1:
            g.add_edge(u, v)
            continue
        host = next(b for b, bag in bags.items() if u in bag and v in bag)
        for _ in range(thickness):
            w = g.add_vertex(Color.WHITE)
            g.add_edge(u, w)
            g.add_edge(w, v)
            idx = len(bags)
            bags[idx] = frozenset((u, v, w))
            tree.append((host, idx))
    return _measured(g, [tuple(sorted(chosen))], TreeDecomposition(bags, tree))


GENERATORS: dict[str, Callable[..., Instance]] = {
    "hk": hk,
    "gk": gk,
    "k3k": k3k,
    "tw-chain": tw_chain,
    "random": random_graph,
    "random-planar": random_planar,
    "planar-wheel": planar_wheel,
    "random-tw": random_tw,
}


def generate_instance(kind: str, **params) -> Instance:
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown generator kind {kind!r}; choose from {sorted(GENERATORS)}") from None
    return fn(**params)
