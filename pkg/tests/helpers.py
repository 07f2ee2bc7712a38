"""Instance builders shared by the test modules."""
import random
from fractions import Fraction

from elemconn.generators import hk, k3k, planar_wheel, random_graph, random_planar
from elemconn.graph import Color, ColoredMultigraph


def graph_from(blacks, whites, edges):
    g = ColoredMultigraph()
    for b in blacks:
        g.add_vertex(Color.BLACK, vid=b)
    for w in whites:
        g.add_vertex(Color.WHITE, vid=w)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def with_terminal_edges(g: ColoredMultigraph, seed, extra=2) -> ColoredMultigraph:
    """Copy of ``g`` with a few parallel black-black edges added."""
    rng = random.Random(f"bb:{seed}")
    h = g.copy()
    bs = h.blacks()
    if len(bs) >= 2:
        for _ in range(extra):
            a, b = rng.sample(bs, 2)
            h.add_edge(a, b)
    return h


def small_corpus():
    """Every graph with at most 10 vertices used to cross-check connectivity."""
    out = []
    for k in range(1, 9):
        out.append((f"hk{k}", hk(k).graph))
    for k in range(1, 8):
        out.append((f"k3k{k}", k3k(k).graph))
    for s in range(60):
        rng = random.Random(f"corpus:{s}")
        n = rng.randint(4, 10)
        inst = random_graph(n, rng.choice((0.3, 0.5, 0.7)), rng.randint(2, min(5, n)), seed=s)
        out.append((f"random{s}", inst.graph))
        if s % 3 == 0:
            out.append((f"random{s}+bb", with_terminal_edges(inst.graph, s)))
    for s in range(10):
        out.append((f"planar{s}", random_planar(10, 4, seed=s, keep=0.8).graph))
    out.append(("wheel", planar_wheel(3, 3, seed=0).graph))
    return [(name, g) for name, g in out if len(g.vertices) <= 10]


def costed(g: ColoredMultigraph, seed) -> ColoredMultigraph:
    rng = random.Random(f"cost:{seed}")
    h = ColoredMultigraph()
    for v, vx in g.vertices.items():
        h.add_vertex(vx.color, vx.group, vid=v)
    for eid, e in g.edges.items():
        h.add_edge(e.u, e.v, Fraction(rng.randint(1, 9), rng.choice((1, 2))), eid=eid)
    return h


def random_ssk_graph(seed, n, p):
    rng = random.Random(f"ssk-graph:{seed}")
    g = ColoredMultigraph()
    for v in range(n):
        g.add_vertex(Color.WHITE, vid=v)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v, Fraction(rng.randint(1, 9)))
    return g, rng
