"""Spider decompositions of k-element-connected black sets.

A spider is a tree with at most one vertex of degree 3 or more (its head);
its leaves are the feet. The decomposition is built on the bipartite
reduction, where it is a matter of marking neighbours, and then pulled back
through the contractions one at a time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InfeasibleError, InternalConsistencyError
from .graph import ColoredMultigraph, ContractEdge, _apply, subdivide_terminal_edges
from .reduction import reduce_to_bipartite


@dataclass
class Spider:
    head: int
    legs: list[list[int]]  # vertex paths head -> foot
    leg_edges: list[list[int]]

    @property
    def feet(self) -> list[int]:
        return [leg[-1] for leg in self.legs]

    def vertices(self) -> set[int]:
        return {x for leg in self.legs for x in leg} | {self.head}

    def edges(self) -> set[int]:
        return {e for es in self.leg_edges for e in es}


@dataclass
class SpiderDecomposition:
    spiders: list[Spider]
    foot_count: dict[int, int]
    host: ColoredMultigraph
    meta: dict = field(default_factory=dict)


def _lowest_edge(g: ColoredMultigraph, a: int, b: int) -> int:
    return min(g.edges_between(a, b))


def _base_spiders(b: ColoredMultigraph, blacks: list[int], k: int) -> list[Spider]:
    marks: dict[int, list[int]] = {}
    for x in blacks:
        # only whites with a second black neighbour can close a spider
        cands = sorted(w for w in b.neighbors(x)
                       if b.is_white(w) and sum(1 for y in b.neighbors(w) if b.is_black(y)) >= 2)
        if len(cands) < k:
            raise InfeasibleError(
                f"black {x} has only {len(cands)} usable white neighbours after reduction, "
                f"so the blacks are not {k}-element-connected")
        for w in cands[:k]:
            marks.setdefault(w, []).append(x)
    spiders = []
    for w in sorted(marks):
        by = marks[w]
        if len(by) >= 2:
            spiders.append(Spider(w, [[w, x] for x in by], [[_lowest_edge(b, w, x)] for x in by]))
        else:
            (x,) = by
            other = min(y for y in b.neighbors(w) if b.is_black(y) and y != x)
            spiders.append(Spider(other, [[other, w, x]],
                                  [[_lowest_edge(b, other, w), _lowest_edge(b, w, x)]]))
    return spiders


def _lift_internal(sp: Spider, v: int, rec: ContractEdge, ends) -> None:
    p, q = rec.survivor, rec.absorbed
    for li, leg in enumerate(sp.legs):
        if v not in leg[1:-1]:
            continue
        i = leg.index(v)
        es = sp.leg_edges[li]
        a = p if p in ends[es[i - 1]] else q
        b = p if p in ends[es[i]] else q
        if a == b:
            leg[i] = a
        else:
            leg[i:i + 1] = [a, b]
            es.insert(i, rec.edge)
        return
    raise InternalConsistencyError(f"vertex {v} is neither head nor intermediate")


def _lift_head(sp: Spider, rec: ContractEdge, ends) -> list[Spider]:
    p, q = rec.survivor, rec.absorbed
    on_p, on_q = [], []
    for leg, es in zip(sp.legs, sp.leg_edges):
        (on_p if p in ends[es[0]] else on_q).append((leg, es))

    def build(head, legs):
        return Spider(head, [[head] + leg[1:] for leg, _ in legs], [list(es) for _, es in legs])

    branches = [len(on_p) >= 2 and len(on_q) >= 2, not on_q, not on_p,
                bool(on_p and on_q) and (len(on_p) == 1 or len(on_q) == 1)]
    if sum(branches) != 1:
        raise InternalConsistencyError(f"head lift at edge {rec.edge}: branches {branches}")
    if branches[0]:
        return [build(p, on_p), build(q, on_q)]
    if branches[1]:
        return [build(p, on_p)]
    if branches[2]:
        return [build(q, on_q)]
    # one side holds a single leg: the other side's vertex becomes head and that leg runs through the edge
    lone, head, tail, rest = (on_p, q, p, on_q) if len(on_p) == 1 else (on_q, p, q, on_p)
    (leg, es), = lone
    out = build(head, rest)
    out.legs.insert(0, [head, tail] + leg[1:])
    out.leg_edges.insert(0, [rec.edge] + list(es))
    return [out]


def _check_disjoint(spiders: list[Spider], blacks: set[int], step: int) -> None:
    seen_w: set[int] = set()
    seen_e: set[int] = set()
    for sp in spiders:
        ws = {x for x in sp.vertices() if x not in blacks}
        es = sp.edges()
        if ws & seen_w or es & seen_e:
            raise InternalConsistencyError(f"spiders overlap after lift step {step}")
        seen_w |= ws
        seen_e |= es


def spider_decompose(g: ColoredMultigraph, blacks: Iterable[int], k: int,
                     check_steps: bool = False) -> SpiderDecomposition:
    """Spiders in which every black is a foot exactly ``k`` times.

    Black-black edges are subdivided first; the returned host is that
    subdivided graph. ``check_steps`` re-checks disjointness after every
    lifting step.
    """
    bs = sorted(set(blacks))
    if len(bs) < 2:
        raise ValueError("need at least two blacks")
    if k < 1:
        raise ValueError("k must be positive")
    host, _ = subdivide_terminal_edges(g.recolored(bs))
    red = reduce_to_bipartite(host)
    spiders = _base_spiders(red.reduced, bs, k)

    # replay forward to learn edge endpoints just before each contraction
    work = host.copy()
    snaps = []
    for rec in red.trace.records:
        if isinstance(rec, ContractEdge):
            snaps.append((rec, {eid: (e.u, e.v) for eid, e in work.edges.items()}))
        _apply(work, rec)
    bset = set(bs)
    for step, (rec, ends) in enumerate(reversed(snaps)):
        v = rec.survivor
        nxt = []
        for sp in spiders:
            if v == sp.head:
                nxt.extend(_lift_head(sp, rec, ends))
                continue
            if v in sp.vertices():
                _lift_internal(sp, v, rec, ends)
            nxt.append(sp)
        spiders = nxt
        if check_steps:
            _check_disjoint(spiders, bset, step)
    count = {x: 0 for x in bs}
    for sp in spiders:
        for f in sp.feet:
            count[f] = count.get(f, 0) + 1
    return SpiderDecomposition(spiders, count, host, {"lift_steps": len(snaps)})


def extract_element_paths(sd: SpiderDecomposition, with_edges: bool = False):
    """For every foot, one path to another black inside each of its spiders.

    A black-headed spider routes each foot along its leg to the head; a
    white-headed one pairs leg i with leg i+1 cyclically. With
    ``with_edges`` each path is a (vertices, edge ids) pair.
    """
    out: dict[int, list] = {}
    for idx, sp in enumerate(sd.spiders):
        legs, es = sp.legs, sp.leg_edges
        if not legs or len(legs) != len(es):
            raise ValueError(f"spider {idx} is malformed")
        for leg, e in zip(legs, es):
            if leg[0] != sp.head or len(e) != len(leg) - 1:
                raise ValueError(f"spider {idx} has a leg not starting at its head")
        black_head = sd.host.is_black(sp.head)
        if not black_head and len(legs) < 2:
            raise ValueError(f"spider {idx} has a white head and fewer than two feet")
        for i, (leg, e) in enumerate(zip(legs, es)):
            if black_head:
                verts, eids = leg[::-1], e[::-1]
            else:
                j = (i + 1) % len(legs)
                verts = leg[::-1] + legs[j][1:]
                eids = e[::-1] + es[j]
            out.setdefault(leg[-1], []).append((verts, eids) if with_edges else verts)
    return out
