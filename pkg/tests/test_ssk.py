from fractions import Fraction

import pytest

from elemconn.errors import InfeasibleError
from elemconn.graph import Color, ColoredMultigraph
from elemconn.oracle import brute_ssk_opt
from elemconn.ssk import (SskInstance, augmentation_problems, greedy_ssk, min_cost_augmentation,
                          verify_ssk_feasible)

from helpers import random_ssk_graph


def _weighted(n, edges):
    g = ColoredMultigraph()
    for v in range(n):
        g.add_vertex(Color.WHITE, vid=v)
    for u, v, c in edges:
        g.add_edge(u, v, Fraction(c))
    return g


def test_k1_buys_shortest_path():
    g = _weighted(4, [(0, 1, 1), (1, 3, 1), (0, 2, 5), (2, 3, 1), (0, 3, 4)])
    inst = SskInstance(g, 0, (3,), 1)
    res = greedy_ssk(inst)
    assert res.cost == 2 and res.edges == frozenset({0, 1})


def test_star_cannot_reach_k2():
    g = _weighted(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    inst = SskInstance(g, 0, (1, 2, 3), 2)
    with pytest.raises(InfeasibleError):
        greedy_ssk(inst)


def test_instance_validation():
    g = _weighted(3, [(0, 1, 1), (1, 2, 1)])
    with pytest.raises(ValueError):
        SskInstance(g, 0, (0, 1), 1)
    with pytest.raises(KeyError):
        SskInstance(g, 0, (7,), 1)
    with pytest.raises(ValueError):
        SskInstance(g, 0, (1,), 0)


def test_served_terminal_ends_at_most_one_path():
    # terminal 2 reaches the root only through served terminal 1 and directly
    g = _weighted(3, [(0, 1, 1), (1, 2, 1), (0, 2, 10)])
    inst = SskInstance(g, 0, (1, 2), 2)
    aug = min_cost_augmentation(inst, 2, served=[1])
    assert sorted(p[-1] for p in aug.paths) == [0, 1]
    assert aug.cost == 11
    assert augmentation_problems(inst, aug, [1]) == []
    assert min_cost_augmentation(inst, 2, served=[1], bought=[2]).cost == 1


def test_feasibility_report():
    g = _weighted(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    inst = SskInstance(g, 0, (1, 2), 2)
    assert not verify_ssk_feasible([], inst)
    assert verify_ssk_feasible(g.edges, inst).passed
    assert verify_ssk_feasible([0, 1], inst).failures == [(1, 1), (2, 1)]


@pytest.mark.parametrize("seed", range(12))
def test_k2_against_exhaustive_optimum(seed):
    g, rng = random_ssk_graph(seed, 8, 0.6)
    inst = SskInstance(g, 0, tuple(rng.sample(range(1, 8), 3)), 2)
    try:
        inst.check_feasible()
    except InfeasibleError:
        pytest.skip("instance infeasible")
    res = greedy_ssk(inst, seed=seed, check=True)
    opt, _ = brute_ssk_opt(inst)
    assert verify_ssk_feasible(res.edges, inst).passed
    assert opt <= res.cost <= 3 * 2 * opt
    assert res.cost == sum(res.step_costs)


def test_seeded_order_is_reproducible():
    g, rng = random_ssk_graph(3, 9, 0.7)
    inst = SskInstance(g, 0, (1, 2, 3, 4), 2)
    assert greedy_ssk(inst, seed=5).order == greedy_ssk(inst, seed=5).order
