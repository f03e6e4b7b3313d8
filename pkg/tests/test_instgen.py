import random

import pytest

from wmis.graph import measure, measure_upper_bound
from wmis.instgen import GenSpec, InfeasibleSpec, gen, gen_rule_gadget, gnm, random_regular
from wmis.reduce import RULES, ReductionLog


def test_regular_example():
    g = gen(GenSpec(n=10, model="regular", degree=3, seed=1))
    assert g.m_alive == 15
    assert all(g.degree(v) == 3 for v in g.vertices())


def test_gnm_edge_count():
    assert gen(GenSpec(n=20, target_avg_degree=3, seed=2)).m_alive == 30
    assert gnm(7, 2.5, random.Random(0)).m_alive == 8


def test_seeded_determinism():
    for spec in (GenSpec(n=30, target_avg_degree=2.5, seed=7),
                 GenSpec(n=30, model="regular", degree=3, seed=7),
                 GenSpec(n=0, model="gadget", rule="R12", seed=7)):
        a, b = gen(spec), gen(spec)
        assert list(a.edges()) == list(b.edges()) and a.weight == b.weight


def test_weights_in_range():
    g = gen(GenSpec(n=50, target_avg_degree=3, weight_range=(5, 9), seed=3))
    assert all(5 <= w <= 9 for w in g.weight)


@pytest.mark.parametrize("spec", [
    GenSpec(n=9, model="regular", degree=3),
    GenSpec(n=4, model="regular", degree=4),
    GenSpec(n=3, target_avg_degree=5),
    GenSpec(n=3, model="mystery"),
    GenSpec(n=3, weight_range=(5, 1)),
    GenSpec(n=0, model="gadget", rule="R13"),
])
def test_infeasible_specs(spec):
    with pytest.raises(InfeasibleSpec):
        gen(spec)


def test_regular_higher_degree():
    g = random_regular(12, 4, random.Random(4))
    assert all(g.degree(v) == 4 for v in g.vertices())


def test_cubic_measure_equals_bound():
    for seed in range(10):
        g = gen(GenSpec(n=40, model="regular", degree=3, seed=seed))
        assert measure(g) == measure_upper_bound(g.n_alive, g.m_alive) == 40000


def _fires(rule, g):
    log = ReductionLog()
    return dict(RULES)[rule](g.copy(), log), log


@pytest.mark.parametrize("rule,case", [(f"R{i}", None) for i in range(1, 13)]
                         + [("R9", 1), ("R9", 2), ("R10", 1), ("R10", 2)])
def test_gadgets_fire_on_first_scan(rule, case):
    for seed in range(30):
        g = gen_rule_gadget(rule, seed, case)
        assert g.n_alive <= 18
        fired, log = _fires(rule, g)
        assert fired
        if case is not None:
            assert log.events[0].case == case


def test_gadget_r5_configuration():
    g = gen_rule_gadget("R5", 0)
    w = g.weight
    assert any(g.degree(v) == 2 and (lambda a, b: w[a] + w[b] > w[v] >= max(w[a], w[b]))(*g.adj[v])
               for v in g.vertices())


def test_some_gadgets_have_ties():
    tied = 0
    for seed in range(100):
        g = gen_rule_gadget("R6", seed)
        if max(g.weight) <= 3:
            tied += 1
    assert 2 <= tied <= 30
