import random

import pytest

from wmis.graph import (
    DELTA2,
    DELTA3,
    FormatError,
    InvariantError,
    delta,
    measure,
    measure_upper_bound,
    new_graph,
)
from wmis.instgen import random_regular


def degrees(g):
    return tuple(g.degree(v) for v in g.vertices())


def test_construction_examples():
    g = new_graph([5], [])
    assert g.n_alive == 1 and degrees(g) == (0,)
    assert degrees(new_graph([3, 5, 4], [(0, 1), (1, 2)])) == (1, 2, 1)
    g = new_graph([1, 1, 1, 1], [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert degrees(g) == (3, 2, 3, 2)


def test_duplicate_edges_collapse():
    g = new_graph([1, 1], [(0, 1), (1, 0), (0, 1)])
    assert g.m_alive == 1
    g.audit()


@pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)], [(1, 1)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(FormatError):
        new_graph([1, 1, 1], edges)


def test_bad_weights_rejected():
    with pytest.raises(FormatError):
        new_graph([1, -2], [])
    with pytest.raises(FormatError):
        new_graph([1.5], [])


def test_delete_vertex():
    star = new_graph([1] * 4, [(0, 1), (0, 2), (0, 3)])
    star.delete_vertex(0)
    assert degrees(star) == (0, 0, 0) and star.m_alive == 0
    edge = new_graph([1, 1], [(0, 1)])
    edge.delete_vertex(0)
    assert edge.vertices() == [1] and edge.degree(1) == 0
    tri = new_graph([1] * 3, [(0, 1), (1, 2), (0, 2)])
    tri.delete_vertex(2)
    assert tri.m_alive == 1
    with pytest.raises(InvariantError):
        tri.delete_vertex(2)


def test_add_vertex():
    g = new_graph([1, 1, 1], [])
    v = g.add_vertex(2, {0, 1, 2})
    assert g.degree(v) == 3 and g.weight[v] == 2
    iso = g.add_vertex(1)
    assert g.degree(iso) == 0
    before = sorted(g.edges())
    w = g.add_vertex(4, {0})
    g.delete_vertex(w)
    assert sorted(g.edges()) == before
    assert w not in g.vertices()
    g.audit()
    with pytest.raises(InvariantError):
        g.add_vertex(1, {w})


def test_compacted_renumbers_in_order():
    g = new_graph([10, 20, 30, 40], [(0, 1), (1, 2), (2, 3)])
    g.delete_vertex(1)
    h, index = g.compacted_with_map()
    assert h.weight == [10, 30, 40]
    assert index == {0: 0, 2: 1, 3: 2}
    assert sorted(h.edges()) == [(1, 2)]


def test_delta_table_and_identities():
    assert [delta(i) for i in range(6)] == [0, 0, 376, 1000, 1624, 2248]
    for i in range(4, 40):
        assert delta(i) - delta(i - 1) == 624
    assert 2 * DELTA3 >= 5 * DELTA2
    assert 3 * DELTA2 >= DELTA3


def test_measure_examples():
    k4 = new_graph([1] * 4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert measure(k4) == 4000
    c5 = new_graph([1] * 5, [(i, (i + 1) % 5) for i in range(5)])
    assert measure(c5) == 1880
    star = new_graph([1] * 6, [(0, i) for i in range(1, 6)])
    assert measure(star) == 2248


def test_measure_upper_bound_examples():
    assert measure_upper_bound(10, 15) == 10000
    assert measure_upper_bound(4, 0) == 0
    for seed in range(20):
        g = random_regular(2 * (5 + seed), 3, random.Random(seed))
        assert measure(g) == measure_upper_bound(g.n_alive, g.m_alive)


def test_bound_gap_is_low_degree_vertices():
    # for d >= 2 the cost is exactly 624 d - 872, so only degree 0 and 1 exceed the bound
    for d in range(2, 30):
        assert delta(d) == 624 * d - 872
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(3, 15)
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        g = new_graph([1] * n, rng.sample(pairs, rng.randint(0, len(pairs))))
        n0 = sum(1 for v in g.vertices() if g.degree(v) == 0)
        n1 = sum(1 for v in g.vertices() if g.degree(v) == 1)
        assert measure(g) - (1248 * g.m_alive - 872 * n) == 872 * n0 + 248 * n1
        if n0 == n1 == 0:
            assert measure(g) <= measure_upper_bound(n, g.m_alive)
