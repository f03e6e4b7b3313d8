import random

import pytest

from wmis.graph import measure, new_graph
from wmis.instgen import gnm, random_regular
from wmis.oracle import mwis_bruteforce
from wmis.solver import SearchDepthExceeded, solve, solve_components


def branching_graph(seed=0):
    """A cubic graph on which the search actually branches."""
    rng = random.Random(seed)
    while True:
        g = random_regular(40, 3, rng, (1, 100))
        if solve(g).stats.nodes > 2:
            return g


def test_empty_graph():
    res = solve(new_graph([], []))
    assert res.alpha == 0 and res.stats.nodes == 1 and res.stats.leaves == 1


def test_matches_bruteforce_small():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(1, 18)
        g = gnm(n, min(rng.uniform(1, 6), n - 1), rng)
        assert solve(g).alpha == mwis_bruteforce(g)


def test_matches_bruteforce_branching_sizes():
    rng = random.Random(12)
    for _ in range(30):
        g = random_regular(rng.choice([20, 24, 28]), 3, rng, (1, rng.choice([1, 3, 100])))
        res = solve(g, check_lemmas=True)
        assert res.alpha == mwis_bruteforce(g)
        assert res.stats.lemma_violations == []


def test_input_graph_untouched():
    g = gnm(15, 3, random.Random(1))
    before = (sorted(g.edges()), list(g.weight))
    solve(g)
    assert (sorted(g.edges()), list(g.weight)) == before


def test_cubic_sixty_within_bound():
    g = random_regular(60, 3, random.Random(13))
    res = solve(g)
    p = measure(g)
    assert p == 60000
    assert res.stats.leaves <= 1.1443 ** (p / 1000)


def test_stats_shape():
    res = solve(branching_graph())
    st = res.stats
    assert 1 <= st.leaves <= st.nodes
    assert st.max_depth >= 1
    assert sum(st.per_step.values()) >= 1
    assert st.peak_measure > 10000


def test_deterministic():
    g = branching_graph(1)
    a, b = solve(g), solve(g)
    assert a.alpha == b.alpha
    assert a.stats == b.stats


def test_parallel_matches_sequential():
    g = branching_graph(2)
    seq = solve(g)
    par = solve(g, parallel=True, threads=2)
    assert par.alpha == seq.alpha
    assert par.stats == seq.stats


def test_depth_guard():
    with pytest.raises(SearchDepthExceeded):
        solve(branching_graph(3), depth_limit=0)


def test_solve_components_examples():
    two_triangles = new_graph([1] * 6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert solve_components(two_triangles).alpha == 2
    g = gnm(14, 3, random.Random(3))
    if len(g.components()) == 1:
        assert solve_components(g).alpha == solve(g).alpha


def test_solve_components_sum():
    rng = random.Random(14)
    ws, edges, expected = [], [], 0
    for _ in range(10):
        n = rng.randint(1, 12)
        part = gnm(n, min(3, n - 1), rng)
        off = len(ws)
        ws += part.weight
        edges += [(a + off, b + off) for a, b in part.edges()]
        expected += mwis_bruteforce(part)
    assert solve_components(new_graph(ws, edges)).alpha == expected
