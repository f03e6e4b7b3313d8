"""Acceptance criteria, one test each. Every test records a PASS/FAIL line that
is printed in the terminal summary (see conftest.py); running this file as a
script prints the same lines directly."""

import random
import subprocess
import sys
import time
from collections import Counter

import pytest

from wmis.bench import branching_factor
from wmis.branch import reduced_structure_violations
from wmis.graph import measure, measure_upper_bound, new_graph
from wmis.instgen import gen_rule_gadget, gnm, random_regular
from wmis.oracle import mwis_bruteforce
from wmis.reduce import RULES, ReductionLog
from wmis.solver import solve

RESULTS: dict[int, str] = {}

ORACLE_INSTANCES = 10_000
GADGETS_PER_RULE = 500
CUBIC_INSTANCES = 200
GAMMA = 1.1443


def record(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)


def oracle_instance(i: int):
    rng = random.Random(i)
    n = rng.randint(1, 18)
    # an average degree above n - 1 does not fit on n vertices
    x = min(rng.uniform(1, 6), n - 1)
    return gnm(n, x, rng, (1, 100))


def cubic_instance(i: int):
    rng = random.Random(10**6 + i)
    n = rng.choice(range(30, 61, 2))
    return random_regular(n, 3, rng, (1, 100))


def subdivided_cubic(i: int):
    """Cubic graph with a random share of its edges subdivided (reaches the later steps)."""
    rng = random.Random(2 * 10**6 + i)
    base = random_regular(rng.choice(range(20, 51, 2)), 3, rng, (1, rng.choice([1, 3, 100])))
    ws = list(base.weight)
    edges = []
    q = rng.random() * 0.6
    for a, b in base.edges():
        if rng.random() < q:
            ws.append(rng.randint(1, 100))
            edges += [(a, len(ws) - 1), (len(ws) - 1, b)]
        else:
            edges.append((a, b))
    return new_graph(ws, edges)


@pytest.fixture(scope="module")
def oracle_run():
    """Criterion 1's runs; fixed points and lemma checks are collected along the way."""
    data = {"mismatch": [], "structure": Counter(), "fixed_points": 0, "violations": [],
            "rules": Counter(), "shapes": []}

    def observe(g):
        data["fixed_points"] += 1
        for msg in reduced_structure_violations(g):
            data["structure"][msg.split(":")[0]] += 1

    t0 = time.perf_counter()
    for i in range(ORACLE_INSTANCES):
        g = oracle_instance(i)
        data["shapes"].append((g.n_alive, g.m_alive, measure(g)))
        res = solve(g, check_lemmas=True, observe=observe)
        if res.alpha != mwis_bruteforce(g):
            data["mismatch"].append(i)
        data["violations"] += res.stats.lemma_violations
        data["rules"].update(res.stats.per_rule)
    data["seconds"] = time.perf_counter() - t0
    return data


def test_c1_oracle_equivalence(oracle_run):
    bad = oracle_run["mismatch"]
    record(1, not bad, f"{ORACLE_INSTANCES} instances, {len(bad)} mismatches vs brute force "
                       f"({oracle_run['seconds']:.1f}s)")
    assert not bad


def test_c2_per_rule_soundness():
    fns = dict(RULES)
    cases = [(f"R{i}", None) for i in range(1, 13)] + [("R9", 1), ("R9", 2), ("R10", 1), ("R10", 2)]
    failures = []
    for rule, case in cases:
        for seed in range(GADGETS_PER_RULE):
            g = gen_rule_gadget(rule, seed, case)
            h = g.copy()
            log = ReductionLog()
            fired = fns[rule](h, log)
            if not fired or g.n_alive > 18 or mwis_bruteforce(g) != mwis_bruteforce(h) + log.mc:
                failures.append((rule, case, seed))
            elif rule == "R10" and log.mc != 0:
                failures.append((rule, case, seed))
    record(2, not failures, f"{len(cases)} rule/case groups x {GADGETS_PER_RULE} gadgets, "
                            f"{len(failures)} failures")
    assert not failures


def test_c3_reduced_structure(oracle_run):
    bad = oracle_run["structure"]
    record(3, not bad, f"{oracle_run['fixed_points']} fixed points checked, "
                       f"{sum(bad.values())} violations {dict(bad) or ''}")
    assert not bad


def test_c4_measure_lemmas(oracle_run):
    violations = list(oracle_run["violations"])
    steps = Counter()
    rules = Counter(oracle_run["rules"])
    graphs = [cubic_instance(i) for i in range(CUBIC_INSTANCES)]
    graphs += [subdivided_cubic(i) for i in range(300)]
    rng = random.Random(7)
    graphs += [gnm(rng.randint(30, 50), rng.uniform(2.5, 4.5), rng) for _ in range(100)]
    for g in graphs:
        res = solve(g, check_lemmas=True)
        violations += res.stats.lemma_violations
        steps.update(res.stats.per_step)
        rules.update(res.stats.per_rule)
    checked = {f"R{i}" for i in range(5, 13)}
    events = {r: n for r, n in sorted(rules.items()) if r.split(".")[0] in checked}
    record(4, not violations, f"{len(violations)} violations; branch steps {dict(sorted(steps.items()))}; "
                              f"checked events {events}")
    assert not violations


def test_c5_cubic_leaf_bound():
    over, not_bounded = [], []
    worst = 0.0
    t0 = time.perf_counter()
    for i in range(CUBIC_INSTANCES):
        g = cubic_instance(i)
        p = measure(g)
        if p > 1000 * g.n_alive:
            not_bounded.append(i)
        leaves = solve(g).stats.leaves
        bound = GAMMA ** (p / 1000)
        worst = max(worst, leaves / bound)
        if leaves > bound:
            over.append(i)
    ok = not over and not not_bounded
    record(5, ok, f"{CUBIC_INSTANCES} cubic instances n in [30, 60]: {len(over)} over 1.1443^p, "
                  f"{len(not_bounded)} with p > n, max leaves/bound {worst:.3e} "
                  f"({time.perf_counter() - t0:.1f}s)")
    assert ok


def _lemma1_instances(oracle_run):
    shapes = list(oracle_run["shapes"])
    for i in range(CUBIC_INSTANCES):
        g = cubic_instance(i)
        shapes.append((g.n_alive, g.m_alive, measure(g)))
    rng = random.Random(8)
    for _ in range(2000):
        n = rng.randint(2, 60)
        g = gnm(n, min(rng.uniform(0.2, 8), n - 1), rng)
        shapes.append((g.n_alive, g.m_alive, measure(g)))
    return shapes


@pytest.mark.xfail(strict=True, reason="the bound 1248m - 872n is exceeded by 872 per isolated "
                                       "vertex and 248 per degree-1 vertex; it holds at min degree 2")
def test_c6_lemma1_bound(oracle_run):
    shapes = _lemma1_instances(oracle_run)
    bad = [(n, m, p) for n, m, p in shapes if p > measure_upper_bound(n, m)]
    record(6, not bad, f"{len(shapes)} instances, {len(bad)} with measure > max(0, 1248m - 872n); "
                       f"first {bad[:1]} (see decisions ledger)")
    assert not bad


def test_c7_branching_factor():
    x = branching_factor((4.0, 6.496))
    ok = abs(x - 1.14427) <= 1e-5
    record(7, ok, f"root of 1 = x^-4 + x^-6.496 is {x:.8f}, |x - 1.14427| = {abs(x - 1.14427):.2e}")
    assert ok


def test_c8_bench_determinism():
    cmd = [sys.executable, "-m", "wmis", "bench", "--regular", "3", "--n-min", "30", "--n-max", "60",
           "--count", "20", "--seed", "42", "--verify", "--check-lemmas"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and a.stdout
    record(8, bool(ok), f"two bench runs: {len(a.stdout)} bytes each, identical={a.stdout == b.stdout}, "
                        f"status {a.returncode}/{b.returncode}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
