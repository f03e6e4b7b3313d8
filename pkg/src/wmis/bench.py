"""Seeded benchmark suites and the leaf-count report."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .graph import measure, measure_upper_bound
from .instgen import GenSpec, gen
from .oracle import mwis_bruteforce
from .solver import solve

GAMMA = 1.1443
EXPECTED_FACTOR = 1.14427
BOTTLENECK_VECTOR = (4.0, 6.496)
COLUMNS = ["instance", "n", "m", "measure", "alpha", "nodes", "leaves", "bound_leaves"]
ORACLE_VERIFY_N = 18


def branching_factor(vector, lo: float = 1.0, hi: float = 2.0, tol: float = 1e-12) -> float:
    """Largest root of 1 = sum x^-a over the vector, by bisection."""
    f = lambda x: sum(x ** -a for a in vector) - 1.0  # noqa: E731
    if f(lo) < 0:
        raise ValueError("no root above the lower bracket")
    while f(hi) > 0:
        hi *= 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass
class BenchConfig:
    model: str = "regular"
    degree: int = 3
    avg_degree: float = 3.0
    n_min: int = 30
    n_max: int = 60
    count: int = 20
    seed: int = 0
    weight_range: tuple[int, int] = (1, 100)
    verify: bool = False
    check_lemmas: bool = False
    timing: bool = False


def suite(cfg: BenchConfig) -> list[GenSpec]:
    rng = random.Random(cfg.seed)
    specs = []
    for _ in range(cfg.count):
        n = rng.randint(cfg.n_min, cfg.n_max)
        if cfg.model == "regular" and (n * cfg.degree) % 2:
            n = n + 1 if n < cfg.n_max else n - 1
        specs.append(GenSpec(n=n, target_avg_degree=cfg.avg_degree, weight_range=cfg.weight_range,
                             seed=rng.getrandbits(64), model=cfg.model, degree=cfg.degree))
    return specs


@dataclass
class Record:
    instance: int
    n: int
    m: int
    measure: int
    alpha: int
    nodes: int
    leaves: int
    bound_leaves: float
    seconds: float
    problems: list

    def csv(self, timing: bool) -> str:
        row = [self.instance, self.n, self.m, self.measure, self.alpha, self.nodes, self.leaves,
               f"{self.bound_leaves:.6e}"]
        if timing:
            row.append(f"{self.seconds:.4f}")
        return ",".join(str(x) for x in row)


def run_one(idx: int, spec: GenSpec, verify: bool, check_lemmas: bool) -> Record:
    g = gen(spec)
    p = measure(g)
    t0 = time.perf_counter()
    res = solve(g, check_lemmas=check_lemmas)
    elapsed = time.perf_counter() - t0
    bound = GAMMA ** (p / 1000)
    problems = list(res.stats.lemma_violations)
    if verify:
        if res.stats.leaves > bound:
            problems.append(f"leaves {res.stats.leaves} exceed bound {bound:.3f}")
        if g.n_alive <= ORACLE_VERIFY_N and mwis_bruteforce(g) != res.alpha:
            problems.append("alpha disagrees with brute force")
    return Record(idx, g.n_alive, g.m_alive, p, res.alpha, res.stats.nodes, res.stats.leaves,
                  bound, elapsed, problems)


def run_bench(cfg: BenchConfig, threads: int = 1) -> tuple[list[str], list[Record]]:
    """Solve the suite and return (report lines, records). Lines do not include
    wall time unless ``cfg.timing`` is set, so equal configs give equal reports."""
    specs = suite(cfg)
    args = [(i, s, cfg.verify, cfg.check_lemmas) for i, s in enumerate(specs)]
    if threads > 1 and args:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(run_one, *zip(*args)))
    else:
        records = [run_one(*a) for a in args]

    header = COLUMNS + (["seconds"] if cfg.timing else [])
    lines = [",".join(header)]
    lines += [r.csv(cfg.timing) for r in records]
    lines += summary(records)
    return lines, records


def summary(records: list[Record]) -> list[str]:
    out = [f"# instances {len(records)}"]
    if records:
        ratio = max(r.leaves / r.bound_leaves for r in records)
        out.append(f"# max leaves/bound_leaves {ratio:.6e}")
        over = sum(1 for r in records if r.leaves > r.bound_leaves)
        out.append(f"# instances over bound {over}")
        per_n = max(r.measure / r.n if r.n else 0.0 for r in records)
        out.append(f"# max measure/n {per_n / 1000:.6f}")
        lemma1 = sum(1 for r in records if r.measure > measure_upper_bound(r.n, r.m))
        out.append(f"# measure above 1248m-872n {lemma1}")
        out.append(f"# problems {sum(len(r.problems) for r in records)}")
    x = branching_factor(BOTTLENECK_VECTOR)
    ok = abs(x - EXPECTED_FACTOR) <= 1e-5
    out.append(f"# branching factor of {list(BOTTLENECK_VECTOR)} = {x:.8f} "
               f"({'ok' if ok else 'MISMATCH'} against {EXPECTED_FACTOR})")
    return out


def failed(records: list[Record]) -> bool:
    return any(r.problems for r in records) or abs(branching_factor(BOTTLENECK_VECTOR) - EXPECTED_FACTOR) > 1e-5
