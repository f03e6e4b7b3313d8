"""Branch-and-reduce driver: reduce, split into components, solve small ones
directly and branch on the rest."""

from __future__ import annotations

import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .branch import (
    branch,
    claimed_vectors,
    covers,
    find_chain_neighbors,
    select_branch,
)
from .graph import SMALL_COMPONENT_MILLI, Graph, measure
from .oracle import mwis_bruteforce, solve_small_component
from .reduce import ReductionLog, event_violation, reduce_exhaustively

ORACLE_SPOT_CHECK_N = 18


@dataclass
class SolveStats:
    nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    per_step: Counter = field(default_factory=Counter)
    per_rule: Counter = field(default_factory=Counter)
    peak_measure: int = 0
    lemma_violations: list = field(default_factory=list)

    def merge(self, other: "SolveStats") -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.max_depth = max(self.max_depth, other.max_depth)
        self.per_step.update(other.per_step)
        self.per_rule.update(other.per_rule)
        self.peak_measure = max(self.peak_measure, other.peak_measure)
        self.lemma_violations.extend(other.lemma_violations)


@dataclass
class SolveResult:
    alpha: int
    stats: SolveStats


class SearchDepthExceeded(RuntimeError):
    pass


class _Search:
    def __init__(self, check_lemmas: bool, depth_limit: int, observe=None):
        self.check = check_lemmas
        self.depth_limit = depth_limit
        self.observe = observe
        self.stats = SolveStats()

    def reduce(self, g: Graph) -> int:
        log = ReductionLog(keep_events=self.check)
        reduce_exhaustively(g, log)
        if self.observe is not None:
            self.observe(g)
        self.stats.per_rule.update(log.counts)
        if self.check:
            for ev in log.events:
                msg = event_violation(ev)
                if msg:
                    self.stats.lemma_violations.append(msg)
        return log.mc

    def node(self, g: Graph, depth: int, pool: Optional[ProcessPoolExecutor] = None) -> int:
        """Alpha of an already reduced graph."""
        st = self.stats
        if depth > self.depth_limit:
            raise SearchDepthExceeded(f"search depth {depth} exceeds limit {self.depth_limit}")
        st.nodes += 1
        st.max_depth = max(st.max_depth, depth)
        st.peak_measure = max(st.peak_measure, measure(g))
        total = 0
        branched = False
        for comp in g.components():
            h = g.induced(comp)
            p = measure(h)
            if p <= SMALL_COMPONENT_MILLI:
                total += solve_small_component(h)
                continue
            branched = True
            total += self.branch_component(h, p, depth, pool)
            pool = None
        if not branched:
            st.leaves += 1
        return total

    def branch_component(self, h: Graph, p: int, depth: int, pool) -> int:
        decision = select_branch(h)
        self.stats.per_step[decision.step] += 1
        if self.check and decision.step == "S12":
            ends = [u for u, _ in find_chain_neighbors(h, decision.vertex)]
            if len(set(ends)) != 3:
                self.stats.lemma_violations.append(
                    f"S12 at {decision.vertex}: chain-neighbors {ends} not distinct")
        children = branch(h, decision)
        prepared = []
        for child in children:
            mc = child.mc_delta + self.reduce(child.graph)
            prepared.append((child.graph, mc))
        if self.check:
            self.check_decrease(h, p, decision, [c for c, _ in prepared])

        if pool is not None:
            futures = [pool.submit(_solve_subtree, c, depth + 1, self.check, self.depth_limit)
                       for c, _ in prepared]
            values = []
            for fut, (_, mc) in zip(futures, prepared):
                alpha, sub = fut.result()
                self.stats.merge(sub)
                values.append(alpha + mc)
        else:
            values = [self.node(c, depth + 1) + mc for c, mc in prepared]

        if self.check and h.n_alive <= ORACLE_SPOT_CHECK_N:
            truth = mwis_bruteforce(h)
            if truth != max(values):
                self.stats.lemma_violations.append(
                    f"{decision.step}: children give {max(values)}, oracle says {truth}")
        return max(values)

    def check_decrease(self, h: Graph, p: int, decision, children: list[Graph]) -> None:
        obs = []
        for c in children:
            big = 0
            for comp in c.components():
                q = measure(c, comp)
                if q > SMALL_COMPONENT_MILLI:
                    big += q
            obs.append(p - big)
        vectors = claimed_vectors(h, decision)
        if not covers(tuple(obs), vectors):
            self.stats.lemma_violations.append(
                f"{decision.step}: decrease {obs} covers none of {vectors}")


def _solve_subtree(g: Graph, depth: int, check: bool, depth_limit: int) -> tuple[int, SolveStats]:
    s = _Search(check, depth_limit)
    return s.node(g, depth), s.stats


def solve(g: Graph, check_lemmas: bool = False, parallel: bool = False,
          depth_limit: Optional[int] = None, threads: Optional[int] = None,
          observe: Optional[Callable[[Graph], None]] = None) -> SolveResult:
    """Exact maximum weight of an independent set of ``g`` (``g`` is not modified).

    With ``check_lemmas`` every reduction event and branch is checked against
    its guaranteed measure decrease, and small branch nodes against brute force;
    shortfalls are collected in ``stats.lemma_violations``.
    With ``parallel`` the first branching node solves its children in worker
    processes; the result and stats are identical to the sequential run.
    ``observe`` is called on every fixed point of the reduction rules (sequential only).
    """
    h = g.compacted()
    if depth_limit is None:
        depth_limit = 10 * h.n_alive + 10
    search = _Search(check_lemmas, depth_limit, observe)
    mc = search.reduce(h)
    h = h.compacted()
    if parallel:
        with ProcessPoolExecutor(max_workers=threads or 2) as pool:
            alpha = search.node(h, 0, pool)
    else:
        alpha = search.node(h, 0)
    return SolveResult(alpha + mc, search.stats)


def solve_components(g: Graph) -> SolveResult:
    """Solve each connected component on its own and add up the results."""
    stats = SolveStats()
    total = 0
    for comp in g.components():
        res = solve(g.induced(comp))
        total += res.alpha
        stats.merge(res.stats)
    return SolveResult(total, stats)


def alpha(g: Graph) -> int:
    return solve(g).alpha


if sys.getrecursionlimit() < 10_000:
    sys.setrecursionlimit(10_000)
