"""Seeded random instances and per-rule gadget graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import Graph, new_graph
from .oracle import alpha_induced
from .reduce import RULES, ReductionLog

GADGET_MAX_N = 18
TIE_RATE = 0.1


class InfeasibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    n: int
    target_avg_degree: float = 3.0
    weight_range: tuple[int, int] = (1, 100)
    seed: int = 0
    model: str = "gnm"  # "gnm", "regular" or "gadget"
    degree: int = 3  # for model "regular"
    rule: Optional[str] = None  # for model "gadget", e.g. "R9" or "R9.2"


def _weights(rng: random.Random, n: int, lo: int, hi: int) -> list[int]:
    return [rng.randint(lo, hi) for _ in range(n)]


def gnm(n: int, avg_degree, rng: random.Random, weight_range=(1, 100)) -> Graph:
    """Uniform graph with floor(n * avg_degree / 2) distinct edges."""
    if n < 0:
        raise InfeasibleSpec("n must be nonnegative")
    x = Fraction(str(avg_degree))
    if x < 0:
        raise InfeasibleSpec("average degree must be nonnegative")
    m = int(n * x / 2)
    if m > n * (n - 1) // 2:
        raise InfeasibleSpec(f"{m} edges do not fit on {n} vertices")
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = rng.sample(pairs, m)
    return new_graph(_weights(rng, n, *weight_range), edges)


def random_regular(n: int, d: int, rng: random.Random, weight_range=(1, 100),
                   max_tries: int = 100_000) -> Graph:
    """d-regular graph by the pairing model, rejecting loops and multi-edges."""
    if n < 0 or d < 0:
        raise InfeasibleSpec("n and d must be nonnegative")
    if (n * d) % 2:
        raise InfeasibleSpec(f"n*d = {n * d} is odd")
    if n > 0 and d >= n:
        raise InfeasibleSpec(f"degree {d} needs more than {n} vertices")
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            a, b = points[i], points[i + 1]
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return new_graph(_weights(rng, n, *weight_range), sorted(edges))
    raise InfeasibleSpec(f"no simple {d}-regular pairing found for n = {n}")


def gen(spec: GenSpec) -> Graph:
    lo, hi = spec.weight_range
    if lo < 0 or lo > hi:
        raise InfeasibleSpec(f"bad weight range {spec.weight_range}")
    rng = random.Random(spec.seed)
    if spec.model == "gnm":
        return gnm(spec.n, spec.target_avg_degree, rng, spec.weight_range)
    if spec.model == "regular":
        return random_regular(spec.n, spec.degree, rng, spec.weight_range)
    if spec.model == "gadget":
        if spec.rule is None:
            raise InfeasibleSpec("gadget model needs a rule")
        rule, _, case = spec.rule.partition(".")
        return gen_rule_gadget(rule, spec.seed, int(case) if case else None)
    raise InfeasibleSpec(f"unknown model {spec.model!r}")


# -- gadgets ---------------------------------------------------------------
#
# Each builder returns (weights, edges, attach) for the rule's core
# configuration; random padding is then hung off the ``attach`` vertices only,
# so the degrees the rule depends on stay intact.

def _desc(rng, k, lo, hi):
    return sorted((rng.randint(lo, hi) for _ in range(k)), reverse=True)


def _core_r1(rng, lo, hi):
    # u is pendant on v and at least as heavy: v is unconfined
    wv = rng.randint(lo, hi)
    return [wv, rng.randint(wv, max(wv, hi))], [(0, 1)], [0]


def _core_r2(rng, lo, hi):
    k = rng.randint(1, 3)
    edges = [(t, 2 + j) for t in (0, 1) for j in range(k)]
    return _weights(rng, 2 + k, lo, hi), edges, list(range(2, 2 + k))


def _core_r3(rng, lo, hi):
    k = rng.randint(1, 3)
    wv = rng.randint(lo, max(lo, hi - 1))
    ws = [wv] + [rng.randint(wv + 1, max(wv + 1, hi)) for _ in range(k)]
    edges = [(0, j) for j in range(1, k + 1)]
    edges += [(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1)]
    return ws, edges, list(range(1, k + 1))


def _core_r4(rng, lo, hi):
    k = rng.randint(1, 4)
    ws = [0] + _weights(rng, k, lo, hi)
    edges = [(0, j) for j in range(1, k + 1)]
    edges += [(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1) if rng.random() < 0.4]
    core = new_graph(ws, edges)
    ws[0] = alpha_induced(core, range(1, k + 1)) + rng.randint(0, 3)
    return ws, edges, list(range(1, k + 1))


def _core_r5(rng, lo, hi):
    w1, w2 = rng.randint(lo, hi), rng.randint(lo, hi)
    top = max(w1, w2)
    wv = rng.randint(top, max(top, w1 + w2 - 1))
    return [wv, w1, w2], [(0, 1), (0, 2)], [1, 2]


def _core_r6(rng, lo, hi):
    return _desc(rng, 4, lo, hi), [(0, 1), (1, 2), (2, 3)], [0, 3]


def _core_r7(rng, lo, hi):
    ws = _desc(rng, 3, lo, hi) + [rng.randint(lo, hi)]
    return ws, [(0, 1), (1, 2), (2, 3), (3, 0)], [0, 3]


def _core_r8(rng, lo, hi):
    w3 = rng.randint(lo, hi)
    left = sorted((rng.randint(w3, max(w3, hi)) for _ in range(2)), reverse=True)
    right = sorted(rng.randint(w3, max(w3, hi)) for _ in range(2))
    return left + [w3] + right, [(0, 1), (1, 2), (2, 3), (3, 4)], [0, 4]


def _core_r9(rng, lo, hi, case):
    w1, w2, w3 = _desc(rng, 3, lo, hi)
    w4 = rng.randint(w3, max(w3, hi))
    if case == 1:
        if w3 <= lo:
            w1, w2, w3 = w1 + 1, w2 + 1, w3 + 1
            w4 = max(w4, w3)
        w5 = rng.randint(lo, w3 - 1)
    else:
        w5 = rng.randint(w3, max(w3, hi))
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    return [w1, w2, w3, w4, w5], edges, [0, 3]


def _core_r10(rng, lo, hi, case):
    # ids 0..5 are v1..v6 around the cycle
    w5 = rng.randint(lo, hi)
    w6 = rng.randint(w5, max(w5, hi))
    if case == 1:
        w3 = rng.randint(lo, hi)
        w2 = rng.randint(w3, max(w3, hi))
    else:
        w2 = rng.randint(lo, max(lo, hi - 1))
        w3 = rng.randint(w2 + 1, max(w2 + 1, hi))
    w1 = rng.randint(max(w2, w6), max(w2, w6, hi))
    w4 = rng.randint(max(w3, w5), max(w3, w5, hi))
    edges = [(i, (i + 1) % 6) for i in range(6)]
    return [w1, w2, w3, w4, w5, w6], edges, [0, 3]


def _random_connected(rng, k, first):
    """Edges of a random connected graph on ids first..first+k-1."""
    edges = [(first + rng.randrange(i), first + i) for i in range(1, k)]
    for a in range(k):
        for b in range(a + 1, k):
            if rng.random() < 0.35:
                edges.append((first + a, first + b))
    return edges


def _core_r11(rng, lo, hi):
    # id 0 is the cut vertex, the side hangs off it
    k = rng.randint(2, 5)
    edges = _random_connected(rng, k, 1)
    edges += [(0, 1 + j) for j in rng.sample(range(k), rng.randint(1, min(2, k)))]
    return _weights(rng, k + 1, lo, hi), edges, [0]


def _core_r12(rng, lo, hi):
    # ids 0, 1 are the cut pair, the side hangs between them
    k = rng.randint(2, 5)
    edges = _random_connected(rng, k, 2)
    for u in (0, 1):
        edges += [(u, 2 + j) for j in rng.sample(range(k), rng.randint(1, min(2, k)))]
    return _weights(rng, k + 2, lo, hi), edges, [0, 1]


_CORES = {
    "R1": _core_r1, "R2": _core_r2, "R3": _core_r3, "R4": _core_r4, "R5": _core_r5,
    "R6": _core_r6, "R7": _core_r7, "R8": _core_r8, "R11": _core_r11, "R12": _core_r12,
}
_RULE_FN = dict(RULES)
# rules that need their attach vertices to reach degree >= 3
_NEEDS_PAD = {"R9", "R10", "R11", "R12"}


def _pad(rng, ws, edges, attach, lo, hi, need):
    n0 = len(ws)
    room = GADGET_MAX_N - n0
    p = rng.randint(1 if need else 0, room)
    ws = ws + _weights(rng, p, lo, hi)
    edges = list(edges)
    if p == 0:
        return ws, edges
    host = list(range(n0, n0 + p))
    edges += _random_connected(rng, p, n0)
    for a in attach:
        for h in rng.sample(host, rng.randint(1, min(2, p))):
            edges.append((a, h))
    return ws, edges


def gen_rule_gadget(rule: str, seed: int, case: Optional[int] = None) -> Graph:
    """Graph on at most 18 vertices where ``rule`` applies when called directly.

    Weights are uniform in [1, 100], squeezed into [1, 3] for one instance in
    ten so that the rules' non-strict comparisons see ties. Candidates whose
    random padding spoils the configuration are redrawn from the same stream.
    """
    if rule not in _RULE_FN or rule == "R0":
        raise InfeasibleSpec(f"unknown rule {rule!r}")
    if case is not None and rule not in ("R9", "R10"):
        raise InfeasibleSpec(f"{rule} has no cases")
    rng = random.Random(f"{rule}:{case}:{seed}")
    lo, hi = (1, 3) if rng.random() < TIE_RATE else (1, 100)
    for _ in range(10_000):
        c = case if case is not None else rng.randint(1, 2)
        if rule == "R9":
            ws, edges, attach = _core_r9(rng, lo, hi, c)
        elif rule == "R10":
            ws, edges, attach = _core_r10(rng, lo, hi, c)
        else:
            ws, edges, attach = _CORES[rule](rng, lo, hi)
        ws, edges = _pad(rng, ws, edges, attach, lo, hi, rule in _NEEDS_PAD)
        g = new_graph(ws, edges)
        log = ReductionLog()
        if _RULE_FN[rule](g.copy(), log):
            fired = log.events[0].case if log.events else 0
            if case is None or fired == case:
                return g
    raise RuntimeError(f"could not build a {rule} gadget for seed {seed}")
