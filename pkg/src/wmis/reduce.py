"""Confinement, the reduction rules R0..R12 and the exhaustive scheduler.

Every rule has the signature ``rule(g, log) -> bool``: it looks for the
lowest-id site where it applies, rewrites ``g`` in place, records the event in
``log`` and returns True; otherwise it leaves ``g`` untouched and returns False.
For every application ``alpha(before) == alpha(after) + mc_delta``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .graph import DELTA2, DELTA3, SMALL_COMPONENT_MILLI, Graph, delta, measure
from .oracle import alpha_induced

R11_MIN_COST = 2 * DELTA3 - DELTA2  # 1624
R12_MIN_COST = 2 * DELTA3 + DELTA2  # 2376
MAX_COST = SMALL_COMPONENT_MILLI


@dataclass(frozen=True)
class ConfinementOutcome:
    confined: bool
    confining_set: Optional[frozenset] = None

    @property
    def kind(self) -> str:
        return "Confined" if self.confined else "Unconfined"


UNCONFINED = ConfinementOutcome(False)


@dataclass
class RuleEvent:
    rule: str
    measure_before: int
    measure_after: int
    mc_delta: int
    case: int = 0


@dataclass
class ReductionLog:
    """Committed weight ``mc`` plus a tally and ordered trace of rule events."""

    mc: int = 0
    counts: Counter = field(default_factory=Counter)
    events: list[RuleEvent] = field(default_factory=list)
    keep_events: bool = True

    def record(self, rule: str, before: int, after: int, mc_delta: int, case: int = 0) -> None:
        if mc_delta < 0:
            raise AssertionError(f"{rule} tried to decrease mc by {-mc_delta}")
        self.mc += mc_delta
        key = f"{rule}.{case}" if case else rule
        self.counts[key] += 1
        if self.keep_events:
            self.events.append(RuleEvent(rule, before, after, mc_delta, case))


def confine(g: Graph, v: int) -> ConfinementOutcome:
    """Run the confinement procedure from ``{v}``."""
    adj, w = g.adj, g.weight
    s = {v}
    while True:
        ns: set[int] = set()
        for x in s:
            ns |= adj[x]
        closed = ns | s
        satellites: set[int] = set()
        for u in sorted(ns):
            nu = adj[u]
            if w[u] < sum(w[x] for x in nu & s):
                continue
            outside = nu - closed
            if not outside:
                return UNCONFINED
            if len(outside) == 1:
                satellites |= outside
        if not satellites:
            return ConfinementOutcome(True, frozenset(s))
        for x in satellites:
            if adj[x] & satellites:
                return UNCONFINED
        s |= satellites


def _apply(g: Graph, log: ReductionLog, rule: str, mc_delta: int, edit: Callable[[], None],
           case: int = 0) -> bool:
    before = measure(g)
    edit()
    log.record(rule, before, measure(g), mc_delta, case)
    return True


# -- general rules ---------------------------------------------------------

def r0_cleanup(g: Graph, log: ReductionLog) -> bool:
    """Delete every vertex whose weight is not positive."""
    bad = [v for v in g.vertices() if g.weight[v] <= 0]
    if not bad:
        return False
    return _apply(g, log, "R0", 0, lambda: g.delete_vertices(bad))


def r1_unconfined(g: Graph, log: ReductionLog) -> bool:
    adj, w = g.adj, g.weight
    for v in g.vertices():
        wv = w[v]
        if not any(w[u] >= wv for u in adj[v]):
            continue  # no child of {v}: confined immediately
        if not confine(g, v).confined:
            return _apply(g, log, "R1", 0, lambda: g.delete_vertex(v))
    return False


def r2_twin(g: Graph, log: ReductionLog) -> bool:
    groups: dict[frozenset, list[int]] = {}
    for v in g.vertices():
        groups.setdefault(frozenset(g.adj[v]), []).append(v)
    best = None
    for members in groups.values():
        if len(members) >= 2 and (best is None or members[0] < best[0]):
            best = members
    if best is None:
        return False
    u, v = best[0], best[1]

    def edit():
        g.weight[u] += g.weight[v]
        g.delete_vertex(v)

    return _apply(g, log, "R2", 0, edit)


def _is_clique(g: Graph, vs) -> bool:
    vs = list(vs)
    adj = g.adj
    for i, a in enumerate(vs):
        na = adj[a]
        for b in vs[i + 1:]:
            if b not in na:
                return False
    return True


def r3_clique_neighborhood(g: Graph, log: ReductionLog) -> bool:
    adj, w = g.adj, g.weight
    for v in g.vertices():
        wv = w[v]
        if all(wv < w[u] for u in adj[v]) and _is_clique(g, adj[v]):
            nbrs = list(adj[v])

            def edit():
                for u in nbrs:
                    w[u] -= wv
                g.delete_vertex(v)

            return _apply(g, log, "R3", wv, edit)
    return False


def is_heavy(g: Graph, v: int) -> bool:
    w = g.weight
    nbrs = g.adj[v]
    wv = w[v]
    total = sum(w[u] for u in nbrs)
    if wv >= total:
        return True
    if any(w[u] > wv for u in nbrs):
        return False
    return wv >= alpha_induced(g, nbrs)


def r4_heavy(g: Graph, log: ReductionLog) -> bool:
    for v in g.vertices():
        if len(g.adj[v]) <= 5 and is_heavy(g, v):
            closed = g.adj[v] | {v}
            return _apply(g, log, "R4", g.weight[v], lambda: g.delete_vertices(closed))
    return False


# -- degree-2 rules --------------------------------------------------------

def _other(g: Graph, x: int, prev: int) -> int:
    a, b = g.adj[x]
    return b if a == prev else a


def r5_fold_deg2(g: Graph, log: ReductionLog) -> bool:
    adj, w = g.adj, g.weight
    for v in g.vertices():
        if len(adj[v]) != 2:
            continue
        u1, u2 = sorted(adj[v])
        if u2 in adj[u1]:
            continue  # folding across an edge u1u2 is unsound
        w1, w2, wv = w[u1], w[u2], w[v]
        if w1 + w2 > wv >= max(w1, w2):
            nbrs = (adj[u1] | adj[u2]) - {v, u1, u2}

            def edit():
                g.delete_vertices((v, u1, u2))
                g.add_vertex(w1 + w2 - wv, nbrs)

            return _apply(g, log, "R5", wv, edit)
    return False


def _deg2_pairs(g: Graph):
    """Yield (v1, v2, v3, v4) for every path v1-v2-v3-v4 whose middle vertices have degree 2."""
    adj = g.adj
    for v2 in g.vertices():
        if len(adj[v2]) != 2:
            continue
        for v3 in sorted(adj[v2]):
            if len(adj[v3]) != 2:
                continue
            v1 = _other(g, v2, v3)
            v4 = _other(g, v3, v2)
            yield v1, v2, v3, v4


def r6_3path(g: Graph, log: ReductionLog) -> bool:
    w = g.weight
    for v1, v2, v3, v4 in _deg2_pairs(g):
        if len({v1, v2, v3, v4}) != 4:
            continue
        if w[v1] >= w[v2] >= w[v3] >= w[v4]:
            w2 = w[v2]

            def edit():
                g.delete_vertices((v2, v3))
                g.add_edge(v1, v4)
                w[v1] += w[v3] - w2

            return _apply(g, log, "R6", w2, edit)
    return False


def r7_4cycle(g: Graph, log: ReductionLog) -> bool:
    w = g.weight
    for v1, v2, v3, v4 in _deg2_pairs(g):
        if len({v1, v2, v3, v4}) != 4 or v4 not in g.adj[v1]:
            continue
        if w[v1] >= w[v2] >= w[v3]:
            w2 = w[v2]

            def edit():
                g.delete_vertices((v2, v3))
                w[v1] += w[v3] - w2

            return _apply(g, log, "R7", w2, edit)
    return False


def r8_4path(g: Graph, log: ReductionLog) -> bool:
    adj, w = g.adj, g.weight
    for v1, v2, v3, v4 in _deg2_pairs(g):
        if len(adj[v4]) != 2:
            continue
        v5 = _other(g, v4, v3)
        if len({v1, v2, v3, v4, v5}) != 5:
            continue
        if w[v1] >= w[v2] >= w[v3] and w[v3] <= w[v4] <= w[v5]:
            mc = w[v2] + w[v4] - w[v3]

            def edit():
                w[v1] += w[v3] - w[v2]
                w[v5] += w[v3] - w[v4]
                g.delete_vertices((v2, v4))
                g.add_edge(v1, v3)
                g.add_edge(v3, v5)

            return _apply(g, log, "R8", mc, edit)
    return False


def r9_5cycle(g: Graph, log: ReductionLog) -> bool:
    adj, w = g.adj, g.weight
    for v1, v2, v3, v4 in _deg2_pairs(g):
        if len({v1, v2, v3, v4}) != 4 or min(len(adj[v1]), len(adj[v4])) < 3:
            continue
        if not (w[v1] >= w[v2] >= w[v3] and w[v3] <= w[v4]):
            continue
        for v5 in sorted(adj[v1] & adj[v4]):
            if len(adj[v5]) != 2 or v5 in (v2, v3):
                continue
            if w[v3] > w[v5]:
                w5 = w[v5]

                def edit():
                    for x in (v1, v2, v3, v4):
                        w[x] -= w5
                    g.delete_vertex(v5)

                return _apply(g, log, "R9", 2 * w5, edit, case=1)
            w2, w3 = w[v2], w[v3]

            def edit():
                w[v1] -= w2
                w[v4] -= w3
                w[v5] -= w3
                g.delete_vertices((v2, v3))

            return _apply(g, log, "R9", w2 + w3, edit, case=2)
    return False


def r10_6cycle(g: Graph, log: ReductionLog) -> bool:
    adj, w = g.adj, g.weight
    for v1, v2, v3, v4 in _deg2_pairs(g):
        if len({v1, v2, v3, v4}) != 4:
            continue
        for v5 in sorted(adj[v4]):
            if v5 == v3 or len(adj[v5]) != 2:
                continue
            v6 = _other(g, v5, v4)
            if len(adj[v6]) != 2 or _other(g, v6, v5) != v1:
                continue
            if len({v1, v2, v3, v4, v5, v6}) != 6:
                continue
            if not (w[v1] >= max(w[v2], w[v6]) and w[v4] >= max(w[v3], w[v5])
                    and w[v6] >= w[v5]):
                continue
            w2, w3, w5, w6 = w[v2], w[v3], w[v5], w[v6]
            if w2 >= w3:
                def edit():
                    w[v2] = w2 + w6
                    w[v3] = w3 + w5
                    g.delete_vertices((v5, v6))

                return _apply(g, log, "R10", 0, edit, case=1)

            def edit():
                w[v2] = w2 + w6
                w[v3] = w3 + w5
                w[v5] = w6 + w3 - max(w2 + w6, w3 + w5)
                g.delete_vertex(v6)
                g.add_edge(v1, v5)

            return _apply(g, log, "R10", 0, edit, case=2)
    return False


# -- small vertex cuts -----------------------------------------------------

def articulation_points(g: Graph, removed: frozenset = frozenset()) -> set[int]:
    """Articulation points of ``g - removed`` (iterative Tarjan)."""
    adj = g.adj
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    points: set[int] = set()
    counter = 0
    for root in g.vertices():
        if root in removed or root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y in removed:
                    continue
                if y not in disc:
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, x, iter(sorted(adj[y]))))
                    if x == root:
                        root_children += 1
                    advanced = True
                    break
                if y != parent and disc[y] < low[x]:
                    low[x] = disc[y]
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                if low[x] < low[parent]:
                    low[parent] = low[x]
                if parent != root and low[x] >= disc[parent]:
                    points.add(parent)
        if root_children >= 2:
            points.add(root)
    return points


def _components_without(g: Graph, removed: set[int], starts) -> list[list[int]]:
    """Components of ``g - removed`` that contain one of ``starts``, ordered by smallest id."""
    adj = g.adj
    seen: set[int] = set()
    comps = []
    for s in sorted(starts):
        if s in removed or s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen and y not in removed:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    comps.sort()
    return comps


def cost(g: Graph, vs) -> int:
    """Sum of degree costs of ``vs`` using their degrees in ``g``."""
    adj = g.adj
    return sum(delta(len(adj[v])) for v in vs)


def find_cut1(g: Graph, lo: int = R11_MIN_COST, hi: int = MAX_COST):
    """First (u, side) with ``{u}`` a cut vertex and the side's cost in [lo, hi]."""
    for u in sorted(articulation_points(g)):
        for comp in _components_without(g, {u}, g.adj[u]):
            if lo <= cost(g, comp) <= hi:
                return u, comp
    return None


def r11_cut1(g: Graph, log: ReductionLog) -> bool:
    site = find_cut1(g)
    if site is None:
        return False
    u, comp = site
    a1 = alpha_induced(g, comp)
    a2 = alpha_induced(g, set(comp) - g.adj[u])
    if g.weight[u] + a2 <= a1:
        return _apply(g, log, "R11", a1, lambda: g.delete_vertices(comp + [u]), case=1)

    def edit():
        g.weight[u] += a2 - a1
        g.delete_vertices(comp)

    return _apply(g, log, "R11", a1, edit, case=2)


def find_cut2(g: Graph, lo: int = R12_MIN_COST, hi: int = MAX_COST):
    """First (u, u2, side): ``{u, u2}`` separates ``side``, which touches both, cost in [lo, hi]."""
    adj = g.adj
    cut_vertices = articulation_points(g)
    for u in g.vertices():
        inner = articulation_points(g, frozenset((u,)))
        found = []
        for u2 in sorted(inner):
            for comp in _components_without(g, {u, u2}, adj[u2]):
                if adj[u] & set(comp) and lo <= cost(g, comp) <= hi:
                    found.append((u2, comp))
        if u in cut_vertices:
            # {u, u2} also cuts when u already separates and u2 is not a cut vertex of its side
            for side in _components_without(g, {u}, adj[u]):
                side_cost = cost(g, side)
                if side_cost - delta(g.max_degree()) > hi:
                    continue
                for u2 in side:
                    if u2 in inner:
                        continue
                    rest = [x for x in side if x != u2]
                    if rest and adj[u] & set(rest) and lo <= side_cost - delta(len(adj[u2])) <= hi:
                        found.append((u2, rest))
        if found:
            found.sort(key=lambda t: (t[0], t[1]))
            u2, comp = found[0]
            return u, u2, comp
    return None


def cut2_gadget_weights(g: Graph, u: int, u2: int, comp) -> tuple[int, int, int, int, bool]:
    """Weights (a, b, c, offset, swapped) of the replacement gadget for side ``comp``."""
    adj = g.adj
    comp = set(comp)
    full = alpha_induced(g, comp)
    no_u = alpha_induced(g, comp - adj[u])
    no_u2 = alpha_induced(g, comp - adj[u2])
    no_both = alpha_induced(g, comp - adj[u] - adj[u2])
    swapped = no_u < no_u2
    if swapped:
        no_u, no_u2 = no_u2, no_u
    return no_u2 - no_both, no_u - no_both, full - no_u, no_both, swapped


def apply_cut2(g: Graph, log: ReductionLog, u: int, u2: int, comp) -> bool:
    a, b, c, offset, swapped = cut2_gadget_weights(g, u, u2, comp)
    if swapped:
        u, u2 = u2, u

    def edit():
        g.delete_vertices(comp)
        v1 = g.add_vertex(a, (u,))
        g.add_vertex(b, (v1, u2))
        g.add_vertex(c, (u, u2))

    return _apply(g, log, "R12", offset, edit)


def r12_cut2(g: Graph, log: ReductionLog) -> bool:
    site = find_cut2(g)
    if site is None:
        return False
    return apply_cut2(g, log, *site)


RULES: list[tuple[str, Callable[[Graph, ReductionLog], bool]]] = [
    ("R0", r0_cleanup),
    ("R1", r1_unconfined),
    ("R2", r2_twin),
    ("R3", r3_clique_neighborhood),
    ("R4", r4_heavy),
    ("R5", r5_fold_deg2),
    ("R6", r6_3path),
    ("R7", r7_4cycle),
    ("R8", r8_4path),
    ("R9", r9_5cycle),
    ("R10", r10_6cycle),
    ("R11", r11_cut1),
    ("R12", r12_cut2),
]


def reduce_exhaustively(g: Graph, log: Optional[ReductionLog] = None, audit: bool = False) -> ReductionLog:
    """Apply rules in index order, restarting from R0 after every application."""
    if log is None:
        log = ReductionLog()
    limit = 50 * (len(g.adj) + 10) ** 2
    steps = 0
    while True:
        for _, rule in RULES:
            if rule(g, log):
                if audit:
                    g.audit()
                break
        else:
            return log
        steps += 1
        if steps > limit:
            raise RuntimeError(f"reduction did not terminate within {limit} applications")


def is_reduced(g: Graph) -> bool:
    probe = g.copy()
    log = ReductionLog()
    return not any(rule(probe, log) for _, rule in RULES)


# Guaranteed measure decrease per event (milli), keyed by (rule, case); case 0 means any.
EVENT_MIN_DECREASE = {
    ("R5", 0): 2 * DELTA2,
    ("R6", 0): 2 * DELTA2,
    ("R7", 0): 2 * DELTA2,
    ("R8", 0): 2 * DELTA2,
    ("R9", 0): 2 * DELTA3 - DELTA2,
    ("R10", 1): 2 * DELTA3,
    ("R10", 2): DELTA2,
    ("R11", 0): 2 * DELTA3 - DELTA2,
    ("R12", 0): 0,
}


def event_violation(ev: RuleEvent) -> Optional[str]:
    """Describe how ``ev`` falls short of its rule's guaranteed decrease, or None."""
    need = EVENT_MIN_DECREASE.get((ev.rule, ev.case), EVENT_MIN_DECREASE.get((ev.rule, 0)))
    if need is None:
        return None
    dec = ev.measure_before - ev.measure_after
    if dec < need:
        return f"{ev.rule} case {ev.case}: measure fell by {dec} < {need}"
    return None
