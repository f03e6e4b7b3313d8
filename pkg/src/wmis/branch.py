"""Structural detectors, the two branching rules and the step selector S3..S12."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .graph import DELTA2, DELTA3, DELTA_STEP, Graph, delta
from .reduce import confine


class CoverageError(RuntimeError):
    """No branching step applies, or a step's structural guarantee is missing."""


@dataclass(frozen=True)
class BranchDecision:
    step: str
    vertex: Optional[int] = None
    cycle: Optional[tuple[int, int, int, int]] = None

    @property
    def kind(self) -> str:
        return "OnVertex" if self.cycle is None else "On4Cycle"


@dataclass
class ChildInstance:
    graph: Graph
    mc_delta: int


# -- branching rules -------------------------------------------------------

def _child(g: Graph, removed, mc_delta: int) -> ChildInstance:
    h = g.copy()
    h.delete_vertices(removed)
    return ChildInstance(h.compacted(), mc_delta)


def branch_on_vertex(g: Graph, v: int) -> tuple[ChildInstance, ChildInstance]:
    """Exclude ``v``, or take its confining set and drop its closed neighborhood."""
    outcome = confine(g, v)
    if not outcome.confined:
        raise CoverageError(f"branch vertex {v} is unconfined; R1 was not exhausted")
    s = outcome.confining_set
    exclude = _child(g, (v,), 0)
    include = _child(g, g.closed_neighborhood(s), g.total_weight(s))
    return exclude, include


def branch_on_4cycle(g: Graph, cycle: tuple[int, int, int, int]) -> tuple[ChildInstance, ChildInstance]:
    """Drop the opposite pair {v1, v3} in one child and {v2, v4} in the other."""
    v1, v2, v3, v4 = cycle
    adj = g.adj
    if len(set(cycle)) != 4 or not (v2 in adj[v1] and v3 in adj[v2] and v4 in adj[v3] and v1 in adj[v4]):
        raise CoverageError(f"{cycle} is not a 4-cycle")
    return _child(g, (v1, v3), 0), _child(g, (v2, v4), 0)


# -- detectors -------------------------------------------------------------

def find_chain_neighbors(g: Graph, v: int) -> list[tuple[int, list[int]]]:
    """For each edge leaving ``v``, the first vertex of degree != 2 reached and the
    degree-2 interior walked through. A chain returning to ``v`` ends at ``v``."""
    adj = g.adj
    out = []
    for x in sorted(adj[v]):
        prev, cur = v, x
        interior: list[int] = []
        while cur != v and len(adj[cur]) == 2:
            interior.append(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        out.append((cur, interior))
    return out


def _chains(g: Graph) -> dict[int, list[tuple[int, list[int]]]]:
    """Chains between degree >= 3 vertices, keyed by their start vertex."""
    out = {}
    for v in g.vertices():
        if len(g.adj[v]) >= 3:
            out[v] = [(u, ch) for u, ch in find_chain_neighbors(g, v) if len(g.adj[u]) >= 3]
    return out


def find_cycle_with_k_deg3(g: Graph, k: int) -> Optional[list[int]]:
    """A cycle passing through exactly ``k`` (1..3) vertices of degree >= 3, in cycle order."""
    chains = _chains(g)
    if k == 1:
        for a in sorted(chains):
            for b, ch in chains[a]:
                if b == a:
                    return [a] + ch
        return None
    if k == 2:
        for a in sorted(chains):
            by_end: dict[int, list[list[int]]] = {}
            for b, ch in chains[a]:
                if b != a:
                    by_end.setdefault(b, []).append(ch)
            for b in sorted(by_end):
                if len(by_end[b]) >= 2:
                    c1, c2 = by_end[b][0], by_end[b][1]
                    return [a] + c1 + [b] + list(reversed(c2))
        return None
    if k == 3:
        tri = _contracted_triangle(chains)
        if tri is None:
            return None
        (a, b, c), (ab, bc, ca) = tri
        return [a] + ab + [b] + bc + [c] + ca
    raise ValueError("only k in 1..3 is supported")


def _contracted_triangle(chains, skip: int = 0):
    found = 0
    for a in sorted(chains):
        ends = {}
        for b, ch in chains[a]:
            if b != a:
                ends.setdefault(b, ch)
        for b, c in combinations(sorted(ends), 2):
            if not (a < b < c):
                continue
            bc = next((ch for e, ch in chains[b] if e == c), None)
            if bc is None:
                continue
            if found == skip:
                return (a, b, c), (ends[b], bc, list(reversed(ends[c])))
            found += 1
    return None


def _contracted_triangles(chains):
    i = 0
    while True:
        tri = _contracted_triangle(chains, i)
        if tri is None:
            return
        yield tri
        i += 1


def _closest_deg3_chain_neighbor(g: Graph, v: int, exclude) -> Optional[int]:
    cands = [(len(ch), u) for u, ch in find_chain_neighbors(g, v)
             if u != v and len(g.adj[u]) >= 3 and u not in exclude]
    return min(cands)[1] if cands else None


def _first_4cycle(g: Graph, chord: bool) -> Optional[tuple[int, int, int, int]]:
    """Lexicographically first 4-cycle (v1, v2, v3, v4); with ``chord`` require edge v1v3."""
    adj = g.adj
    best = None
    for v1 in g.vertices():
        for v3 in g.vertices():
            if v3 <= v1 or (v3 in adj[v1]) != chord:
                continue
            common = sorted(adj[v1] & adj[v3])
            if len(common) >= 2:
                cand = (v1, common[0], v3, common[1])
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return best
    return best


def _first_triangle(g: Graph) -> Optional[tuple[int, int, int]]:
    adj = g.adj
    for a in g.vertices():
        for b in sorted(adj[a]):
            if b <= a:
                continue
            common = sorted(x for x in adj[a] & adj[b] if x > b)
            if common:
                return a, b, common[0]
    return None


def select_branch(g: Graph) -> BranchDecision:
    """First applicable step among S3..S12 on a reduced, nonempty graph."""
    adj, w = g.adj, g.weight
    verts = g.vertices()
    deg = {v: len(adj[v]) for v in verts}
    dmax = max(deg.values(), default=0)

    if dmax >= 5:
        return BranchDecision("S3", vertex=min(v for v in verts if deg[v] == dmax))
    c = _first_4cycle(g, chord=True)
    if c is not None:
        return BranchDecision("S4", cycle=c)
    if dmax == 4:
        return BranchDecision("S5", vertex=min(v for v in verts if deg[v] == 4))
    c = _first_4cycle(g, chord=False)
    if c is not None:
        return BranchDecision("S6", cycle=c)

    tri = _first_triangle(g)
    if tri is not None:
        v1 = max(tri, key=lambda x: (w[x], -x))
        u = _closest_deg3_chain_neighbor(g, v1, tri)
        if u is None:
            raise CoverageError(f"triangle {tri}: vertex {v1} has no degree-3 chain-neighbor outside it")
        return BranchDecision("S7", vertex=u)

    chains = _chains(g)
    for (a, b, c3), _ in _contracted_triangles(chains):
        for v1 in (a, b, c3):
            u = _closest_deg3_chain_neighbor(g, v1, (a, b, c3))
            if u is not None:
                return BranchDecision("S8", vertex=u)
        raise CoverageError(f"cycle through {a, b, c3} has no outside chain-neighbor")

    deg3 = [v for v in verts if deg[v] == 3]
    n3 = {v: sum(1 for x in adj[v] if deg[x] == 3) for v in deg3}

    for u in deg3:
        if n3[u] == 1 and sum(1 for x in adj[u] if deg[x] == 2) == 2:
            return BranchDecision("S9", vertex=next(x for x in sorted(adj[u]) if deg[x] == 3))

    for u in deg3:
        if n3[u] != 0:
            continue
        cands = [(len(ch), v) for v, ch in find_chain_neighbors(g, u)
                 if v != u and deg.get(v) == 3 and n3[v] == 2]
        if cands:
            return BranchDecision("S10", vertex=min(cands)[1])

    for comp in g.components():
        if not any(n3.get(v, 0) >= 2 for v in comp):
            continue
        u = max(comp, key=lambda x: (w[x], -x))
        nbrs = [x for x in sorted(adj[u]) if deg[x] == 3]
        if deg[u] != 3 or not nbrs:
            raise CoverageError(f"max-weight vertex {u} of its component has no degree-3 neighbor")
        return BranchDecision("S11", vertex=nbrs[0])

    if deg3:
        return BranchDecision("S12", vertex=deg3[0])
    raise CoverageError("no branching step applies")


def branch(g: Graph, decision: BranchDecision) -> tuple[ChildInstance, ChildInstance]:
    if decision.cycle is not None:
        return branch_on_4cycle(g, decision.cycle)
    return branch_on_vertex(g, decision.vertex)


# -- claimed measure decreases ---------------------------------------------

_D4 = delta(4)
_D3M1 = DELTA3 - DELTA2  # 624, the cost of losing one degree at degree >= 3

STEP_VECTORS: dict[str, list[tuple[int, int]]] = {
    "S4": [(3 * _D4 + _D3M1, 4 * _D4 + 2 * _D3M1), (4 * _D4, 2 * _D4 + 2 * DELTA3 + 2 * DELTA2)],
    "S6": [(6 * DELTA3 - 2 * DELTA2,) * 2],
    "S7": [(6 * DELTA3 - 3 * DELTA2, 7 * DELTA3 + DELTA2),
           (6 * DELTA3 - 2 * DELTA2, 5 * DELTA3 + 2 * DELTA2)],
    "S8": [(6 * DELTA3 - 4 * DELTA2, 8 * DELTA3 - 2 * DELTA2),
           (6 * DELTA3 - 3 * DELTA2, 6 * DELTA3 - DELTA2),
           (6 * DELTA3 - 2 * DELTA2,) * 2],
    "S9": [(4 * DELTA3 - DELTA2, 8 * DELTA3 - DELTA2),
           (4 * DELTA3, 8 * DELTA3 - 4 * DELTA2),
           (4 * DELTA3 + DELTA2, 6 * DELTA3)],
    "S10": [(4 * DELTA3, 8 * DELTA3 - 2 * DELTA2)],
    "S11": [(4 * DELTA3 - DELTA2, 8 * DELTA3 - DELTA2), (4 * DELTA3, 8 * DELTA3 - 4 * DELTA2)],
    "S12": [(4 * DELTA3 + 6 * DELTA2,) * 2],
}

# S5 vectors indexed by the number of degree-2 neighbors of the branch vertex
S5_VECTORS = {
    4: (_D4 + 4 * DELTA3, _D4 + 4 * DELTA3),
    3: (_D4 + 3 * DELTA3 + _D3M1, 4 * _D4 - 2 * DELTA3 + 4 * DELTA2),
    2: (_D4 + 2 * DELTA3 + 2 * _D3M1, 4 * _D4 - DELTA3 + 3 * DELTA2),
    1: (_D4 + DELTA3 + 3 * _D3M1, 4 * _D4 + 2 * DELTA2),
    0: (_D4 + 4 * _D3M1, 4 * _D4 + DELTA3 + DELTA2),
}


def claimed_vectors(g: Graph, decision: BranchDecision) -> list[tuple[int, int]]:
    """Branching vectors (milli) that a step's children must cover."""
    if decision.step == "S3":
        d = len(g.adj[decision.vertex])
        return [(delta(d) + d * DELTA_STEP, delta(d) + d * DELTA3)]
    if decision.step == "S5":
        v = decision.vertex
        q2 = sum(1 for x in g.adj[v] if len(g.adj[x]) == 2)
        return [S5_VECTORS[q2]]
    return STEP_VECTORS[decision.step]


def covers(decrease: tuple[int, int], vectors, escape: int = 10_000) -> bool:
    """True when the observed decrease pair dominates one claimed vector.

    Order is ignored (the branching factor is symmetric), and a branch that
    drops the measure by more than ``escape`` always counts as covered.
    """
    obs = sorted(decrease)
    for vec in vectors:
        need = sorted(vec)
        if all(o >= n or o > escape for o, n in zip(obs, need)):
            return True
    return False


# -- reduced-instance structure --------------------------------------------

def reduced_structure_violations(g: Graph) -> list[str]:
    """Structural facts every fixed point of the reduction rules should satisfy."""
    from .reduce import find_cut1, find_cut2

    adj = g.adj
    out = []
    verts = g.vertices()
    for v in verts:
        d = len(adj[v])
        if d < 2:
            out.append(f"vertex {v} has degree {d}")
        elif d == 2:
            a, b = adj[v]
            if b in adj[a]:
                out.append(f"degree-2 vertex {v} lies on a triangle")
    for v in verts:
        if len(adj[v]) < 3:
            continue
        for u, chain in find_chain_neighbors(g, v):
            if len(chain) >= 3:
                out.append(f"chain from {v} has {len(chain)} degree-2 vertices")
    for comp in g.components():
        if all(len(adj[v]) <= 2 for v in comp) and len(comp) >= 3:
            out.append(f"component at {comp[0]} is a bare path or cycle")
    for k in (1, 2):
        cyc = find_cycle_with_k_deg3(g, k)
        if cyc is not None:
            out.append(f"cycle {cyc} has only {k} vertices of degree >= 3")
    if find_cut1(g) is not None:
        out.append("a 1-cut in the rule window remains")
    if find_cut2(g) is not None:
        out.append("a 2-cut in the rule window remains")
    return out
