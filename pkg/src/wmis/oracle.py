"""Independent exact MWIS solvers used as ground truth and as rule subroutines.

Every function returns the optimum weight as a plain ``int``.
"""

from __future__ import annotations

from typing import Iterable

from .graph import Graph, InvariantError, SMALL_COMPONENT_MILLI, measure

BRUTEFORCE_LIMIT = 30


class OracleRefused(ValueError):
    """The instance is outside the guard of the requested oracle."""


def _bitmask_alpha(weights: list[int], nbr: list[int]) -> int:
    """Branch on a max-degree vertex over bitmask subgraphs; degree <= 1 is solved directly."""

    def rec(mask: int) -> int:
        best_v = -1
        best_d = -1
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            d = (nbr[v] & mask).bit_count()
            if d > best_d:
                best_d, best_v = d, v
                if d > 2:
                    break
        if best_v < 0:
            return 0
        if best_d <= 1:
            total = 0
            m = mask
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                nb = nbr[v] & mask
                if nb:
                    u = nb.bit_length() - 1
                    m &= ~nb
                    total += max(weights[v], weights[u])
                else:
                    total += weights[v]
            return total
        v = best_v
        without = rec(mask & ~(1 << v))
        with_v = weights[v] + rec(mask & ~(1 << v) & ~nbr[v])
        return max(without, with_v)

    return rec((1 << len(weights)) - 1)


def _to_bitmask(g: Graph) -> tuple[list[int], list[int]]:
    ids = g.vertices()
    index = {v: i for i, v in enumerate(ids)}
    weights = [g.weight[v] for v in ids]
    nbr = [0] * len(ids)
    for v in ids:
        bits = 0
        for u in g.adj[v]:
            bits |= 1 << index[u]
        nbr[index[v]] = bits
    return weights, nbr


def mwis_bruteforce(g: Graph) -> int:
    """Exact alpha by exhaustive branching; refuses graphs above 30 alive vertices."""
    if g.n_alive > BRUTEFORCE_LIMIT:
        raise OracleRefused(f"brute force refuses {g.n_alive} > {BRUTEFORCE_LIMIT} vertices")
    weights, nbr = _to_bitmask(g)
    return _bitmask_alpha(weights, nbr)


def _path_alpha(ws: list[int]) -> int:
    take, skip = 0, 0
    for w in ws:
        take, skip = skip + w, max(take, skip)
    return max(take, skip)


def mwis_deg2(g: Graph) -> int:
    """Exact alpha of a graph with maximum degree 2 (paths and cycles) by DP."""
    adj = g.adj
    seen: set[int] = set()
    total = 0
    for s in g.vertices():
        if len(adj[s]) > 2:
            raise InvariantError(f"vertex {s} has degree {len(adj[s])} > 2")
    for s in g.vertices():
        if s in seen:
            continue
        d = len(adj[s])
        if d == 0:
            seen.add(s)
            total += g.weight[s]
            continue
        if d == 2:
            # walk forward to find a path end, or come back around a cycle
            prev, cur = s, next(iter(adj[s]))
            while cur != s and len(adj[cur]) == 2:
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
            if cur == s:
                total += _cycle_alpha(g, s)
                seen.update(_walk(g, s))
                continue
            s = cur
        order = _walk(g, s)
        seen.update(order)
        total += _path_alpha([g.weight[v] for v in order])
    return total


def _walk(g: Graph, s: int) -> list[int]:
    """Vertices of the path or cycle containing ``s``, in traversal order from ``s``."""
    adj = g.adj
    order = [s]
    prev = -1
    cur = s
    while True:
        nxt = [u for u in adj[cur] if u != prev]
        if not nxt or nxt[0] == s:
            break
        prev, cur = cur, nxt[0]
        if cur == s:
            break
        order.append(cur)
        if len(adj[cur]) < 2:
            break
    return order


def _cycle_alpha(g: Graph, anchor: int) -> int:
    order = _walk(g, anchor)
    ws = [g.weight[v] for v in order]
    # anchor excluded, or anchor included with both cycle neighbors excluded
    excluded = _path_alpha(ws[1:])
    included = ws[0] + _path_alpha(ws[2:-1])
    return max(excluded, included)


def solve_small_component(g: Graph) -> int:
    """Exact alpha for measure <= 10: enumerate independent subsets of the
    degree >= 3 vertices, drop the rest of them, and finish with :func:`mwis_deg2`."""
    if measure(g) > SMALL_COMPONENT_MILLI:
        raise OracleRefused(f"measure {measure(g)} exceeds {SMALL_COMPONENT_MILLI} milli")
    ids = g.vertices()
    high = [v for v in ids if len(g.adj[v]) >= 3]
    if not high:
        return mwis_deg2(g)
    low = [v for v in ids if len(g.adj[v]) < 3]
    base = g.induced(low)
    low_index = {v: i for i, v in enumerate(low)}
    best = 0

    def extend(i: int, chosen: list[int], blocked: set[int]) -> None:
        nonlocal best
        if i == len(high):
            rest = base.copy()
            for v in blocked:
                j = low_index.get(v)
                if j is not None and rest.alive[j]:
                    rest.delete_vertex(j)
            value = sum(g.weight[v] for v in chosen) + mwis_deg2(rest)
            if value > best:
                best = value
            return
        v = high[i]
        extend(i + 1, chosen, blocked)
        if v not in blocked:
            extend(i + 1, chosen + [v], blocked | g.adj[v])

    extend(0, [], set())
    return best


def alpha_induced(g: Graph, s: Iterable[int]) -> int:
    """Alpha of G[s] without touching ``g``."""
    sub = g.induced(s)
    if sub.n_alive == 0:
        return 0
    if measure(sub) <= SMALL_COMPONENT_MILLI:
        return solve_small_component(sub)
    return mwis_bruteforce(sub)
