"""Mutable vertex-weighted simple graph and the degree-based measure."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator


class FormatError(ValueError):
    """Raised when graph input is malformed (bad endpoints, self-loops, weights)."""


class InvariantError(RuntimeError):
    """Raised when an internal graph invariant is violated."""


# Degree costs in milli-units: 0, 0, 376, 1000, then +624 per extra degree.
DELTA2 = 376
DELTA3 = 1000
DELTA_STEP = 624
SMALL_COMPONENT_MILLI = 10_000


def delta(i: int) -> int:
    """Cost of a degree-``i`` vertex in milli-units."""
    if i <= 1:
        return 0
    if i == 2:
        return DELTA2
    return DELTA3 + DELTA_STEP * (i - 3)


class Graph:
    """Undirected simple graph with exact integer vertex weights.

    Vertex ids are dense indices. Deleted ids become tombstones and are never
    reused by the same instance; :meth:`compacted` renumbers them away.
    """

    __slots__ = ("adj", "weight", "alive", "n_alive", "m_alive")

    def __init__(self) -> None:
        self.adj: list[set[int]] = []
        self.weight: list[int] = []
        self.alive: list[bool] = []
        self.n_alive = 0
        self.m_alive = 0

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, weights: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls()
        for w in weights:
            if not isinstance(w, int) or isinstance(w, bool):
                raise FormatError(f"weight {w!r} is not an integer")
            if w < 0:
                raise FormatError(f"weight {w} is negative")
            g.adj.append(set())
            g.weight.append(w)
            g.alive.append(True)
        g.n_alive = len(g.adj)
        n = g.n_alive
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"edge ({u}, {v}) has an endpoint out of range 0..{n - 1}")
            if u == v:
                raise FormatError(f"self-loop at vertex {u}")
            if v not in g.adj[u]:
                g.adj[u].add(v)
                g.adj[v].add(u)
                g.m_alive += 1
        return g

    def copy(self) -> "Graph":
        """Snapshot sharing no mutable state with ``self``; ids are preserved."""
        g = Graph()
        g.adj = [set(a) for a in self.adj]
        g.weight = list(self.weight)
        g.alive = list(self.alive)
        g.n_alive = self.n_alive
        g.m_alive = self.m_alive
        return g

    def compacted(self) -> "Graph":
        """Copy holding only alive vertices, renumbered in increasing id order."""
        g, _ = self.compacted_with_map()
        return g

    def compacted_with_map(self) -> tuple["Graph", dict[int, int]]:
        ids = [v for v in range(len(self.alive)) if self.alive[v]]
        index = {v: i for i, v in enumerate(ids)}
        g = Graph()
        g.adj = [{index[u] for u in self.adj[v]} for v in ids]
        g.weight = [self.weight[v] for v in ids]
        g.alive = [True] * len(ids)
        g.n_alive = len(ids)
        g.m_alive = self.m_alive
        return g, index

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Compact induced subgraph on ``vertices`` (new ids follow sorted order)."""
        ids = sorted(v for v in set(vertices) if self.alive[v])
        index = {v: i for i, v in enumerate(ids)}
        g = Graph()
        m2 = 0
        for v in ids:
            nb = {index[u] for u in self.adj[v] if u in index}
            m2 += len(nb)
            g.adj.append(nb)
        g.weight = [self.weight[v] for v in ids]
        g.alive = [True] * len(ids)
        g.n_alive = len(ids)
        g.m_alive = m2 // 2
        return g

    # -- mutation ---------------------------------------------------------

    def delete_vertex(self, v: int) -> None:
        if not (0 <= v < len(self.alive)) or not self.alive[v]:
            raise InvariantError(f"delete of dead or unknown vertex {v}")
        adj = self.adj
        for u in adj[v]:
            adj[u].discard(v)
        self.m_alive -= len(adj[v])
        adj[v] = set()
        self.alive[v] = False
        self.n_alive -= 1

    def delete_vertices(self, vs: Iterable[int]) -> None:
        for v in sorted(set(vs)):
            self.delete_vertex(v)

    def add_vertex(self, w: int, neighbors: Iterable[int] = ()) -> int:
        nbrs = set(neighbors)
        for u in nbrs:
            if not (0 <= u < len(self.alive)) or not self.alive[u]:
                raise InvariantError(f"new vertex attached to dead or unknown vertex {u}")
        v = len(self.adj)
        self.adj.append(nbrs)
        self.weight.append(w)
        self.alive.append(True)
        for u in nbrs:
            self.adj[u].add(v)
        self.n_alive += 1
        self.m_alive += len(nbrs)
        return v

    def add_edge(self, u: int, v: int) -> bool:
        """Insert edge ``uv``; return False if it was already present."""
        if u == v:
            raise InvariantError(f"self-loop at vertex {u}")
        if not (self.alive[u] and self.alive[v]):
            raise InvariantError(f"edge ({u}, {v}) touches a dead vertex")
        if v in self.adj[u]:
            return False
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m_alive += 1
        return True

    # -- queries ----------------------------------------------------------

    def vertices(self) -> list[int]:
        """Alive vertex ids in increasing order."""
        alive = self.alive
        return [v for v in range(len(alive)) if alive[v]]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in self.vertices():
            for u in sorted(self.adj[v]):
                if v < u:
                    yield v, u

    def total_weight(self, vs: Iterable[int]) -> int:
        return sum(self.weight[v] for v in vs)

    def closed_neighborhood(self, vs: Iterable[int]) -> set[int]:
        out = set(vs)
        for v in list(out):
            out |= self.adj[v]
        return out

    def open_neighborhood(self, vs: Iterable[int]) -> set[int]:
        s = set(vs)
        return self.closed_neighborhood(s) - s

    def max_degree(self) -> int:
        return max((len(self.adj[v]) for v in self.vertices()), default=0)

    def components(self) -> list[list[int]]:
        """Connected components as sorted id lists, ordered by smallest id."""
        seen = set()
        comps = []
        adj = self.adj
        for s in self.vertices():
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comp.sort()
            comps.append(comp)
        return comps

    def audit(self) -> None:
        """Check symmetry, simplicity and the cached counts; raise on violation."""
        n = 0
        deg_sum = 0
        for v in range(len(self.adj)):
            if not self.alive[v]:
                if self.adj[v]:
                    raise InvariantError(f"dead vertex {v} keeps neighbors")
                continue
            n += 1
            deg_sum += len(self.adj[v])
            if v in self.adj[v]:
                raise InvariantError(f"self-loop at {v}")
            for u in self.adj[v]:
                if not self.alive[u]:
                    raise InvariantError(f"vertex {v} adjacent to dead vertex {u}")
                if v not in self.adj[u]:
                    raise InvariantError(f"asymmetric edge ({v}, {u})")
        if n != self.n_alive:
            raise InvariantError(f"n_alive cache {self.n_alive} != {n}")
        if deg_sum != 2 * self.m_alive:
            raise InvariantError(f"m_alive cache {self.m_alive} != {deg_sum / 2}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n_alive}, m={self.m_alive})"


def new_graph(weights: Iterable[int], edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph; duplicate edges collapse, bad endpoints raise FormatError."""
    return Graph.from_edges(weights, edges)


def measure(g: Graph, vertices: Iterable[int] | None = None) -> int:
    """Sum of degree costs over alive vertices (or over ``vertices``), in milli-units."""
    adj = g.adj
    if vertices is None:
        vertices = g.vertices()
    return sum(delta(len(adj[v])) for v in vertices)


def measure_upper_bound(n: int, m: int) -> int:
    """Largest measure a graph with n vertices and m edges can have, in milli-units."""
    return max(0, 1248 * m - 872 * n)
