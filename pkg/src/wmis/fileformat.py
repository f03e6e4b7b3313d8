"""Plain-text instance format.

    c any comment
    p wmis <n> <m>
    v <id> <weight>     exactly n lines, ids 1..n
    e <u> <v>           exactly m lines

A kernel written by ``reduce`` ends with the comment ``c mc <value>``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .graph import FormatError, Graph, new_graph


class ParseError(FormatError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} {tok!r} is not an integer") from None


def parse_instance(text: str) -> tuple[Graph, Optional[int]]:
    """Parse an instance; returns the graph and the ``c mc`` trailer value if present."""
    n = m = None
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    mc = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok:
            continue
        kind = tok[0]
        if kind == "c":
            if len(tok) == 3 and tok[1] == "mc":
                mc = _int(tok[2], lineno, "mc")
            continue
        if kind == "p":
            if n is not None:
                raise ParseError(lineno, "second header line")
            if len(tok) != 4 or tok[1] != "wmis":
                raise ParseError(lineno, "header must read 'p wmis <n> <m>'")
            n, m = _int(tok[2], lineno, "n"), _int(tok[3], lineno, "m")
            if n < 0 or m < 0:
                raise ParseError(lineno, "n and m must be nonnegative")
            continue
        if n is None:
            raise ParseError(lineno, f"{kind!r} line before the header")
        if kind == "v":
            if len(tok) != 3:
                raise ParseError(lineno, "vertex line must read 'v <id> <weight>'")
            v, w = _int(tok[1], lineno, "vertex id"), _int(tok[2], lineno, "weight")
            if not 1 <= v <= n:
                raise ParseError(lineno, f"vertex id {v} outside 1..{n}")
            if v in weights:
                raise ParseError(lineno, f"vertex {v} listed twice")
            if w < 0:
                raise ParseError(lineno, f"weight {w} is negative")
            weights[v] = w
        elif kind == "e":
            if len(tok) != 3:
                raise ParseError(lineno, "edge line must read 'e <u> <v>'")
            a, b = _int(tok[1], lineno, "endpoint"), _int(tok[2], lineno, "endpoint")
            for x in (a, b):
                if not 1 <= x <= n:
                    raise ParseError(lineno, f"endpoint {x} outside 1..{n}")
            if a == b:
                raise ParseError(lineno, f"self-loop at {a}")
            key = (min(a, b), max(a, b))
            if key in seen_edges:
                raise ParseError(lineno, f"duplicate edge {a} {b}")
            seen_edges.add(key)
            edges.append((a - 1, b - 1))
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    if n is None:
        raise ParseError(0, "missing 'p wmis' header")
    if len(weights) != n:
        missing = min(set(range(1, n + 1)) - set(weights))
        raise ParseError(0, f"expected {n} vertex lines, got {len(weights)} (first missing id {missing})")
    if len(edges) != m:
        raise ParseError(0, f"header declares {m} edges, found {len(edges)}")
    return new_graph([weights[v] for v in range(1, n + 1)], edges), mc


def read_instance(path: str) -> tuple[Graph, Optional[int]]:
    with open(path) as fh:
        return parse_instance(fh.read())


def format_instance(g: Graph, mc: Optional[int] = None, comments: Iterable[str] = ()) -> str:
    """Serialize ``g`` with compacted 1-based ids."""
    h = g.compacted()
    lines = [f"c {c}" for c in comments]
    lines.append(f"p wmis {h.n_alive} {h.m_alive}")
    lines += [f"v {v + 1} {h.weight[v]}" for v in range(h.n_alive)]
    lines += [f"e {a + 1} {b + 1}" for a, b in h.edges()]
    if mc is not None:
        lines.append(f"c mc {mc}")
    return "\n".join(lines) + "\n"


def write_instance(path: str, g: Graph, mc: Optional[int] = None, comments: Iterable[str] = ()) -> None:
    with open(path, "w") as fh:
        fh.write(format_instance(g, mc, comments))
