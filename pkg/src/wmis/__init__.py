"""Exact maximum weighted independent set by branch and reduce."""

from .graph import FormatError, Graph, InvariantError, delta, measure, measure_upper_bound, new_graph
from .oracle import mwis_bruteforce, solve_small_component
from .reduce import reduce_exhaustively
from .solver import SolveResult, SolveStats, solve, solve_components

__all__ = [
    "FormatError", "Graph", "InvariantError", "SolveResult", "SolveStats", "delta", "measure",
    "measure_upper_bound", "mwis_bruteforce", "new_graph", "reduce_exhaustively", "solve",
    "solve_components", "solve_small_component",
]
