"""Exact densest-k-subgraph solvers for outerplanar and b-outerplanar graphs."""

from dks.graph import Graph, load_graph, parse_edge_list, parse_json
from dks.report import SolveReport

# Rebinding `solve` here shadows the `dks.solve` submodule attribute with
# the function, on purpose: `dks.solve(g, k)` is the package's front door.
# The submodule stays importable by its dotted path either way.
from dks.solve import solve, solve_bouterplanar, solve_outerplanar

__all__ = [
    "Graph", "SolveReport", "load_graph", "parse_edge_list", "parse_json",
    "solve", "solve_bouterplanar", "solve_outerplanar",
]
