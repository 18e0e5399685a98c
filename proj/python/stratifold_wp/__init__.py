"""Word problem for fundamental groups of 2-stratifolds."""

from ._core import Graph, Solver, StratifoldError, load_graph, parse_graph, word_problem

__all__ = ["Graph", "Solver", "StratifoldError", "load_graph", "parse_graph", "word_problem"]
