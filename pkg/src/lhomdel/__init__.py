"""Exact solvers and target-graph analysis for list-homomorphism
vertex- and edge-deletion problems over a fixed target graph H."""

from .graphs import (Infeasible, Instance, ParseError, Solution, TargetGraph,
                     dominates, max_incomparable, parse_instance, parse_target,
                     reduce_lists)

__all__ = [
    "Infeasible", "Instance", "ParseError", "Solution", "TargetGraph",
    "dominates", "max_incomparable", "parse_instance", "parse_target",
    "reduce_lists",
]
