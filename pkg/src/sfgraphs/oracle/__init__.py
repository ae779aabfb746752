"""Exact solvers for maximum matching, maximum independent set and minimum
dominating set: optimum sizes, exact optimum counts and witnesses, with
optional constraints on two designated boundary vertices.
"""

from .solvers import (
    BoundaryConstraint,
    OracleBudget,
    Requirement,
    SolveResult,
    classified_constraints,
    classified_table,
    is_unique_optimum,
    max_independent_set,
    max_matching,
    min_dominating_set,
    small_dominating_sets,
    solve,
)

__all__ = [
    "BoundaryConstraint",
    "OracleBudget",
    "Requirement",
    "SolveResult",
    "classified_constraints",
    "classified_table",
    "is_unique_optimum",
    "max_independent_set",
    "max_matching",
    "min_dominating_set",
    "small_dominating_sets",
    "solve",
]
