"""Self-similar scale-free graph families and exact solvers for matching,
independent set and dominating set problems on them."""

from .decimation import (
    CountState,
    Quantity,
    SizeTriple,
    count_closed_form,
    count_recursion,
    headline_closed_form,
    self_check,
    size_closed_form,
    size_recursion,
)
from .errors import CapabilityError, FormulaRangeError, SFGraphError, UsageError
from .generators import Method, Model, ModelParams, boundary, build, predicted_counts
from .graph import EdgeKind, Graph, Role, VertexMeta, bfs_distances, induced_subgraph, isomorphic, neighbors
from .oracle import (
    BoundaryConstraint,
    OracleBudget,
    Requirement,
    SolveResult,
    classified_table,
    is_unique_optimum,
    max_independent_set,
    max_matching,
    min_dominating_set,
)
from .problems import Problem

__version__ = "0.1.0"

__all__ = [
    "BoundaryConstraint",
    "CapabilityError",
    "CountState",
    "EdgeKind",
    "FormulaRangeError",
    "Graph",
    "Method",
    "Model",
    "ModelParams",
    "OracleBudget",
    "Problem",
    "Quantity",
    "Requirement",
    "Role",
    "SFGraphError",
    "SizeTriple",
    "SolveResult",
    "UsageError",
    "VertexMeta",
    "bfs_distances",
    "boundary",
    "build",
    "classified_table",
    "count_closed_form",
    "count_recursion",
    "headline_closed_form",
    "induced_subgraph",
    "is_unique_optimum",
    "isomorphic",
    "max_independent_set",
    "max_matching",
    "min_dominating_set",
    "neighbors",
    "predicted_counts",
    "self_check",
    "size_closed_form",
    "size_recursion",
]
