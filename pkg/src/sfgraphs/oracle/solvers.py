"""Exact optimum and optimum-count solvers with boundary constraints."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from ..errors import CapabilityError, UsageError
from ..generators import boundary
from ..graph import Graph
from ..problems import Problem
from ._engine import Engine
from .searches import DominatingSetSearch, IndependentSetSearch, MatchingSearch

__all__ = [
    "Requirement",
    "BoundaryConstraint",
    "OracleBudget",
    "SolveResult",
    "max_matching",
    "max_independent_set",
    "min_dominating_set",
    "solve",
    "classified_table",
    "classified_constraints",
    "is_unique_optimum",
    "small_dominating_sets",
]


class Requirement(str, Enum):
    SATURATED = "saturated"
    UNSATURATED = "unsaturated"
    IN = "in"
    OUT = "out"
    FREE = "free"


_MATCHING_REQS = {Requirement.SATURATED, Requirement.UNSATURATED, Requirement.FREE}
_VERTEX_REQS = {Requirement.IN, Requirement.OUT, Requirement.FREE}


@dataclass(frozen=True)
class BoundaryConstraint:
    """Requirements on at most two designated vertices."""

    requirements: tuple[tuple[int, Requirement], ...] = ()

    def __post_init__(self):
        vs = [v for v, _ in self.requirements]
        if len(vs) > 2 or len(set(vs)) != len(vs):
            raise UsageError("a constraint designates at most two distinct vertices")

    @classmethod
    def free(cls) -> "BoundaryConstraint":
        return cls()

    @classmethod
    def of(cls, requirements: Mapping[int, Requirement | str]) -> "BoundaryConstraint":
        return cls(tuple(sorted((int(v), Requirement(r)) for v, r in requirements.items())))

    def active(self) -> list[tuple[int, Requirement]]:
        return [(v, r) for v, r in self.requirements if r is not Requirement.FREE]

    def validate(self, g: Graph, problem: Problem) -> None:
        allowed = _MATCHING_REQS if problem is Problem.MATCHING else _VERTEX_REQS
        for v, r in self.requirements:
            if not 0 <= v < g.vertex_count:
                raise UsageError(f"constraint vertex {v} out of range")
            if r not in allowed:
                raise UsageError(f"requirement {r.value!r} does not apply to {problem.value}")

    def to_json(self) -> dict[str, str]:
        return {str(v): r.value for v, r in self.requirements}


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 200
    max_seconds: float | None = 600.0
    max_witnesses: int = 1000

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_witnesses < 0:
            raise UsageError("budget limits must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise UsageError("time budget must be positive")


@dataclass
class SolveResult:
    """Optimum size and exact number of optimal solutions.

    ``optimum`` is ``None`` (and ``count`` is 0) when no solution satisfies
    the constraint.  ``witnesses`` holds at most the budgeted number of
    optimal solutions, as sorted tuples of vertices or edges.
    """

    problem: Problem
    optimum: int | None
    count: int
    witnesses: list[tuple] | None = None
    truncated: bool = False
    constraint: BoundaryConstraint = field(default_factory=BoundaryConstraint)
    breakdown: dict[int, "SolveResult"] | None = None

    @property
    def feasible(self) -> bool:
        return self.count > 0


def _check_budget(g: Graph, budget: OracleBudget) -> None:
    if g.vertex_count > budget.max_vertices:
        raise CapabilityError(
            f"graph has {g.vertex_count} vertices; oracle budget allows {budget.max_vertices}"
        )


def _roots(problem: Problem, search, g: Graph, c: BoundaryConstraint):
    """Root alternatives (a partition) encoding the constraint."""
    full = (1 << g.vertex_count) - 1
    reqs = c.active()
    if problem is Problem.MATCHING:
        alts = [((), full)]
        for v, r in reqs:
            nxt = []
            for items, mask in alts:
                if r is Requirement.UNSATURATED:
                    if mask >> v & 1:
                        nxt.append((items, mask & ~(1 << v)))
                elif not mask >> v & 1:
                    nxt.append((items, mask))  # already matched by an earlier step
                else:
                    nxt.extend((items + e, m) for e, m in search.saturate(mask, v))
            alts = nxt
        return alts
    if problem is Problem.INDEPENDENT_SET:
        items, mask = (), full
        for v, r in reqs:
            if r is Requirement.OUT:
                mask &= ~(1 << v)
            elif not mask >> v & 1:
                return []
            else:
                items += (v,)
                mask &= ~((1 << v) | search.adj[v])
        return [(items, mask)]
    items, cand, undom = (), full, full
    for v, r in reqs:
        cand &= ~(1 << v)
        if r is Requirement.IN:
            items += (v,)
            undom &= ~search.closed[v]
    return [(items, (cand, undom))]


_SEARCHES = {
    Problem.MATCHING: MatchingSearch,
    Problem.INDEPENDENT_SET: IndependentSetSearch,
    Problem.DOMINATING_SET: DominatingSetSearch,
}


def solve(
    g: Graph,
    problem: Problem | str,
    constraint: BoundaryConstraint | None = None,
    budget: OracleBudget | None = None,
    *,
    witnesses: bool = True,
    engine: Engine | None = None,
) -> SolveResult:
    """Exact optimum and count for ``problem`` on ``g`` under ``constraint``."""
    problem = Problem(problem)
    constraint = constraint or BoundaryConstraint()
    budget = budget or OracleBudget()
    constraint.validate(g, problem)
    _check_budget(g, budget)
    if engine is None:
        engine = Engine(_SEARCHES[problem](g), budget.max_seconds)
    roots = _roots(problem, engine.problem, g, constraint)
    optimum, count = engine.best_of(roots)
    result = SolveResult(problem, optimum, count, constraint=constraint)
    if witnesses and count:
        limit = budget.max_witnesses
        sols = engine.witnesses_of(roots, limit)
        result.witnesses = sorted(tuple(sorted(s)) for s in sols)
        result.truncated = count > len(sols)
    return result


def max_matching(g, constraint=None, budget=None, **kw) -> SolveResult:
    """Matching number and number of maximum matchings."""
    return solve(g, Problem.MATCHING, constraint, budget, **kw)


def max_independent_set(g, constraint=None, budget=None, **kw) -> SolveResult:
    """Independence number and number of maximum independent sets."""
    return solve(g, Problem.INDEPENDENT_SET, constraint, budget, **kw)


def min_dominating_set(g, constraint=None, budget=None, **kw) -> SolveResult:
    """Domination number and number of minimum dominating sets."""
    return solve(g, Problem.DOMINATING_SET, constraint, budget, **kw)


def classified_constraints(problem: Problem, a: int, b: int) -> dict[int, list[BoundaryConstraint]]:
    """Constraints selecting solutions that touch exactly k of ``(a, b)``."""
    on, off = (
        (Requirement.SATURATED, Requirement.UNSATURATED)
        if problem is Problem.MATCHING
        else (Requirement.IN, Requirement.OUT)
    )
    return {
        0: [BoundaryConstraint.of({a: off, b: off})],
        1: [BoundaryConstraint.of({a: on, b: off}), BoundaryConstraint.of({a: off, b: on})],
        2: [BoundaryConstraint.of({a: on, b: on})],
    }


def _aggregate(problem: Problem, parts: list[SolveResult], limit: int) -> SolveResult:
    feasible = [p for p in parts if p.feasible]
    if not feasible:
        return SolveResult(problem, None, 0, witnesses=[])
    best = feasible[0].optimum
    for p in feasible[1:]:
        if problem.better(p.optimum, best):
            best = p.optimum
    winners = [p for p in feasible if p.optimum == best]
    wits = [w for p in winners for w in (p.witnesses or [])]
    count = sum(p.count for p in winners)
    return SolveResult(
        problem,
        best,
        count,
        witnesses=sorted(wits)[:limit],
        truncated=count > min(len(wits), limit),
    )


def classified_table(
    g: Graph,
    problem: Problem | str,
    budget: OracleBudget | None = None,
    *,
    pair: tuple[int, int] | None = None,
) -> dict[int, SolveResult]:
    """Constrained optima split by how many boundary vertices are touched.

    Entry ``k`` covers solutions saturating (matching) or containing (vertex
    sets) exactly ``k`` of the two boundary vertices.  Entry 1 aggregates
    both choices of the touched vertex; its ``breakdown`` maps each boundary
    vertex to the result where that vertex is the touched one.
    """
    problem = Problem(problem)
    budget = budget or OracleBudget()
    a, b = pair if pair is not None else boundary(g)
    engine = Engine(_SEARCHES[problem](g), budget.max_seconds)
    table = {}
    for k, constraints in classified_constraints(problem, a, b).items():
        parts = [solve(g, problem, c, budget, engine=engine) for c in constraints]
        if k == 1:
            entry = _aggregate(problem, parts, budget.max_witnesses)
            entry.breakdown = {a: parts[0], b: parts[1]}
        else:
            entry = parts[0]
        table[k] = entry
    return table


def is_unique_optimum(
    g: Graph, problem: Problem | str, budget: OracleBudget | None = None
) -> tuple[bool, tuple | None]:
    """Whether exactly one optimal solution exists, with it when it does."""
    budget = budget or OracleBudget()
    res = solve(g, problem, None, budget)
    if res.count == 1:
        return True, res.witnesses[0]
    return False, None


def small_dominating_sets(
    g: Graph,
    max_size: int,
    budget: OracleBudget | None = None,
    *,
    max_subsets: int = 10**8,
) -> SolveResult:
    """Minimum dominating sets by exhaustive search over sets of size <= ``max_size``.

    Sizes are tried in ascending order and every subset of the first size
    that works is checked, so the count is exact.  Returns an infeasible
    result if no dominating set has at most ``max_size`` vertices.
    """
    budget = budget or OracleBudget()
    _check_budget(g, budget)
    n = g.vertex_count
    total = sum(math.comb(n, k) for k in range(max_size + 1))
    if total > max_subsets:
        raise CapabilityError(
            f"exhaustive search would visit {total} subsets (limit {max_subsets})"
        )
    full = (1 << n) - 1
    closed = [m | (1 << v) for v, m in enumerate(g.masks)]
    for k in range(max_size + 1):
        found = []
        for combo in itertools.combinations(range(n), k):
            cover = 0
            for v in combo:
                cover |= closed[v]
            if cover == full:
                found.append(combo)
        if found:
            limit = budget.max_witnesses
            return SolveResult(
                Problem.DOMINATING_SET,
                k,
                len(found),
                witnesses=found[:limit],
                truncated=len(found) > limit,
            )
    return SolveResult(Problem.DOMINATING_SET, None, 0, witnesses=[])
