"""Branch-and-bound for the domination number alone (no counting).

Upper bound from a greedy cover, lower bound from the larger of a coverage
bound and a packing bound (undominated vertices with pairwise disjoint
candidate sets each need their own dominator).  Forced candidates and
useless candidates are reduced away before branching.
"""

from __future__ import annotations

import time

from ..errors import CapabilityError
from ..graph import Graph
from ._engine import iter_bits
from .solvers import BoundaryConstraint, OracleBudget, Requirement, _check_budget


def _greedy(cand: int, undom: int, closed: tuple[int, ...]) -> int | None:
    size = 0
    while undom:
        best_c, best_gain = -1, 0
        for c in iter_bits(cand):
            gain = (closed[c] & undom).bit_count()
            if gain > best_gain:
                best_c, best_gain = c, gain
        if best_c < 0:
            return None
        size += 1
        cand &= ~(1 << best_c)
        undom &= ~closed[best_c]
    return size


def _lower_bound(cand: int, undom: int, closed: tuple[int, ...]) -> int:
    options = sorted(((closed[d] & cand).bit_count(), closed[d] & cand) for d in iter_bits(undom))
    taken, packing = 0, 0
    for _, opt in options:
        if not opt & taken:
            taken |= opt
            packing += 1
    widest = max((closed[c] & undom).bit_count() for c in iter_bits(cand))
    coverage = -(-undom.bit_count() // widest)
    return max(packing, coverage)


def domination_number(
    g: Graph,
    constraint: BoundaryConstraint | None = None,
    budget: OracleBudget | None = None,
) -> int | None:
    """Size of a minimum dominating set under ``constraint``; ``None`` if infeasible."""
    budget = budget or OracleBudget()
    _check_budget(g, budget)
    closed = tuple(m | (1 << v) for v, m in enumerate(g.masks))
    full = (1 << g.vertex_count) - 1
    cand, undom, base = full, full, 0
    for v, r in (constraint or BoundaryConstraint()).active():
        cand &= ~(1 << v)
        if r is Requirement.IN:
            base += 1
            undom &= ~closed[v]

    if _greedy(cand, undom, closed) is None:
        return None
    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    ticks = [0]

    def reduce(cand: int, undom: int):
        forced = 0
        while undom:
            useful = 0
            for d in iter_bits(undom):
                useful |= closed[d]
            cand &= useful
            single = None
            for d in iter_bits(undom):
                opt = closed[d] & cand
                if not opt:
                    return None
                if opt & (opt - 1) == 0:
                    single = opt.bit_length() - 1
                    break
            if single is None:
                break
            forced += 1
            cand &= ~(1 << single)
            undom &= ~closed[single]
        return forced, cand, undom

    def solve(cand: int, undom: int, limit: int) -> int:
        """Exact minimum if it is below ``limit``, otherwise some value >= limit."""
        ticks[0] += 1
        if deadline is not None and ticks[0] % 4096 == 0 and time.monotonic() > deadline:
            raise CapabilityError(f"oracle time budget of {budget.max_seconds:g} s exhausted")
        reduced = reduce(cand, undom)
        if reduced is None:
            return limit
        forced, cand, undom = reduced
        if not undom:
            return forced
        if forced + _lower_bound(cand, undom, closed) >= limit:
            return limit
        pieces = _pieces(cand, undom, closed)
        if len(pieces) > 1:
            bounds = [_lower_bound(c, u, closed) for c, u in pieces]
            total, rest = forced, sum(bounds)
            for (c, u), lb in zip(pieces, bounds):
                rest -= lb
                sub_limit = limit - total - rest
                value = solve(c, u, sub_limit)
                if value >= sub_limit:
                    return limit
                total += value
            return total
        best = min(limit - forced, _greedy(cand, undom, closed))
        pick, pick_size = 0, None
        for d in iter_bits(undom):
            opt = closed[d] & cand
            if pick_size is None or opt.bit_count() < pick_size:
                pick, pick_size = opt, opt.bit_count()
        ranked = sorted(iter_bits(pick), key=lambda c: -(closed[c] & undom).bit_count())
        excluded = 0
        for c in ranked:
            excluded |= 1 << c
            value = 1 + solve(cand & ~excluded, undom & ~closed[c], best - 1)
            if value < best:
                best = value
        return forced + best

    return base + solve(cand, undom, g.vertex_count + 1)


def _pieces(cand: int, undom: int, closed: tuple[int, ...]) -> list[tuple[int, int]]:
    union = cand | undom
    links = {}
    for v in iter_bits(union):
        link = 0
        if undom >> v & 1:
            link |= closed[v] & cand
        if cand >> v & 1:
            link |= closed[v] & undom
        links[v] = link
    out = []
    while union:
        comp = frontier = union & -union
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = links[low.bit_length() - 1] & ~comp
            comp |= new
            frontier |= new
        out.append((cand & comp, undom & comp))
        union &= ~comp
    return out
