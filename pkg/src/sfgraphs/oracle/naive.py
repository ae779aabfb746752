"""Brute-force reference solvers for small graphs.

These enumerate every candidate structure and share no code with the
branching engine, so they serve as an independent check on it.  Vertex
problems sweep all ``2**N`` subsets at once with numpy; matchings are
listed one by one.
"""

from __future__ import annotations

import numpy as np

from ..errors import CapabilityError
from ..graph import Graph
from ..problems import Problem

NAIVE_MAX_VERTICES = 20


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint32)
    counts = np.zeros(x.shape, dtype=np.int64)
    for shift in range(0, 32, 8):
        counts += _BYTE_POP[(x >> shift) & 0xFF]
    return counts


_BYTE_POP = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _subsets(n: int) -> np.ndarray:
    if n > NAIVE_MAX_VERTICES:
        raise CapabilityError(f"naive enumeration is limited to {NAIVE_MAX_VERTICES} vertices")
    return np.arange(1 << n, dtype=np.int64)


def _select(
    feasible: np.ndarray,
    subsets: np.ndarray,
    maximize: bool,
    require_in: int,
    require_out: int,
) -> tuple[int | None, int]:
    feasible &= (subsets & require_in) == require_in
    feasible &= (subsets & require_out) == 0
    if not feasible.any():
        return None, 0
    sizes = _popcount(subsets[feasible])
    best = int(sizes.max() if maximize else sizes.min())
    return best, int((sizes == best).sum())


def naive_independent_set(g: Graph, require_in=(), require_out=()) -> tuple[int | None, int]:
    """(independence number, number of maximum independent sets)."""
    subsets = _subsets(g.vertex_count)
    ok = np.ones(subsets.shape, dtype=bool)
    for e in g.edges:
        ok &= ((subsets >> e.u) & (subsets >> e.v) & 1) == 0
    return _select(ok, subsets, True, _bits(require_in), _bits(require_out))


def naive_dominating_set(g: Graph, require_in=(), require_out=()) -> tuple[int | None, int]:
    """(domination number, number of minimum dominating sets)."""
    subsets = _subsets(g.vertex_count)
    ok = np.ones(subsets.shape, dtype=bool)
    for v, nb in enumerate(g.masks):
        ok &= (subsets & (nb | (1 << v))) != 0
    return _select(ok, subsets, False, _bits(require_in), _bits(require_out))


def _bits(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def all_matchings(g: Graph):
    """Yield every matching (including the empty one) as a tuple of edges."""
    adj = g.adjacency
    n = g.vertex_count
    used = [False] * n
    chosen: list[tuple[int, int]] = []

    def walk(v: int):
        while v < n and used[v]:
            v += 1
        if v == n:
            yield tuple(chosen)
            return
        used[v] = True
        yield from walk(v + 1)  # v stays unmatched
        for u in adj[v]:
            if u > v and not used[u]:
                used[u] = True
                chosen.append((v, u))
                yield from walk(v + 1)
                chosen.pop()
                used[u] = False
        used[v] = False

    yield from walk(0)


def naive_matching(g: Graph, saturated=(), unsaturated=()) -> tuple[int | None, int]:
    """(matching number, number of maximum matchings) by full listing."""
    if g.vertex_count > NAIVE_MAX_VERTICES:
        raise CapabilityError(f"naive enumeration is limited to {NAIVE_MAX_VERTICES} vertices")
    best, count = None, 0
    for m in all_matchings(g):
        covered = {x for e in m for x in e}
        if any(v not in covered for v in saturated) or any(v in covered for v in unsaturated):
            continue
        if best is None or len(m) > best:
            best, count = len(m), 1
        elif len(m) == best:
            count += 1
    return best, count


def naive_solve(g: Graph, problem: Problem | str, touched=(), untouched=()) -> tuple[int | None, int]:
    """Dispatch to the brute-force solver for ``problem``."""
    problem = Problem(problem)
    if problem is Problem.MATCHING:
        return naive_matching(g, touched, untouched)
    if problem is Problem.INDEPENDENT_SET:
        return naive_independent_set(g, touched, untouched)
    return naive_dominating_set(g, touched, untouched)
