"""Search-state definitions for matching, independent set and domination.

States are integer bitmasks over vertex ids (``(candidates, undominated)``
pairs for domination).  Items are edges ``(u, v)`` with ``u < v`` for
matchings and vertex ids otherwise.
"""

from __future__ import annotations

from ..graph import Graph
from ._engine import iter_bits, mask_components


def _max_degree_vertex(mask: int, adj: tuple[int, ...]) -> int:
    best_v, best_d = -1, -1
    for v in iter_bits(mask):
        d = (adj[v] & mask).bit_count()
        if d > best_d:
            best_v, best_d = v, d
    return best_v


class MatchingSearch:
    """State: mask of vertices still free to be matched."""

    maximize = True

    def __init__(self, g: Graph):
        self.adj = g.masks

    def reduce(self, mask: int):
        adj = self.adj
        for v in iter_bits(mask):
            if not adj[v] & mask:
                mask &= ~(1 << v)
        return (), mask

    def terminal(self, mask: int) -> bool:
        return mask == 0

    def components(self, mask: int) -> list[int]:
        return mask_components(mask, self.adj)

    def branches(self, mask: int):
        v = _max_degree_vertex(mask, self.adj)
        rest = mask & ~(1 << v)
        yield (), rest
        for u in iter_bits(self.adj[v] & rest):
            yield ((min(u, v), max(u, v)),), rest & ~(1 << u)

    def saturate(self, mask: int, v: int):
        """Alternatives in which ``v`` is matched."""
        rest = mask & ~(1 << v)
        for u in iter_bits(self.adj[v] & rest):
            yield ((min(u, v), max(u, v)),), rest & ~(1 << u)


class IndependentSetSearch:
    """State: mask of vertices that may still join the set."""

    maximize = True

    def __init__(self, g: Graph):
        self.adj = g.masks

    def reduce(self, mask: int):
        adj = self.adj
        isolated = [v for v in iter_bits(mask) if not adj[v] & mask]
        for v in isolated:
            mask &= ~(1 << v)
        return tuple(isolated), mask

    def terminal(self, mask: int) -> bool:
        return mask == 0

    def components(self, mask: int) -> list[int]:
        return mask_components(mask, self.adj)

    def branches(self, mask: int):
        v = _max_degree_vertex(mask, self.adj)
        bit = 1 << v
        yield (), mask & ~bit
        yield (v,), mask & ~(bit | self.adj[v])


class DominatingSetSearch:
    """State: ``(candidates, undominated)`` masks.

    Only minimum solutions are counted, so a candidate that cannot dominate
    any undominated vertex is dropped: a minimum set never contains it.
    """

    maximize = False

    def __init__(self, g: Graph):
        self.closed = tuple(m | (1 << v) for v, m in enumerate(g.masks))

    def reduce(self, state):
        cand, undom = state
        closed = self.closed
        forced = []
        while undom:
            useful = 0
            for d in iter_bits(undom):
                useful |= closed[d]
            cand &= useful
            single = None
            for d in iter_bits(undom):
                options = closed[d] & cand
                if not options:
                    return None
                if options & (options - 1) == 0:
                    single = options.bit_length() - 1
                    break
            if single is None:
                break
            forced.append(single)
            cand &= ~(1 << single)
            undom &= ~closed[single]
        if not undom:
            cand = 0
        return tuple(forced), (cand, undom)

    def terminal(self, state) -> bool:
        return state[1] == 0

    def components(self, state):
        cand, undom = state
        closed = self.closed
        union = cand | undom
        links = {}
        for v in iter_bits(union):
            link = 0
            if undom >> v & 1:
                link |= closed[v] & cand
            if cand >> v & 1:
                link |= closed[v] & undom
            links[v] = link
        return [(cand & c, undom & c) for c in mask_components(union, _Links(links))]

    def branches(self, state):
        # Branch on the undominated vertex with fewest options; option i is
        # taken with options 0..i-1 excluded, which partitions the solutions.
        cand, undom = state
        closed = self.closed
        pick_options, pick_size = 0, None
        for d in iter_bits(undom):
            options = closed[d] & cand
            size = options.bit_count()
            if pick_size is None or size < pick_size:
                pick_options, pick_size = options, size
        ranked = sorted(
            iter_bits(pick_options), key=lambda c: (-(closed[c] & undom).bit_count(), c)
        )
        excluded = 0
        for c in ranked:
            excluded |= 1 << c
            yield (c,), (cand & ~excluded, undom & ~closed[c])


class _Links:
    """Sparse index adaptor so :func:`mask_components` can read a dict."""

    __slots__ = ("_d",)

    def __init__(self, d: dict[int, int]):
        self._d = d

    def __getitem__(self, v: int) -> int:
        return self._d[v]
