"""Immutable undirected graphs with typed edges and per-vertex metadata.

Vertices are the integers ``0 .. vertex_count - 1``.  Every edge carries an
:class:`EdgeKind` and every vertex a :class:`VertexMeta`.  Graphs are never
mutated after construction; helpers return new graphs.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from .errors import CapabilityError, UsageError

__all__ = [
    "EdgeKind",
    "Role",
    "VertexMeta",
    "Edge",
    "Graph",
    "neighbors",
    "induced_subgraph",
    "isomorphic",
    "bfs_distances",
    "ISOMORPHISM_MAX_VERTICES",
]

ISOMORPHISM_MAX_VERTICES = 200


class EdgeKind(str, Enum):
    ITERATIVE = "I"
    NON_ITERATIVE = "N"


class Role(str, Enum):
    INITIAL = "initial"
    HUB = "hub"
    BORDER = "border"
    ORDINARY = "ordinary"


@dataclass(frozen=True)
class VertexMeta:
    role: Role = Role.ORDINARY
    created_at: int = 0


class Edge(NamedTuple):
    u: int
    v: int
    kind: EdgeKind = EdgeKind.ITERATIVE


_DEFAULT_META = VertexMeta()


class Graph:
    """Simple undirected graph; edges are stored with ``u < v``.

    Parameters
    ----------
    vertex_count : int
        Number of vertices; ids are dense in ``[0, vertex_count)``.
    edges : iterable of Edge or (u, v[, kind]) tuples
        Self-loops and parallel edges (regardless of kind) are rejected.
    meta : sequence of VertexMeta, optional
        One entry per vertex; defaults to ordinary vertices created at 0.
    model, level : optional
        Provenance recorded by the generators (``"fractal"`` / ``"nonfractal"``
        and the iteration index).
    """

    __slots__ = ("_n", "_edges", "_meta", "_adj", "_masks", "_kinds", "model", "level")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable = (),
        meta: Sequence[VertexMeta] | None = None,
        model: str | None = None,
        level: int | None = None,
    ):
        if vertex_count < 0:
            raise UsageError(f"vertex_count must be nonnegative, got {vertex_count}")
        n = int(vertex_count)
        adj: list[list[int]] = [[] for _ in range(n)]
        kinds: dict[tuple[int, int], EdgeKind] = {}
        norm: list[Edge] = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            kind = EdgeKind(e[2]) if len(e) > 2 else EdgeKind.ITERATIVE
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) references a vertex outside [0, {n})")
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in kinds:
                raise UsageError(f"parallel edge ({u}, {v})")
            kinds[(u, v)] = kind
            norm.append(Edge(u, v, kind))
            adj[u].append(v)
            adj[v].append(u)
        if meta is None:
            meta = (_DEFAULT_META,) * n
        elif len(meta) != n:
            raise UsageError(f"meta has {len(meta)} entries for {n} vertices")
        self._n = n
        self._edges = tuple(norm)
        self._meta = tuple(meta)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._kinds = kinds
        self._masks: tuple[int, ...] | None = None
        self.model = model
        self.level = level

    # -- basic accessors -------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def meta(self) -> tuple[VertexMeta, ...]:
        return self._meta

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an integer bitmask."""
        if self._masks is None:
            self._masks = tuple(sum(1 << u for u in a) for a in self._adj)
        return self._masks

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._kinds

    def edge_kind(self, u: int, v: int) -> EdgeKind:
        try:
            return self._kinds[(min(u, v), max(u, v))]
        except KeyError:
            raise UsageError(f"no edge ({u}, {v})") from None

    def vertices_with_role(self, role: Role) -> list[int]:
        return [v for v, m in enumerate(self._meta) if m.role == role]

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self._n):
            raise UsageError(f"vertex {v} out of range [0, {self._n})")

    def __repr__(self) -> str:
        tag = f" {self.model} n={self.level}" if self.model is not None else ""
        return f"<Graph{tag} N={self._n} E={len(self._edges)}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and self._kinds == other._kinds
            and self._meta == other._meta
        )

    def __hash__(self) -> int:
        return hash((self._n, self._edges))


def neighbors(g: Graph, v: int) -> list[int]:
    """Neighbours of ``v`` in ascending id order."""
    g._check_vertex(v)
    return list(g.adjacency[v])


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``keep``, renumbered in ascending original id.

    Returns the new graph and the old-id -> new-id map.  Edge kinds and
    vertex metadata are carried over.
    """
    kept = sorted(set(keep))
    for v in kept:
        g._check_vertex(v)
    remap = {old: new for new, old in enumerate(kept)}
    edges = [
        Edge(remap[e.u], remap[e.v], e.kind)
        for e in g.edges
        if e.u in remap and e.v in remap
    ]
    meta = [g.meta[v] for v in kept]
    return Graph(len(kept), edges, meta, model=g.model, level=g.level), remap


def bfs_distances(g: Graph, src: int) -> list[float]:
    """Unweighted shortest-path distances from ``src``; unreachable -> ``inf``."""
    g._check_vertex(src)
    dist: list[float] = [math.inf] * g.vertex_count
    dist[src] = 0
    queue = deque([src])
    adj = g.adjacency
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for u in adj[v]:
            if dist[u] == math.inf:
                dist[u] = d
                queue.append(u)
    return dist


# -- isomorphism ------------------------------------------------------------


def _refine_colors(graphs: Sequence[Graph], match_meta: bool) -> list[list[int]]:
    """Colour refinement run on all graphs at once so colours are comparable."""
    colors: list[list] = []
    for g in graphs:
        row = []
        for v in range(g.vertex_count):
            kinds = Counter(g.edge_kind(v, u) for u in g.adjacency[v])
            key = (len(g.adjacency[v]), kinds[EdgeKind.ITERATIVE])
            if match_meta:
                key += (g.meta[v].role.value, g.meta[v].created_at)
            row.append(key)
        colors.append(row)

    def relabel(rows):
        palette = {c: i for i, c in enumerate(sorted({c for r in rows for c in r}))}
        return [[palette[c] for c in r] for r in rows], len(palette)

    current, n_colors = relabel(colors)
    while True:
        signatures = []
        for g, row in zip(graphs, current):
            sig = []
            for v in range(g.vertex_count):
                nb = sorted((row[u], g.edge_kind(v, u).value) for u in g.adjacency[v])
                sig.append((row[v], tuple(nb)))
            signatures.append(sig)
        refined, refined_count = relabel(signatures)
        if refined_count == n_colors:
            return refined
        current, n_colors = refined, refined_count


def isomorphic(
    g1: Graph,
    g2: Graph,
    *,
    match_meta: bool = False,
    max_vertices: int = ISOMORPHISM_MAX_VERTICES,
) -> bool:
    """True iff an edge-kind preserving isomorphism ``g1 -> g2`` exists.

    Colour refinement prunes candidates, then a backtracking search extends a
    partial map one vertex at a time, always picking the unmapped vertex with
    the most mapped neighbours.  With ``match_meta`` the vertex roles and
    creation iterations must also be preserved.
    """
    if max(g1.vertex_count, g2.vertex_count) > max_vertices:
        raise CapabilityError(
            f"isomorphism search is capped at {max_vertices} vertices"
        )
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    if Counter(e.kind for e in g1.edges) != Counter(e.kind for e in g2.edges):
        return False
    n = g1.vertex_count
    if n == 0:
        return True

    c1, c2 = _refine_colors([g1, g2], match_meta)
    if Counter(c1) != Counter(c2):
        return False

    by_color: dict[int, list[int]] = {}
    for w, c in enumerate(c2):
        by_color.setdefault(c, []).append(w)
    class_size = Counter(c1)

    # Mapping order: connected sweep, preferring vertices with many mapped
    # neighbours, then rare colours.
    order: list[int] = []
    placed = [False] * n
    links = [0] * n
    for _ in range(n):
        best = None
        for v in range(n):
            if placed[v]:
                continue
            key = (-links[v], class_size[c1[v]], v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        placed[v] = True
        order.append(v)
        for u in g1.adjacency[v]:
            links[u] += 1

    adj1 = g1.adjacency
    mask2 = g2.masks
    mapping = [-1] * n
    used = [False] * n

    def feasible(v: int, w: int, used_mask: int) -> bool:
        hits = 0
        for u in adj1[v]:
            mu = mapping[u]
            if mu < 0:
                continue
            if not g2.has_edge(w, mu) or g1.edge_kind(v, u) != g2.edge_kind(w, mu):
                return False
            hits += 1
        return hits == bin(mask2[w] & used_mask).count("1")

    def extend(i: int, used_mask: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in by_color[c1[v]]:
            if used[w] or not feasible(v, w, used_mask):
                continue
            mapping[v] = w
            used[w] = True
            if extend(i + 1, used_mask | (1 << w)):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return extend(0, 0)
