"""Builders for the two self-similar power-law families.

Both families start from a single iterative edge.  At every iteration each
iterative edge ``(u, v)`` is replaced by the two paths ``u-a-v`` and
``u-b-v`` made of iterative edges, then one non-iterative edge is added:

* fractal:     ``a - b``  (the two new vertices)
* non-fractal: ``u - v``  (the two old end vertices)

The same graphs arise by gluing four copies of the previous level at their
boundary pairs; :func:`build` offers both routes so they can be
cross-checked.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum

from .errors import CapabilityError, UsageError
from .graph import Edge, EdgeKind, Graph, Role, VertexMeta

__all__ = [
    "Model",
    "Method",
    "ModelParams",
    "DEFAULT_MAX_LEVEL",
    "build",
    "predicted_counts",
    "boundary",
    "hub_pair",
]

DEFAULT_MAX_LEVEL = 8

I, N = EdgeKind.ITERATIVE, EdgeKind.NON_ITERATIVE


class Model(str, Enum):
    FRACTAL = "fractal"
    NONFRACTAL = "nonfractal"


class Method(str, Enum):
    EDGE_REPLACEMENT = "replace"
    MERGE = "merge"


@dataclass(frozen=True)
class ModelParams:
    n: int
    vertices: int
    edges: int


def predicted_counts(n: int) -> ModelParams:
    """Vertex and edge counts shared by both families at level ``n``."""
    if n < 0:
        raise UsageError(f"level must be nonnegative, got {n}")
    four_n = 4**n
    vertices, rem_v = divmod(2 * (four_n + 2), 3)
    edges, rem_e = divmod(4 * four_n - 1, 3)
    assert rem_v == 0 and rem_e == 0
    return ModelParams(n, vertices, edges)


def _max_level(max_level: int | None) -> int:
    if max_level is not None:
        return max_level
    env = os.environ.get("SFGRAPHS_MAX_LEVEL")
    return int(env) if env else DEFAULT_MAX_LEVEL


def _boundary_roles(model: Model) -> tuple[Role, Role]:
    """Roles of the level-0 pair and of the iteration-1 pair."""
    if model is Model.FRACTAL:
        return Role.INITIAL, Role.HUB
    return Role.HUB, Role.BORDER


def _by_replacement(model: Model, n: int) -> Graph:
    # Old vertices keep their ids, so level k is an id-prefix of level k + 1.
    first, second = _boundary_roles(model)
    created = [0, 0]
    edges: list[tuple[int, int, EdgeKind]] = [(0, 1, I)]
    for t in range(1, n + 1):
        nxt = []
        for u, v, kind in edges:
            if kind is N:
                nxt.append((u, v, kind))
                continue
            a, b = len(created), len(created) + 1
            created += [t, t]
            nxt += [(u, a, I), (a, v, I), (u, b, I), (b, v, I)]
            nxt.append((a, b, N) if model is Model.FRACTAL else (u, v, N))
        edges = nxt
    meta = []
    for vid, t in enumerate(created):
        role = first if vid < 2 else second if vid < 4 else Role.ORDINARY
        meta.append(VertexMeta(role, t))
    return Graph(len(created), edges, meta, model=model.value, level=n)


def _by_merging(model: Model, n: int) -> Graph:
    first, second = _boundary_roles(model)
    g = Graph(2, [(0, 1, I)], [VertexMeta(first, 0)] * 2, model=model.value, level=0)
    for level in range(1, n + 1):
        g = _merge_four(g, model, level, first, second)
    return g


def _merge_four(g: Graph, model: Model, level: int, first: Role, second: Role) -> Graph:
    x, y = 0, 1  # boundary pair of every copy sits at ids 0, 1
    # New ids: 0 = X, 1 = Y, 2 = W, 3 = Z, then the interior of copies 1..4.
    glue = {
        (0, x): 0, (2, x): 0,  # copies 1 and 3 contribute X
        (1, y): 1, (3, y): 1,  # copies 2 and 4 contribute Y
        (0, y): 2, (1, x): 2,  # W
        (2, y): 3, (3, x): 3,  # Z
    }
    meta = [VertexMeta(first, 0), VertexMeta(first, 0), VertexMeta(second, 1), VertexMeta(second, 1)]
    ids: dict[tuple[int, int], int] = dict(glue)
    for copy in range(4):
        for v in range(g.vertex_count):
            if (copy, v) in ids:
                continue
            ids[(copy, v)] = len(meta)
            # interior vertices appear one iteration later than inside the copy
            meta.append(VertexMeta(Role.ORDINARY, g.meta[v].created_at + 1))
    edges = [
        Edge(ids[(copy, e.u)], ids[(copy, e.v)], e.kind)
        for copy in range(4)
        for e in g.edges
    ]
    edges.append(Edge(2, 3, N) if model is Model.FRACTAL else Edge(0, 1, N))
    return Graph(len(meta), edges, meta, model=model.value, level=level)


def build(
    model: Model | str,
    n: int,
    method: Method | str = Method.EDGE_REPLACEMENT,
    *,
    max_level: int | None = None,
) -> Graph:
    """Build level ``n`` of the fractal or non-fractal family.

    The level-0 pair are the initial vertices (fractal) or the hubs
    (non-fractal); the pair created by the first iteration are the hubs
    (fractal) or the borders (non-fractal).  ``created_at`` records the
    iteration at which each vertex first appeared.

    Raises
    ------
    CapabilityError
        If ``n`` exceeds ``max_level`` (default 8, or ``SFGRAPHS_MAX_LEVEL``).
    """
    model = Model(model)
    method = Method(method)
    if n < 0:
        raise UsageError(f"level must be nonnegative, got {n}")
    cap = _max_level(max_level)
    if n > cap:
        raise CapabilityError(f"level {n} exceeds the configured cap {cap}")
    if method is Method.EDGE_REPLACEMENT:
        return _by_replacement(model, n)
    return _by_merging(model, n)


def boundary(g: Graph) -> tuple[int, int]:
    """The pair on which optimal structures are classified.

    Initial vertices for the fractal family, hub vertices for the
    non-fractal one.
    """
    if g.model == Model.FRACTAL.value:
        role = Role.INITIAL
    elif g.model == Model.NONFRACTAL.value:
        role = Role.HUB
    else:
        role = Role.INITIAL if g.vertices_with_role(Role.INITIAL) else Role.HUB
    pair = g.vertices_with_role(role)
    if len(pair) != 2:
        raise UsageError(f"graph has no {role.value} pair to use as boundary")
    return pair[0], pair[1]


def hub_pair(g: Graph) -> tuple[int, int]:
    pair = g.vertices_with_role(Role.HUB)
    if len(pair) != 2:
        raise UsageError("graph has no hub pair")
    return pair[0], pair[1]
