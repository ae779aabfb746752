"""Edge-list, DOT and JSON serialisation.

Edge-list layout::

    N E model n
    u v kind          # one line per edge, kind is I or N
    ...
    #meta
    id role created_at

``model`` and ``n`` are written as ``-`` when unknown.
"""

from __future__ import annotations

from pathlib import Path
from typing import TextIO

from .errors import UsageError
from .graph import EdgeKind, Graph, Role, VertexMeta

__all__ = ["format_edgelist", "parse_edgelist", "format_dot", "graph_to_json", "write_text", "read_text"]


def format_edgelist(g: Graph) -> str:
    model = g.model or "-"
    level = "-" if g.level is None else str(g.level)
    lines = [f"{g.vertex_count} {g.edge_count} {model} {level}"]
    lines += [f"{e.u} {e.v} {e.kind.value}" for e in g.edges]
    lines.append("#meta")
    lines += [f"{v} {m.role.value} {m.created_at}" for v, m in enumerate(g.meta)]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 4:
        raise UsageError("edge list must start with 'N E model n'")
    try:
        n_vertices, n_edges = int(rows[0][0]), int(rows[0][1])
    except ValueError:
        raise UsageError(f"bad edge-list header: {' '.join(rows[0])}") from None
    model = None if rows[0][2] == "-" else rows[0][2]
    level = None if rows[0][3] == "-" else int(rows[0][3])
    body = rows[1:]
    try:
        split = body.index(["#meta"])
    except ValueError:
        split = len(body)
    edges = []
    for row in body[:split]:
        if len(row) != 3:
            raise UsageError(f"bad edge line: {' '.join(row)}")
        edges.append((int(row[0]), int(row[1]), EdgeKind(row[2])))
    if len(edges) != n_edges:
        raise UsageError(f"header announces {n_edges} edges, found {len(edges)}")
    meta = None
    if split < len(body):
        entries = {}
        for row in body[split + 1:]:
            if len(row) != 3:
                raise UsageError(f"bad meta line: {' '.join(row)}")
            entries[int(row[0])] = VertexMeta(Role(row[1]), int(row[2]))
        if sorted(entries) != list(range(n_vertices)):
            raise UsageError("meta block must list every vertex exactly once")
        meta = [entries[v] for v in range(n_vertices)]
    return Graph(n_vertices, edges, meta, model=model, level=level)


def format_dot(g: Graph) -> str:
    """Graphviz source; non-iterative edges are dashed."""
    name = f"{g.model}_{g.level}" if g.model else "G"
    lines = [f"graph {name} {{"]
    for v, m in enumerate(g.meta):
        attrs = f'label="{v}"'
        if m.role is not Role.ORDINARY:
            attrs += f', xlabel="{m.role.value}", shape=doublecircle'
        lines.append(f"  {v} [{attrs}];")
    for e in g.edges:
        style = " [style=dashed]" if e.kind is EdgeKind.NON_ITERATIVE else ""
        lines.append(f"  {e.u} -- {e.v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {
        "model": g.model,
        "n": g.level,
        "vertex_count": g.vertex_count,
        "edge_count": g.edge_count,
        "edges": [[e.u, e.v, e.kind.value] for e in g.edges],
        "meta": [{"id": v, "role": m.role.value, "created_at": m.created_at} for v, m in enumerate(g.meta)],
    }


def write_text(text: str, out: str | Path | TextIO | None) -> None:
    """Write to a path, an open stream, or stdout when ``out`` is None."""
    if out is None:
        import sys

        sys.stdout.write(text)
    elif hasattr(out, "write"):
        out.write(text)
    else:
        path = Path(out)
        try:
            path.write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def read_text(path: str | Path) -> str:
    path = Path(path)
    try:
        return path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
