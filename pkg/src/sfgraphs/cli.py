"""Command-line front end: ``sfgraphs <command> [options]``.

Exit status: 0 on success, 1 when ``verify`` finds an unexplained
disagreement, 2 on usage errors, 3 when a budget or cap is exceeded,
4 on I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from collections import Counter

from . import decimation as dec
from .config import RunConfig, resolve
from .decimation import Quantity
from .errors import CapabilityError, UsageError
from .generators import Method, Model, boundary, build, predicted_counts
from .graph import Graph
from .io import format_dot, format_edgelist, graph_to_json, write_text
from .oracle import OracleBudget, classified_table, solve
from .oracle.bnb import domination_number
from .problems import Problem
from .verify import DEFAULT_ORACLE_MAX_VERTICES, verify

STATS_MAX_LEVEL = 6
SOLVE_MAX_VERTICES = 200

EXIT_MISMATCH, EXIT_USAGE, EXIT_CAPABILITY, EXIT_IO = 1, 2, 3, 4


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _single_level(cfg: RunConfig) -> int:
    if cfg.n_lo != cfg.n_hi:
        raise UsageError("this command takes a single level (--n K)")
    return cfg.n_lo


def _format(cfg: RunConfig, allowed: tuple[str, ...]) -> str:
    fmt = cfg.format or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"format must be one of {', '.join(allowed)}")
    return fmt


def _budget(cfg: RunConfig, default_vertices: int, witnesses: int | None = None) -> OracleBudget:
    return OracleBudget(
        max_vertices=cfg.oracle_max_vertices or default_vertices,
        max_seconds=cfg.budget_seconds,
        max_witnesses=cfg.witness_cap if witnesses is None else witnesses,
    )


def _build(cfg: RunConfig, n: int, method: str | None) -> Graph:
    return build(cfg.model, n, method or Method.EDGE_REPLACEMENT, max_level=cfg.max_level)


def _render_graph(g: Graph, fmt: str) -> str:
    if fmt == "edgelist":
        return format_edgelist(g)
    if fmt == "dot":
        return format_dot(g)
    return _dump_json(graph_to_json(g))


# -- commands ----------------------------------------------------------------


def cmd_generate(cfg: RunConfig, args) -> int:
    g = _build(cfg, _single_level(cfg), args.method)
    write_text(_render_graph(g, _format(cfg, ("edgelist", "dot", "json"))), cfg.out)
    return 0


def cmd_export(cfg: RunConfig, args) -> int:
    if not cfg.out:
        raise UsageError("export needs --out PATH")
    g = _build(cfg, _single_level(cfg), args.method)
    write_text(_render_graph(g, _format(cfg, ("edgelist", "dot"))), cfg.out)
    return 0


def _witness_json(w: tuple) -> list:
    return [list(x) if isinstance(x, tuple) else x for x in w]


def _result_json(res) -> dict:
    return {
        "optimum": res.optimum,
        "count": str(res.count),
        "witnesses": None if res.witnesses is None else [_witness_json(w) for w in res.witnesses],
        "truncated": res.truncated,
    }


def cmd_solve(cfg: RunConfig, args) -> int:
    _format(cfg, ("json",))
    n = _single_level(cfg)
    g = _build(cfg, n, args.method)
    limit = min(args.witnesses, cfg.witness_cap) if args.witnesses else 0
    budget = _budget(cfg, SOLVE_MAX_VERTICES, witnesses=limit)
    report = {"model": cfg.model.value, "n": n, "problem": cfg.problem.value}
    start = time.perf_counter()
    if args.k is not None:
        a, b = boundary(g)
        table = classified_table(g, cfg.problem, budget)
        entry = table[args.k]
        report["constraint"] = {"k": args.k, "boundary": [a, b]}
        body = _result_json(entry)
        if not limit:
            body.update(witnesses=None, truncated=False)
        if entry.breakdown is not None:
            body["breakdown"] = {
                str(v): {"optimum": part.optimum, "count": str(part.count)}
                for v, part in entry.breakdown.items()
            }
    elif args.count or limit:
        res = solve(g, cfg.problem, None, budget, witnesses=bool(limit))
        report["constraint"] = {}
        body = _result_json(res)
    else:
        report["constraint"] = {}
        if cfg.problem is Problem.DOMINATING_SET:
            optimum = domination_number(g, None, budget)
        else:
            optimum = solve(g, cfg.problem, None, budget, witnesses=False).optimum
        body = {"optimum": optimum, "count": None, "witnesses": None, "truncated": False}
    report.update(body)
    report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    write_text(_dump_json(report), cfg.out)
    return 0


PREDICT_COLUMNS = ["n", "s0", "s1", "s2", "headline", "count_decimal", "count_log2"]


def _prediction_rows(q: Quantity, lo: int, hi: int, max_bits: int) -> list[dict]:
    sizes, counts = {}, {}
    if hi >= dec.size_base_level(q):
        sizes = {t.level: t for t in dec.size_trajectory(q, hi)}
    if hi >= dec.count_base_level(q):
        counts = {c.level: c for c in dec.count_trajectory(q, hi, max_bits=max_bits)}
    rows = []
    for n in range(lo, hi + 1):
        row: dict = {"n": n, "s0": None, "s1": None, "s2": None, "headline": None}
        if n in sizes:
            t = sizes[n]
            row.update(s0=t.s0, s1=t.s1, s2=t.s2, headline=t.headline(q.problem))
        row["count_decimal"] = row["count_log2"] = None
        if n in counts:
            c = counts[n]
            row["count_decimal"] = str(c.count)
            row["count_log2"] = dec.CountState.log2(c.count)
            for name in ("phi", "varphi"):
                if getattr(c, name) is not None:
                    row[f"{name}_decimal"] = str(getattr(c, name))
        rows.append(row)
    return rows


def _emit_rows(rows: list[dict], columns: list[str], fmt: str, header: dict, out) -> None:
    if fmt == "json":
        write_text(_dump_json({**header, "rows": rows}), out)
        return
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row[k] for k in columns})
    write_text(buf.getvalue(), out)


def cmd_predict(cfg: RunConfig, args) -> int:
    fmt = _format(cfg, ("json", "csv"))
    q = Quantity(cfg.model, cfg.problem)
    first = min(dec.size_base_level(q), dec.count_base_level(q))
    if cfg.n_hi < first:
        raise UsageError(f"{q.label} recurrences start at level {first}")
    if cfg.n_lo < cfg.n_hi:
        lo = cfg.n_lo
    else:
        lo = first if args.trajectory else cfg.n_hi
    rows = _prediction_rows(q, lo, cfg.n_hi, cfg.max_bits)
    header = {"model": q.model.value, "problem": q.problem.value}
    _emit_rows(rows, PREDICT_COLUMNS, fmt, header, cfg.out)
    return 0


TABLE_COLUMNS = ["n", "N", "E"] + PREDICT_COLUMNS[1:]


def cmd_table(cfg: RunConfig, args) -> int:
    fmt = _format(cfg, ("csv", "json"))
    q = Quantity(cfg.model, cfg.problem)
    rows = _prediction_rows(q, 0, cfg.n_hi, cfg.max_bits)
    for row in rows:
        params = predicted_counts(row["n"])
        row["N"], row["E"] = params.vertices, params.edges
    header = {"model": q.model.value, "problem": q.problem.value}
    _emit_rows(rows, TABLE_COLUMNS, fmt, header, cfg.out)
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    _format(cfg, ("json",))
    if cfg.n_lo < 1:
        raise UsageError("verify starts at level 1")
    q = Quantity(cfg.model, cfg.problem)
    report = verify(
        q,
        cfg.levels,
        _budget(cfg, DEFAULT_ORACLE_MAX_VERTICES, witnesses=0),
        jobs=cfg.jobs,
        max_bits=cfg.max_bits,
    )
    write_text(_dump_json(report.to_json()), cfg.out)
    return 0 if report.ok else EXIT_MISMATCH


def graph_stats(g: Graph) -> dict:
    """Degree histogram, average degree and exact average distance."""
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    n = g.vertex_count
    hist = Counter(g.degrees())
    out = {
        "vertex_count": n,
        "edge_count": g.edge_count,
        "degree_histogram": {str(d): hist[d] for d in sorted(hist)},
        "average_degree": 2 * g.edge_count / n if n else 0.0,
    }
    if n < 2:
        out.update(distance_sum=0, pairs=0, average_distance=None)
        return out
    rows = [e.u for e in g.edges] + [e.v for e in g.edges]
    cols = [e.v for e in g.edges] + [e.u for e in g.edges]
    adj = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    dist = shortest_path(adj, method="D", unweighted=True)
    if not np.isfinite(dist).all():
        raise UsageError("average distance needs a connected graph")
    total = int(dist.sum()) // 2  # distances are small integers, so the float sum is exact
    pairs = n * (n - 1) // 2
    out.update(distance_sum=total, pairs=pairs, average_distance=total / pairs)
    return out


def cmd_stats(cfg: RunConfig, args) -> int:
    _format(cfg, ("json",))
    n = _single_level(cfg)
    if n > STATS_MAX_LEVEL:
        raise CapabilityError(f"stats computes all-pairs distances only up to level {STATS_MAX_LEVEL}")
    g = _build(cfg, n, None)
    stats = {"model": cfg.model.value, "n": n, **graph_stats(g)}
    write_text(_dump_json(stats), cfg.out)
    return 0


# -- parser ------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--model", choices=[m.value for m in Model])
    g.add_argument("--n", help="level K")
    g.add_argument("--n-range", help="levels A..B (inclusive)")
    g.add_argument("--format")
    g.add_argument("--out", help="output path (default stdout)")
    g.add_argument("--budget-seconds", type=float)
    g.add_argument("--witness-cap", type=int)
    g.add_argument("--oracle-max-vertices", type=int)
    g.add_argument("--max-bits", type=int, help="bit budget for count recursions")
    g.add_argument("--max-level", type=int, help="generator level cap")
    g.add_argument("--jobs", type=int)
    g.add_argument("--config", help="key=value config file")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfgraphs",
        description="Self-similar graph families: generation, exact solvers, recurrences, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    problems = [p.value for p in Problem]
    methods = [m.value for m in Method]

    p = sub.add_parser("generate", parents=[common], help="build a graph and print it")
    p.add_argument("--method", choices=methods)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("export", parents=[common], help="write a graph to a file")
    p.add_argument("--method", choices=methods)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("solve", parents=[common], help="exact optimum and count")
    p.add_argument("--problem", choices=problems)
    p.add_argument("--method", choices=methods)
    p.add_argument("--k", type=int, choices=[0, 1, 2], help="touch exactly k boundary vertices")
    p.add_argument("--count", action="store_true", help="also count optimal solutions")
    p.add_argument("--witnesses", type=int, metavar="LIMIT", help="return up to LIMIT optimal solutions")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("predict", parents=[common], help="recurrence values")
    p.add_argument("--problem", choices=problems)
    p.add_argument("--trajectory", action="store_true", help="every level up to n")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", parents=[common], help="oracle vs recursion vs closed form")
    p.add_argument("--problem", choices=problems)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="level-by-level trajectory from 0")
    p.add_argument("--problem", choices=problems)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("stats", parents=[common], help="degree and distance statistics")
    p.set_defaults(func=cmd_stats)
    return parser


_CONFIG_KEYS = (
    "model", "problem", "n", "n_range", "format", "out", "budget_seconds", "witness_cap",
    "oracle_max_vertices", "max_bits", "max_level", "jobs",
)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    flags = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
    try:
        if getattr(args, "witnesses", None) is not None and args.witnesses < 0:
            raise UsageError("--witnesses must be nonnegative")
        cfg = resolve(flags, args.config)
        return args.func(cfg, args)
    except UsageError as exc:
        print(f"sfgraphs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as exc:
        print(f"sfgraphs: capability exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except OSError as exc:
        print(f"sfgraphs: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
