"""Acceptance criteria, one check per criterion.

Each check returns ``(passed, detail)``.  Under pytest every criterion
becomes one test and one ``PASS``/``FAIL`` line in the terminal summary;
run as a script (``python3 tests/test_acceptance.py``) it prints the
same lines.  Expected values are computed here from integer formulas,
independently of the package's own closed-form code.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

from sfgraphs import Method, Model, Problem, Quantity, Role, build, isomorphic, predicted_counts
from sfgraphs import decimation as dec
from sfgraphs.oracle import OracleBudget, classified_table, small_dominating_sets, solve
from sfgraphs.oracle.bnb import domination_number
from sfgraphs.oracle.naive import naive_matching, naive_solve
from sfgraphs.verify import verify_level

sys.path.insert(0, str(Path(__file__).parent))
from conftest import random_graph  # noqa: E402

F, NF = Model.FRACTAL, Model.NONFRACTAL
MATCH, MIS, MDS = Problem.MATCHING, Problem.INDEPENDENT_SET, Problem.DOMINATING_SET
BUDGET = OracleBudget(max_vertices=200, max_seconds=600.0, max_witnesses=10)


class Checks:
    """Collects sub-check outcomes for one criterion."""

    def __init__(self):
        self.failed: list[str] = []
        self.notes: list[str] = []

    def expect(self, ok: bool, what: str) -> None:
        if not ok:
            self.failed.append(what)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def result(self) -> tuple[bool, str]:
        if self.failed:
            return False, "; ".join(self.failed + self.notes)
        return True, "; ".join(self.notes)


def _timed(checks: Checks, limit: float, start: float, label: str) -> None:
    elapsed = time.perf_counter() - start
    checks.note(f"{label} {elapsed:.2f}s")
    checks.expect(elapsed < limit, f"{label} took {elapsed:.1f}s (limit {limit:g}s)")


def criterion_1() -> tuple[bool, str]:
    c = Checks()
    start = time.perf_counter()
    for model in Model:
        for n in range(9):
            g = build(model, n)
            n_expected = 2 if n == 0 else 2 * (4**n + 2) // 3
            e_expected = (4 ** (n + 1) - 1) // 3
            c.expect(
                (g.vertex_count, g.edge_count) == (n_expected, e_expected),
                f"{model.value} n={n}: N,E = {g.vertex_count},{g.edge_count}, want {n_expected},{e_expected}",
            )
            params = predicted_counts(n)
            c.expect((params.vertices, params.edges) == (n_expected, e_expected), f"predicted_counts({n})")
        for n in range(4):
            a = build(model, n, Method.EDGE_REPLACEMENT)
            b = build(model, n, Method.MERGE)
            c.expect(isomorphic(a, b), f"{model.value} n={n}: methods not isomorphic")
    _timed(c, 10, start, "total")
    return c.result()


def criterion_2() -> tuple[bool, str]:
    c = Checks()
    start = time.perf_counter()
    for n in (1, 2, 3):
        g = build(F, n)
        res = solve(g, MATCH, None, BUDGET, witnesses=False)
        beta, theta = (4**n + 2) // 3, 2 ** (2**n - 1)
        c.expect(res.optimum == beta, f"n={n}: matching number {res.optimum}, want {beta}")
        c.expect(2 * res.optimum == g.vertex_count, f"n={n}: not perfect")
        c.expect(res.count == theta, f"n={n}: count {res.count}, want {theta}")
        c.note(f"n={n}: ({res.optimum}, {res.count})")
    _timed(c, 60, start, "elapsed")
    return c.result()


def criterion_3() -> tuple[bool, str]:
    c = Checks()
    start = time.perf_counter()
    q = Quantity(NF, MATCH)
    for n, want in zip((1, 2, 3), (2, 4, 12)):
        g = build(NF, n)
        res = solve(g, MATCH, None, BUDGET, witnesses=False)
        c.expect(res.optimum == want, f"n={n}: matching number {res.optimum}, want {want}")
        if n == 3:
            continue
        state = dec.count_recursion(q, n)
        c.expect(res.count == state.theta, f"n={n}: oracle count {res.count} vs recursion {state.theta}")
        if n == 2:
            _, enumerated = naive_matching(g)
            c.expect(enumerated == state.theta, f"n=2: enumeration {enumerated} vs recursion {state.theta}")
        table = classified_table(g, MATCH, BUDGET)
        c.expect(table[0].count == state.phi, f"n={n}: class-0 count {table[0].count} vs phi {state.phi}")
        per_hub = [p.count for p in table[1].breakdown.values()]
        c.expect(
            per_hub == [state.varphi, state.varphi],
            f"n={n}: per-hub class-1 counts {per_hub} vs varphi {state.varphi}",
        )
        c.note(f"n={n}: theta={res.count}, class-1 per hub {per_hub[0]}, aggregate {table[1].count}")
    c.note("per-hub reading of varphi matches, aggregate is twice it")
    _timed(c, 60, start, "elapsed")
    return c.result()


def criterion_4() -> tuple[bool, str]:
    c = Checks()
    start = time.perf_counter()
    for n in (2, 3):
        res = solve(build(F, n), MIS, None, BUDGET, witnesses=False)
        alpha, count = 2 ** (2 * n - 2), 2 ** (2 ** (2 * n - 2))
        c.expect((res.optimum, res.count) == (alpha, count), f"fractal n={n}: ({res.optimum}, {res.count})")
    literal_ok = True
    for n, want in zip((1, 2, 3), (2, 8, 32)):
        g = build(NF, n)
        res = solve(g, MIS, None, BUDGET)
        c.expect((res.optimum, res.count) == (want, 1), f"non-fractal n={n}: ({res.optimum}, {res.count})")
        mis = set(res.witnesses[0])
        degree_two = {v for v in range(g.vertex_count) if g.degree(v) == 2}
        c.expect(mis == degree_two, f"non-fractal n={n}: MIS is not the degree-2 set")
        literal = {v for v in degree_two if g.meta[v].created_at == n - 1}
        if mis != literal:
            literal_ok = False
            ages = sorted({g.meta[v].created_at for v in mis})
            c.note(f"n={n}: MIS vertices have created_at {ages}")
    c.expect(literal_ok, "MIS != degree-2 vertices with created_at = n-1")
    # the level-1 fractal discrepancy must be reproduced and allowlisted
    g1 = solve(build(F, 1), MIS, None, BUDGET, witnesses=False)
    formula = dec.headline_closed_form(Quantity(F, MIS), 1, strict=False)
    row = verify_level(Quantity(F, MIS), 1)
    c.expect((g1.optimum, formula) == (2, 1), f"fractal n=1: oracle {g1.optimum}, formula {formula}")
    c.expect(row.status == "mismatch" and row.known, f"fractal n=1 row: {row.status}, known={row.known}")
    _timed(c, 120, start, "elapsed")
    return c.result()


def criterion_5() -> tuple[bool, str]:
    c = Checks()
    res2 = solve(build(F, 2), MDS, None, BUDGET, witnesses=False)
    c.expect(res2.optimum == 3, f"G_2: domination number {res2.optimum}, want 3")
    c.expect(res2.count == 2, f"G_2: {res2.count} minimum dominating sets, want 2")

    start = time.perf_counter()
    gamma3 = domination_number(build(F, 3), None, OracleBudget(max_seconds=600.0))
    c.expect(gamma3 == (5 * 4 + 4) // 3, f"G_3: domination number {gamma3}, want 8")
    _timed(c, 600, start, "G_3 branch-and-bound")

    start = time.perf_counter()
    g3 = build(NF, 3)
    exhaustive = small_dominating_sets(g3, 4, BUDGET)
    c.expect((exhaustive.optimum, exhaustive.count) == (4, 1), f"G'_3: ({exhaustive.optimum}, {exhaustive.count})")
    _timed(c, 10, start, "G'_3 exhaustive")
    g2 = build(NF, 2)
    special = set(g2.vertices_with_role(Role.HUB) + g2.vertices_with_role(Role.BORDER))
    # edge replacement keeps ids, so G'_2 sits inside G'_3 on the same ids
    embedded = all(g3.has_edge(u, v) or _path2(g3, u, v) for u, v, _ in g2.edges)
    c.expect(embedded and set(exhaustive.witnesses[0]) == special, "G'_3 MDS != hub+border of G'_2")

    try:
        optional = solve(build(F, 3), MDS, None, OracleBudget(max_seconds=600.0), witnesses=False)
        c.note(f"optional G_3 MDS count {optional.count} (want 16)")
    except Exception as exc:  # non-blocking item
        c.note(f"optional G_3 MDS count skipped: {exc}")
    return c.result()


def _path2(g, u: int, v: int) -> bool:
    return any(g.has_edge(w, v) for w in g.adjacency[u])


def criterion_6() -> tuple[bool, str]:
    c = Checks()
    start = time.perf_counter()
    max_bits = 2**23
    for q in dec.QUANTITIES:
        report = dec.self_check(q, 12, max_bits=max_bits)
        bad = [(r.level, r.item, r.recursion, r.closed_form) for r in report.rows if r.status == "mismatch"]
        c.expect(not bad, f"{q.label}: in-range mismatches {bad}")
        c.expect(report.variants_agree, f"{q.label}: recurrence variants disagree")
    expected = {
        (F, MATCH): lambda n: 2 ** (2**n - 1),
        (F, MIS): lambda n: 2 ** (2 ** (2 * n - 2)),
        (F, MDS): lambda n: 2 ** (2 ** (2 * n - 4)),
        (NF, MIS): lambda n: 1,
        (NF, MDS): lambda n: 1,
    }
    first = {(F, MATCH): 1, (F, MIS): 2, (F, MDS): 3, (NF, MIS): 1, (NF, MDS): 3}
    for (model, problem), fn in expected.items():
        q = Quantity(model, problem)
        for state in dec.count_trajectory(q, 12, max_bits=max_bits):
            if state.level >= first[(model, problem)]:
                c.expect(state.count == fn(state.level), f"{q.label} n={state.level}: count mismatch")
                c.expect(
                    dec.count_closed_form(q, state.level) == fn(state.level),
                    f"{q.label} n={state.level}: closed-form count",
                )
    fm = dec.count_trajectory(Quantity(F, MATCH), 12)
    c.expect(all(s.phi == 1 for s in fm), "fractal phi != 1")
    headline = {
        (F, MATCH): (1, lambda n: _exact_div(4**n + 2)),
        (NF, MATCH): (1, lambda n: _exact_div(2 ** (2 * n - 1) + 4)),
        (F, MIS): (2, lambda n: 2 ** (2 * n - 2)),
        (NF, MIS): (1, lambda n: 2 ** (2 * n - 1)),
        (F, MDS): (2, lambda n: _exact_div(5 * 2 ** (2 * n - 4) + 4)),
        (NF, MDS): (3, lambda n: _exact_div(2 ** (2 * n - 3) + 4)),
    }
    for (model, problem), (lo, fn) in headline.items():
        q = Quantity(model, problem)
        for t in dec.size_trajectory(q, 12):
            if t.level >= lo:
                want = fn(t.level)
                c.expect(t.headline(problem) == want, f"{q.label} n={t.level}: recursion headline")
                c.expect(dec.headline_closed_form(q, t.level) == want, f"{q.label} n={t.level}: closed form")
    _timed(c, 1, start, "elapsed")
    return c.result()


def _exact_div(numerator: int) -> int:
    quotient, rem = divmod(numerator, 3)
    assert rem == 0, numerator
    return quotient


def criterion_7() -> tuple[bool, str]:
    c = Checks()
    start = time.perf_counter()
    compared = 0
    for q in dec.QUANTITIES:
        for n in (1, 2):
            table = classified_table(build(q.model, n), q.problem, BUDGET)
            oracle = tuple(table[k].optimum for k in range(3))
            try:
                formula = dec.published_components(q, n).values
            except dec.FormulaRangeError:
                continue
            for k in range(3):
                if oracle[k] is None and formula[k] is None:
                    continue
                compared += 1
                c.expect(oracle[k] == formula[k], f"{q.label} n={n} k={k}: oracle {oracle[k]}, formula {formula[k]}")
    seed = dec.size_recursion(Quantity(F, MDS), 2).s0
    g0 = classified_table(build(F, 2), MDS, BUDGET)[0].optimum
    c.note(f"{compared} components compared; fractal class-0 domination at n=2: oracle {g0}, stated seed {seed}")
    _timed(c, 60, start, "elapsed")
    return c.result()


def criterion_8() -> tuple[bool, str]:
    c = Checks()
    start = time.perf_counter()
    rng = random.Random(20240601)
    for i in range(200):
        g = random_graph(rng, 14)
        for problem in Problem:
            fast = solve(g, problem, None, BUDGET, witnesses=False)
            slow = naive_solve(g, problem)
            c.expect(
                (fast.optimum, fast.count) == slow,
                f"graph {i} {problem.value}: solver {(fast.optimum, fast.count)}, naive {slow}",
            )
    _timed(c, 60, start, "200 graphs")
    return c.result()


CRITERIA = {
    1: ("structure and construction equivalence", criterion_1),
    2: ("fractal matching number and count", criterion_2),
    3: ("non-fractal matching number and count", criterion_3),
    4: ("independence numbers, counts and MIS structure", criterion_4),
    5: ("domination numbers, counts and MDS structure", criterion_5),
    6: ("recursion / closed-form consistency to n=12", criterion_6),
    7: ("classified tables vs component formulas", criterion_7),
    8: ("optimized vs naive solvers on random graphs", criterion_8),
}


def run(number: int) -> tuple[bool, str]:
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if detail:
        line += f" [{detail}]"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    ok, line = run(number)
    print(line)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
