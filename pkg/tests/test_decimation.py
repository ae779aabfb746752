import pytest
from hypothesis import given
from hypothesis import strategies as st

from sfgraphs import CapabilityError, FormulaRangeError, Model, Problem, Quantity, UsageError, build
from sfgraphs import decimation as dec
from sfgraphs.oracle import classified_table, solve

F, NF = Model.FRACTAL, Model.NONFRACTAL
MATCH, MIS, MDS = Problem.MATCHING, Problem.INDEPENDENT_SET, Problem.DOMINATING_SET


def q(model, problem):
    return Quantity(model, problem)


def test_size_recursion_examples():
    assert dec.size_recursion(q(F, MATCH), 2).values == (5, 5, 6)
    t = dec.size_recursion(q(F, MDS), 3)
    assert (t.s0, t.s2) == (10, 8)
    assert dec.size_recursion(q(NF, MIS), 2).values == (8, 5, None)
    with pytest.raises(UsageError):
        dec.size_recursion(q(NF, MDS), 2)
    with pytest.raises(UsageError):
        dec.size_recursion(q(F, MATCH), 1, variant="other")


def test_closed_form_examples():
    assert dec.headline_closed_form(q(F, MATCH), 3) == 22
    assert dec.headline_closed_form(q(NF, MDS), 3) == 4
    with pytest.raises(FormulaRangeError) as err:
        dec.headline_closed_form(q(F, MIS), 1)
    assert "independence" in str(err.value) and err.value.formula
    assert dec.headline_closed_form(q(F, MIS), 1, strict=False) == 1
    triple, headline = dec.size_closed_form(q(F, MATCH), 3)
    assert (triple.values, headline) == ((21, 21, 22), 22)


def test_narrowed_component_ranges():
    assert dec.component_closed_form(q(F, MIS), 3).s2 is None
    assert dec.published_components(q(F, MIS), 3).s2 == 9
    assert dec.component_closed_form(q(F, MDS), 3).s0 is None
    assert dec.component_closed_form(q(F, MDS), 2).s0 == 3
    assert dec.component_closed_form(q(NF, MDS), 3).s0 is None
    assert dec.component_closed_form(q(NF, MDS), 4).s0 == 26


def test_count_examples():
    s = dec.count_recursion(q(F, MATCH), 3)
    assert (s.theta, s.phi) == (128, 1)
    s = dec.count_recursion(q(NF, MATCH), 2)
    assert (s.theta, s.phi, s.varphi) == (136, 16, 48)
    assert dec.count_recursion(q(NF, MIS), 5).x == 1
    assert dec.count_recursion(q(F, MDS), 3).y == 16
    assert dec.count_closed_form(q(F, MATCH), 5) == 2**31
    assert dec.count_closed_form(q(NF, MATCH), 4) is None
    assert dec.count_closed_form(q(NF, MDS), 7) == 1
    assert dec.CountState.log2(2**31) == 31 and dec.CountState.log2(136) is None


def test_bit_budget():
    with pytest.raises(CapabilityError):
        dec.count_recursion(q(F, MIS), 12)
    assert dec.count_recursion(q(F, MIS), 12, max_bits=2**23).x == 1 << 2**22


@pytest.mark.parametrize("quantity", dec.QUANTITIES, ids=lambda x: x.label)
def test_self_check_consistent(quantity):
    report = dec.self_check(quantity, 12, max_bits=2**23)
    assert report.consistent
    assert report.variants_agree


def test_self_check_flags_known_items():
    fd = dec.self_check(q(F, MDS), 2)
    assert [(r.level, r.item, r.recursion, r.closed_form) for r in fd.mismatches] == [(2, "s0", 4, 3)]
    fm = dec.self_check(q(F, MATCH), 12)
    assert not fm.mismatches


@given(st.integers(1, 60))
def test_divisibility(n):
    for quantity in dec.QUANTITIES:
        first = dec._HEADLINE_RANGE[(quantity.model, quantity.problem)][1]
        if n >= first:
            dec.published_components(quantity, n)  # raises if a /3 is inexact
            dec.headline_closed_form(quantity, n, strict=False)


@pytest.mark.parametrize("n", range(1, 13))
def test_matching_triples_bounded(n):
    for model in Model:
        s0, s1, s2 = dec.size_recursion(q(model, MATCH), n).values
        assert s0 <= s1 <= s2 <= s0 + 2


def test_branch_sets_stable():
    for quantity in dec.QUANTITIES:
        traj = dec.size_trajectory(quantity, 12)
        # steps n -> n+1 with n >= 2 all pick the same terms
        later = [t.branches for t in traj[1:] if t.level >= 3]
        assert all(b == later[0] for b in later), quantity.label
    fi = dec.size_trajectory(q(F, MIS), 6)
    assert all(t.branches[0] == ("4*s0",) for t in fi if t.level >= 3)


ORACLE_CASES = [(m, p, n) for m in Model for p in Problem for n in (1, 2)] + [
    (m, p, 3) for m in Model for p in (MATCH, MIS)
] + [(NF, MDS, 3), (F, MDS, 3)]


@pytest.mark.parametrize("model,problem,n", ORACLE_CASES)
def test_recursion_vs_oracle(model, problem, n):
    quantity = q(model, problem)
    g = build(model, n)
    table = classified_table(g, problem)
    oracle = tuple(table[k].optimum for k in range(3))
    if n >= dec.size_base_level(quantity):
        rec = dec.size_recursion(quantity, n).values
        expected_bad = {(F, MDS, 2): {0}, (F, MDS, 3): {0}}.get((model, problem, n), set())
        for k in range(3):
            assert (rec[k] == oracle[k]) == (k not in expected_bad), (k, rec, oracle)
    if n >= dec.count_base_level(quantity):
        count = solve(g, problem, witnesses=False).count
        rec_count = dec.count_recursion(quantity, n).count
        known = {(F, MIS, 1), (F, MDS, 2), (NF, MDS, 2)}
        assert (rec_count == count) == ((model, problem, n) not in known)
