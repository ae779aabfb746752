import pytest

from sfgraphs import (
    CapabilityError,
    EdgeKind,
    Graph,
    Method,
    Model,
    Role,
    UsageError,
    boundary,
    build,
    isomorphic,
    predicted_counts,
)
from sfgraphs.generators import hub_pair

MODELS = list(Model)


def test_predicted_counts():
    assert (predicted_counts(0).vertices, predicted_counts(0).edges) == (2, 1)
    assert (predicted_counts(1).vertices, predicted_counts(1).edges) == (4, 5)
    assert (predicted_counts(3).vertices, predicted_counts(3).edges) == (44, 85)
    for n in range(1, 30):
        p, q = predicted_counts(n), predicted_counts(n - 1)
        assert p.vertices == 4 * q.vertices - 4
        assert p.edges == 4 * q.edges + 1


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("n", range(7))
def test_counts_match_prediction(model, n):
    g = build(model, n)
    p = predicted_counts(n)
    assert (g.vertex_count, g.edge_count) == (p.vertices, p.edges)
    assert sum(g.degrees()) == 2 * g.edge_count


def test_examples():
    g0 = build(Model.FRACTAL, 0)
    assert (g0.vertex_count, [e.kind for e in g0.edges]) == (2, [EdgeKind.ITERATIVE])
    g2 = build(Model.FRACTAL, 2, Method.EDGE_REPLACEMENT)
    assert (g2.vertex_count, g2.edge_count) == (12, 21)
    g3 = build(Model.NONFRACTAL, 3, Method.MERGE)
    assert (g3.vertex_count, g3.edge_count) == (44, 85)


def test_nonfractal_level_one():
    g = build(Model.NONFRACTAL, 1)
    x, y = g.vertices_with_role(Role.HUB)
    w, z = g.vertices_with_role(Role.BORDER)
    assert g.edge_kind(x, y) is EdgeKind.NON_ITERATIVE
    assert not g.has_edge(w, z)
    assert sorted(g.degrees()) == [2, 2, 3, 3]


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("n", range(4))
def test_methods_agree(model, n):
    a = build(model, n, Method.EDGE_REPLACEMENT)
    b = build(model, n, Method.MERGE)
    assert isomorphic(a, b, match_meta=True)


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("n", range(1, 5))
def test_roles_and_creation(model, n):
    g = build(model, n)
    roles = [m.role for m in g.meta]
    if model is Model.FRACTAL:
        assert (roles.count(Role.INITIAL), roles.count(Role.HUB), roles.count(Role.BORDER)) == (2, 2, 0)
    else:
        assert (roles.count(Role.INITIAL), roles.count(Role.HUB), roles.count(Role.BORDER)) == (0, 2, 2)
    assert all(0 <= m.created_at <= n for m in g.meta)
    # level-0 pair created at 0, the iteration-1 pair at 1
    first, second = (Role.INITIAL, Role.HUB) if model is Model.FRACTAL else (Role.HUB, Role.BORDER)
    assert {g.meta[v].created_at for v in g.vertices_with_role(first)} == {0}
    assert {g.meta[v].created_at for v in g.vertices_with_role(second)} == {1}
    # each iteration k adds 2 vertices per iterative edge of level k-1
    created = [sum(m.created_at == k for m in g.meta) for k in range(n + 1)]
    assert created == [2] + [2 * 4 ** (k - 1) for k in range(1, n + 1)]


@pytest.mark.parametrize("model", MODELS)
def test_boundary(model):
    g0 = build(model, 0)
    assert boundary(g0) == (0, 1)
    for n in range(1, 4):
        g = build(model, n)
        a, b = boundary(g)
        if model is Model.FRACTAL:
            assert not g.has_edge(a, b)
            assert g.degree(a) == g.degree(b) == 2**n
        else:
            assert g.has_edge(a, b)
    g1 = build(model, 1)
    a, b = boundary(g1)
    assert g1.degree(a) == (2 if model is Model.FRACTAL else 3)
    with pytest.raises(UsageError):
        boundary(Graph(2, [(0, 1)]))
    assert len(hub_pair(g1)) == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_non_iterative_edges(n):
    for model in MODELS:
        g = build(model, n)
        kinds = [e.kind for e in g.edges]
        # one non-iterative edge per replaced iterative edge: (4**n - 1) / 3 of them
        assert kinds.count(EdgeKind.NON_ITERATIVE) == (4**n - 1) // 3
        assert kinds.count(EdgeKind.ITERATIVE) == 4**n


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("n", range(7))
def test_iterative_degrees_are_powers_of_two(model, n):
    g = build(model, n)
    for v in range(g.vertex_count):
        d = sum(g.edge_kind(v, u) is EdgeKind.ITERATIVE for u in g.adjacency[v])
        assert d & (d - 1) == 0


def test_total_degree_sets():
    # counting non-iterative edges too, degrees leave the powers of two
    assert sorted(set(build(Model.FRACTAL, 3).degrees())) == [3, 5, 8, 9]
    assert sorted(set(build(Model.NONFRACTAL, 3).degrees())) == [2, 6, 14, 15]


def test_prefix_property():
    for model in MODELS:
        small, big = build(model, 2), build(model, 3)
        assert small.meta == big.meta[: small.vertex_count]


def test_deterministic():
    assert build(Model.FRACTAL, 4) == build(Model.FRACTAL, 4)


def test_level_cap(monkeypatch):
    with pytest.raises(CapabilityError):
        build(Model.FRACTAL, 9)
    with pytest.raises(CapabilityError):
        build(Model.FRACTAL, 3, max_level=2)
    monkeypatch.setenv("SFGRAPHS_MAX_LEVEL", "1")
    with pytest.raises(CapabilityError):
        build(Model.FRACTAL, 2)
    with pytest.raises(UsageError):
        build(Model.FRACTAL, -1)
