import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from chipfire import (Digraph, ParseError, ValidationError, format_digraph, is_eulerian,
                      laplacian, parse_digraph, scc_decompose)
from chipfire.generate import random_digraph, random_eulerian
from conftest import six_graph


def test_parse_triangle():
    g = parse_digraph("3\n0 1 0\n0 0 1\n1 0 0")
    assert g.adj == ((0, 1, 0), (0, 0, 1), (1, 0, 0))


def test_parse_doubled_two_cycle():
    g = parse_digraph("# doubled\n2\n0 2\n2 0\n")
    assert g.out_degree == (2, 2)
    assert g.in_degree == (2, 2)


def test_parse_six_graph():
    rows = "\n".join(" ".join(map(str, r)) for r in six_graph().adj)
    g = parse_digraph(f"6\n{rows}")
    assert g.out_degree == (2, 2, 3, 3, 1, 1)
    assert sum(g.out_degree) == 12


@pytest.mark.parametrize("text, exc", [
    ("", ParseError),
    ("x\n0", ParseError),
    ("2\n0 a\n1 0", ParseError),
    ("2\n1 1\n1 0", ValidationError),          # loop
    ("2\n0 0\n0 0", ValidationError),          # disconnected
    ("2\n0 -1\n1 0", ValidationError),         # negative
    ("2\n0 1 0\n1 0", ValidationError),        # ragged
    ("3\n0 1 0\n1 0 0", ValidationError),      # missing row
])
def test_parse_rejects(text, exc):
    with pytest.raises(exc):
        parse_digraph(text)


def test_format_round_trip(triangle):
    assert parse_digraph(format_digraph(triangle, comment="tri")) == triangle


def test_big_multiplicities_stay_exact():
    g = parse_digraph(f"2\n0 {10**40}\n{10**40} 0")
    assert g.out_degree == (10**40, 10**40)
    assert is_eulerian(g)


def test_scc_triangle(triangle):
    d = scc_decompose(triangle)
    assert d.components == ((0, 1, 2),)
    assert d.is_sink == (True,)


def test_scc_six(six):
    d = scc_decompose(six)
    assert d.components == ((0, 1, 2, 3), (4, 5))
    assert d.is_sink == (False, True)
    assert {frozenset(c) for c in d.components} == brute.scc_sets(six.adj)


def test_scc_path(path2):
    d = scc_decompose(path2)
    assert d.components == ((0,), (1,))
    assert d.is_sink == (False, True)
    assert d.component_of == (0, 1)


def test_scc_tie_break_by_smallest_vertex():
    # two source singletons {v3} and {v1} both feed v2
    g = Digraph(((0, 1, 0), (0, 0, 0), (0, 1, 0)))
    assert scc_decompose(g).components == ((0,), (2,), (1,))


def test_eulerian_examples(triangle, doubled, six):
    assert is_eulerian(triangle)
    assert is_eulerian(doubled)
    assert not is_eulerian(six)
    assert six.in_degree[4] == 2 and six.out_degree[4] == 1


def test_laplacian_triangle(triangle):
    L = laplacian(triangle)
    assert L.column(0) == (-1, 1, 0)
    assert L.column(1) == (0, -1, 1)
    assert L.column(2) == (1, 0, -1)


def test_laplacian_doubled(doubled):
    assert laplacian(doubled).entries == ((-2, 2), (2, -2))


def test_laplacian_six(six):
    L = laplacian(six)
    assert tuple(L[v, v] for v in range(6)) == (-2, -2, -3, -3, -1, -1)


def _random_graph(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    return random_eulerian(n, rng) if seed % 3 == 0 else random_digraph(n, rng)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_graph_invariants(seed):
    g = _random_graph(seed)
    L = laplacian(g)
    assert L.entries == tuple(map(tuple, brute.lap(g.adj)))
    for v in range(g.n):
        assert sum(L.column(v)) == 0
        assert L[v, v] <= 0
        assert all(L[u, v] >= 0 for u in range(g.n) if u != v)
    d = scc_decompose(g)
    assert sorted(v for c in d.components for v in c) == list(range(g.n))
    assert {frozenset(c) for c in d.components} == brute.scc_sets(g.adj)
    for u in range(g.n):
        for v in range(g.n):
            if g.adj[u][v]:
                assert d.component_of[u] <= d.component_of[v]
    for i, c in enumerate(d.components):
        leaves = any(d.component_of[w] != i for u in c for w in range(g.n) if g.adj[u][w])
        assert d.is_sink[i] == (not leaves)
    assert any(d.is_sink)
    if is_eulerian(g):
        assert len(d) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_firing_conserves_chips(seed, data):
    g = _random_graph(seed)
    x = data.draw(st.lists(st.integers(0, 50), min_size=g.n, max_size=g.n))
    v = data.draw(st.integers(0, g.n - 1))
    col = laplacian(g).column(v)
    assert sum(a + b for a, b in zip(x, col)) == sum(x)
