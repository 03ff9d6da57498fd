from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigikit.constructions import (
    EXCEPTIONAL_R3,
    catalog,
    catalog_names,
    cycle_attach,
    f_extremal_params,
    glued_cliques,
    gnp,
    one_extension,
    spider_split,
    vertex_split,
    zero_extension,
)
from rigikit.graph import Graph, contract_pair, delta, eta
from rigikit.matroid import is_rigid, rank

K4 = Graph.complete(4)


def test_zero_extension_example():
    H = zero_extension(K4, 3, [0, 1, 2])
    assert H.n == 5 and H.num_edges == 9 and H.neighbors(4) == [0, 1, 2]
    assert is_rigid(H, 3)
    with pytest.raises(ValueError):
        zero_extension(K4, 3, [0, 1])
    with pytest.raises(ValueError):
        zero_extension(K4, 2, [0, 0])


def test_one_extension_example():
    H = one_extension(K4, 2, (0, 1), [0, 1, 2])
    assert not H.has_edge(0, 1) and H.neighbors(4) == [0, 1, 2]
    assert H.num_edges == 8 and is_rigid(H, 2)
    with pytest.raises(ValueError):
        one_extension(K4, 2, (0, 1), [0, 2, 3])
    with pytest.raises(ValueError):
        one_extension(K4.remove_edges([(0, 1)]), 2, (0, 1), [0, 1, 2])


def test_vertex_split_example():
    H = vertex_split(K4, 2, 0, [1, 2], [2, 3])
    assert H.n == 5 and H.has_edge(0, 4)
    assert H.neighbors(4) == [0, 2, 3] and H.neighbors(0) == [1, 2, 4]
    assert contract_pair(H, 0, 4) == K4
    assert is_rigid(H, 2)
    with pytest.raises(ValueError):
        vertex_split(K4, 3, 0, [1, 2], [2, 3])  # needs two shared
    with pytest.raises(ValueError):
        vertex_split(K4, 2, 0, [1], [2])  # misses neighbour 3


def test_spider_split_example():
    G = Graph.complete(5)
    H = spider_split(G, 2, 0, [1, 2, 3], [2, 3, 4])
    assert not H.has_edge(0, 5) and H.neighbors(5) == [2, 3, 4]
    assert contract_pair(H, 0, 5) == G
    assert is_rigid(H, 2)
    with pytest.raises(ValueError):
        spider_split(G, 2, 0, [1, 2], [2, 3, 4])


def test_cycle_attach_example():
    H = cycle_attach(K4, [(0, 1), (1, 2), (2, 3)])
    assert H.n == 7 and H.num_edges == 6 + 9
    assert all(H.degree(v) == 4 for v in range(4, 7))
    assert is_rigid(H, 3)
    with pytest.raises(ValueError):
        cycle_attach(K4, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        cycle_attach(K4, [(0, 1), (0, 1), (1, 0)])
    with pytest.raises(ValueError):
        cycle_attach(K4, [(0, 0), (1, 2), (2, 3)])


@settings(max_examples=30)
@given(st.integers(2, 4), st.data())
def test_extensions_keep_complete_graphs_rigid(d, data):
    G = Graph.complete(d + 2)
    S = data.draw(st.lists(st.integers(0, G.n - 1), min_size=d, max_size=d, unique=True))
    assert is_rigid(zero_extension(G, d, S), d)
    T = data.draw(st.lists(st.integers(0, G.n - 1), min_size=d + 1, max_size=d + 1, unique=True))
    assert is_rigid(one_extension(G, d, (T[0], T[1]), T), d)


@pytest.mark.parametrize("name", list(catalog_names()[:5]))
def test_fixed_catalogue_metadata(name):
    assert catalog(name).mismatches() == []


def test_exceptional_graphs():
    assert set(EXCEPTIONAL_R3) <= set(catalog_names())
    W5 = catalog("W5").graph
    assert rank(W5, 3) == 8 and delta(W5) == 3 and eta(W5) == 6
    assert catalog("C7_2").graph.num_edges == 14


@pytest.mark.parametrize("n,d", [(6, 2), (7, 2), (8, 3), (9, 3), (10, 4), (11, 5)])
def test_f_extremal_is_not_rigid_with_large_min_degree(n, d):
    entry = catalog("f_extremal", n, d)
    assert entry.mismatches() == []
    a, b, s = f_extremal_params(n, d)
    assert s == d - 1 and a + b - s == n
    assert not is_rigid(entry.graph, d)
    assert delta(entry.graph) == min(a, b) - 1


def test_glued_cliques_inline():
    e = catalog("glued_cliques(4,5,2)")
    assert e.graph == glued_cliques(4, 5, 2)
    assert e.mismatches() == []
    with pytest.raises(ValueError):
        glued_cliques(2, 5, 2)
    assert catalog("K(5)").mismatches() == [] and catalog("C(6)").mismatches() == []
    with pytest.raises(ValueError):
        catalog("nope")


def test_gnp_determinism_and_edge_density():
    assert gnp(30, 0.3, 5) == gnp(30, 0.3, 5)
    assert catalog("gnp(30,0.3,5)").graph == gnp(30, 0.3, 5)
    n, p, trials = 40, 0.25, 200
    counts = np.array([gnp(n, p, [11, i]).num_edges for i in range(trials)])
    pairs = n * (n - 1) / 2
    sd = math.sqrt(pairs * p * (1 - p) / trials)
    assert abs(counts.mean() - pairs * p) < 4 * sd
