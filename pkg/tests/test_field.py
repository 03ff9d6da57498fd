from __future__ import annotations

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import PRIME, modp_rank, rigid_rank_closed_form
from rigikit import field
from rigikit.constructions import cycle
from rigikit.field import (
    EchelonBasis,
    basis_insert,
    generic_rank,
    matrix_rank,
    rigid_rank_bound,
    rigidity_matrix,
    sample_coordinates,
    subset_ranks,
)
from rigikit.graph import Graph

elements = st.integers(0, PRIME - 1)


@given(elements, elements)
def test_mulmod_matches_python(a, b):
    assert int(field._mul(np.uint64(a), np.uint64(b))) == a * b % PRIME


@given(elements.filter(bool))
def test_inverse(a):
    assert int(field._inv(np.uint64(a))) * a % PRIME == 1


def test_sample_coordinates():
    assert sample_coordinates(0, 3, 1).shape == (0, 3)
    a, b = sample_coordinates(5, 2, 7), sample_coordinates(5, 2, 7)
    assert (a == b).all()
    assert not (a == sample_coordinates(5, 2, 8)).all()
    assert int(a.max()) < PRIME
    with pytest.raises(ValueError):
        sample_coordinates(3, 0, 1)


def test_rigidity_matrix_shape_and_rows():
    G = Graph.complete(3)
    X = sample_coordinates(3, 2, 0)
    M = rigidity_matrix(G, X)
    assert M.shape == (3, 6)
    # row of edge (0, 1): block 0 holds x0 - x1, block 1 its negation
    for t in range(2):
        diff = (int(X[0, t]) - int(X[1, t])) % PRIME
        assert int(M[0, t]) == diff
        assert int(M[0, 2 + t]) == (-diff) % PRIME
    assert (np.count_nonzero(M, axis=1) <= 4).all()


@settings(max_examples=40)
@given(st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**32))
def test_matrix_rank_matches_python_elimination(rows, cols, seed):
    rng = np.random.default_rng(seed)
    M = rng.integers(0, PRIME, size=(rows, cols), dtype=np.uint64)
    if rows > 1:
        M[-1] = M[0]  # force a dependency sometimes
    assert matrix_rank(M) == modp_rank(M.tolist())


def test_generic_rank_examples():
    assert generic_rank(Graph.complete(4), 2) == 5
    assert generic_rank(cycle(4), 2) == 4
    for d in range(1, 5):
        assert generic_rank(Graph.complete(d + 1), d) == comb(d + 1, 2)


@pytest.mark.parametrize("d", range(1, 6))
def test_complete_graph_closed_form(d):
    for n in range(1, 13):
        assert generic_rank(Graph.complete(n), d) == min(comb(n, 2), rigid_rank_closed_form(n, d))
        assert rigid_rank_bound(n, d) == rigid_rank_closed_form(n, d)


@given(graphs(max_n=7), st.integers(1, 3), st.data())
def test_rank_monotone_under_edge_addition(G, d, data):
    non = G.non_edges()
    if not non:
        return
    e = data.draw(st.sampled_from(non))
    r = generic_rank(G, d)
    assert r <= generic_rank(G.add_edges([e]), d) <= r + 1
    assert r <= min(G.num_edges, rigid_rank_bound(G.n, d))


def test_trials_never_overshoot():
    G = cycle(6)
    assert generic_rank(G, 2, trials=3, seed=5) == 6
    with pytest.raises(ValueError):
        generic_rank(G, 2, trials=0)


def test_echelon_basis_examples():
    B = EchelonBasis(4)
    assert not basis_insert(B, [0, 0, 0, 0])
    assert basis_insert(B, [1, 2, 3, 4]) and B.rank == 1
    with pytest.raises(ValueError):
        B.insert([1, 2])
    G = Graph.complete(4)
    M = rigidity_matrix(G, sample_coordinates(4, 2, 3))
    B = EchelonBasis(M.shape[1])
    assert sum(B.insert(row) for row in M) == 5


@settings(max_examples=30)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_echelon_basis_is_reduced_and_tracks_span(k, seed):
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, 5, size=(k, 6)).astype(np.uint64)
    B = EchelonBasis(6)
    for r in rows:
        before = B.rank
        added = B.insert(r)
        assert B.rank == before + int(added)
    R = B.rows
    for i, p in enumerate(B.pivots):
        col = R[:, p]
        assert int(col[i]) == 1 and np.count_nonzero(col) == 1
    assert B.rank == modp_rank(rows.tolist())
    for r in rows:
        assert B.reduces_to_zero(r)


@settings(max_examples=25)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_subset_ranks_match_direct(k, seed):
    rng = np.random.default_rng(seed)
    M = rng.integers(0, 3, size=(k, 5)).astype(np.uint64)
    table = subset_ranks(M)
    for mask in range(1 << k):
        chosen = [M[i].tolist() for i in range(k) if mask >> i & 1]
        assert table[mask] == (modp_rank(chosen) if chosen else 0)
