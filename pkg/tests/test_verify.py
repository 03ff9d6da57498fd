from __future__ import annotations

import json
import math

import pytest

from rigikit.canon import canonical_key
from rigikit.constructions import catalog, cycle
from rigikit.graph import Graph, decode_graph6, delta, eta
from rigikit.matroid import is_rigid
from rigikit.verify import (
    EXPLORATORY,
    NOT_APPLICABLE,
    VERIFIED,
    VerificationReport,
    compute_f,
    compute_g,
    f_formula,
    f_status,
    g_formula,
    g_status,
    globally_rigid_2d,
    random_rigidity_experiment,
    random_threshold_dimension,
    standard_pairing,
    threshold_report,
    verify_small_circuits,
    verify_coning,
    verify_contraction_chain,
    verify_degree_sum,
    verify_ecount,
    verify_global_2d,
    verify_min_degree_d,
    verify_min_degree_3,
    verify_linked_neighbourhood,
    verify_theorem_R2,
    verify_theorem_R3,
)


def test_threshold_examples():
    assert compute_f(7, 3) == 5
    assert compute_g(5, 3) == 7
    assert compute_g(4, 2) == 5


def test_thresholds_for_tiny_n():
    # on at most d+1 vertices only complete graphs are rigid
    assert compute_f(3, 3) == 2
    assert compute_g(3, 3) == 3  # the path on 3 vertices has eta 2
    with pytest.raises(ValueError):
        compute_f(12, 2)


@pytest.mark.parametrize("n", range(3, 8))
def test_monotone_in_dimension_and_f_below_half_g(n):
    fs = [compute_f(n, d) for d in (1, 2, 3)]
    gs = [compute_g(n, d) for d in (1, 2, 3)]
    assert fs == sorted(fs) and gs == sorted(gs)
    for f, g in zip(fs, gs):
        assert f <= math.ceil(g / 2)


def test_status_labels():
    assert f_status(8, 2) == VERIFIED and g_status(8, 3) == VERIFIED
    assert f_status(10, 4) == EXPLORATORY and g_status(10, 4) == EXPLORATORY
    assert threshold_report("g", 5, 3).data["value"] == 7
    assert f_formula(7, 3) == 5 and g_formula(5, 3) == 7
    with pytest.raises(ValueError):
        f_formula(7, 4)


@pytest.mark.parametrize("n,expected", [(5, ["W5"]), (6, ["B6"]), (7, ["C7_1", "C7_2"]), (8, [])])
def test_R3_exceptions(n, expected):
    rep = verify_theorem_R3(n)
    assert rep.violations == [] and rep.passed
    assert rep.exceptions == expected


def test_R2_exception_is_C4():
    rep = verify_theorem_R2(4)
    assert rep.exceptions == ["C4"] and rep.counts["non_rigid"] == 1 and rep.passed
    for n in range(5, 8):
        rep = verify_theorem_R2(n)
        assert rep.exceptions == [] and rep.passed


def test_degree_sum_examples():
    rep = verify_degree_sum(8, 2, "f-bound")
    assert rep.passed and rep.examined > 0
    rep = verify_degree_sum(8, 3, "g-tight")
    assert rep.passed and rep.counts["tight_witness"]
    for g6 in rep.witnesses:  # witnesses are re-checkable
        G = decode_graph6(g6)
        assert eta(G) == g_formula(8, 3) - 1 and not is_rigid(G, 3)
    rep = verify_degree_sum(7, 2, "f-tight")
    assert rep.passed
    for g6 in rep.witnesses:
        G = decode_graph6(g6)
        assert delta(G) == f_formula(7, 2) - 1 and not is_rigid(G, 2)
    assert verify_degree_sum(8, 2, "g-5d").passed
    assert verify_degree_sum(8, 2, "g-d-1").passed
    assert verify_degree_sum(7, 3, "g-d-1").status == NOT_APPLICABLE
    with pytest.raises(ValueError):
        verify_degree_sum(7, 2, "bogus")


def test_missing_witness_fails_the_report():
    rep = VerificationReport("x", {}, missing=["something"])
    assert not rep.passed


def test_ecount_examples():
    assert verify_ecount(6, 2).passed and verify_ecount(8, 3).passed
    for n in range(1, 10):
        for d in range(1, n + 1):
            assert 4 * math.comb(n, 2) >= n * (n + d - 2)
    with pytest.raises(ValueError):
        verify_ecount(3, 4)


def test_global_rigidity_examples():
    assert globally_rigid_2d(catalog("W5").graph)
    assert not globally_rigid_2d(cycle(4))
    assert globally_rigid_2d(Graph.complete(4))
    assert globally_rigid_2d(Graph.complete(3)) and not globally_rigid_2d(Graph.from_edges(3, [(0, 1), (1, 2)]))
    for n in (5, 6, 7):
        assert verify_global_2d(n).passed


def test_lemma_checkers_small():
    for n in range(4, 8):
        for d in (2, 3):
            assert verify_linked_neighbourhood(n, d).passed
            assert verify_min_degree_d(n, d).passed
    assert verify_min_degree_d(4, 2).status == NOT_APPLICABLE
    assert verify_min_degree_3(5).exceptions == ["W5"]
    assert verify_min_degree_3(6).exceptions == ["B6"]
    assert verify_min_degree_3(7).exceptions == []
    rep = verify_small_circuits(7)
    assert rep.passed and rep.exceptions == ["C7_1", "C7_2"] and rep.counts["circuits"] > 0


def test_reports_replay_and_serialise():
    a, b = verify_theorem_R3(6, seed=5), verify_theorem_R3(6, seed=5)
    assert a.to_json() == b.to_json()
    data = json.loads(a.to_json())
    assert "millis" not in data and data["seed"] == 5
    assert "millis" in a.as_dict(timings=True)


def test_parallel_matches_serial():
    assert verify_theorem_R3(7, jobs=2).to_json() == verify_theorem_R3(7, jobs=1).to_json()


def test_random_experiment_far_below_threshold():
    rep = random_rigidity_experiment(20, 0.5, 3, 50, seed=1)
    assert rep.data["fraction"] == 1.0 and rep.counts["rigid"] == 50
    assert random_rigidity_experiment(20, 0.5, 3, 5, seed=2).to_json() == random_rigidity_experiment(20, 0.5, 3, 5, seed=2).to_json()
    assert random_threshold_dimension(64) == 10


def test_contraction_chain_on_complete_graph():
    n, d = 12, 2
    rep = verify_contraction_chain(Graph.complete(n), standard_pairing(n), d)
    # in K_n the pair (u, v) always shares every other surviving vertex
    assert rep.common == [n - 2 - i for i in range(n // 2)]
    assert rep.half_min_degree == n // 2 - 1
    assert rep.certificate and rep.consistent and rep.graph_rigid
    assert rep.expected[0] == (n - 2) / 4


def test_contraction_chain_rejects_bad_pairings():
    G = Graph.complete(6)
    with pytest.raises(ValueError):
        verify_contraction_chain(G, [(0, 1), (1, 2), (4, 5)], 2)
    with pytest.raises(ValueError):
        verify_contraction_chain(G, [(0, 1), (2, 3)], 2)
    with pytest.raises(ValueError):
        verify_contraction_chain(Graph.complete(5), [(0, 1), (2, 3)], 2)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_coning_on_seven_vertices(d):
    rep = verify_coning(7, d)
    assert rep.examined == 1044 and rep.passed
