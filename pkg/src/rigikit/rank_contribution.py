"""Rank contributions of single vertices under a uniformly random vertex order.

For an ordering ``pi`` let ``T`` be the set of vertices preceding ``v``.  The
rank contribution of ``v`` is ``r(G[T + v]) - r(G[T])``; its expectation over
``pi`` is ``rc``.  Because ``|T|`` is uniform on ``0..n-1`` and ``T`` is a
uniform subset of that size, the expectation is a size-weighted average over
subsets of ``V - v`` and never needs the ``n!`` orderings.

``rc_star`` replaces the induced-subgraph gain by the rank, in the matroid
contracted onto the star of ``v``, of the edges from ``v`` into ``T``.

Exact values are :class:`fractions.Fraction`; Monte Carlo estimates carry a
sample standard error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .field import subset_ranks
from .graph import contains_clique
from .matroid import RigidityOracle

ExactRational = Fraction

RC_EXACT_MAX_N = 12
RC_STAR_EXACT_MAX_DEGREE = 20

PASS = "PASS"
FAIL = "FAIL"
NOT_APPLICABLE = "NOT-APPLICABLE"


def _check_vertex(O: RigidityOracle, v: int):
    if not 0 <= v < O.n:
        raise ValueError(f"vertex {v} out of range")


def rc_exact(O: RigidityOracle, v: int, max_n: int = RC_EXACT_MAX_N) -> Fraction:
    _check_vertex(O, v)
    n = O.n
    if n > max_n:
        raise ValueError(f"n={n} exceeds the exhaustive bound {max_n}; use rc_monte_carlo")
    others = [u for u in range(n) if u != v]
    vbit = 1 << v
    by_size = [0] * n
    for sub in range(1 << (n - 1)):
        mask = 0
        for i, u in enumerate(others):
            if sub >> i & 1:
                mask |= 1 << u
        gain = O.rank_of_vertex_subset(mask | vbit) - O.rank_of_vertex_subset(mask)
        by_size[sub.bit_count()] += gain
    total = sum(Fraction(s, comb(n - 1, i)) for i, s in enumerate(by_size))
    return total / n


def rc_all(O: RigidityOracle) -> list[Fraction]:
    return [rc_exact(O, v) for v in range(O.n)]


def _star_table(O: RigidityOracle, v: int) -> np.ndarray:
    _, R = O.contracted_star(v)
    return subset_ranks(R)


def rc_star_exact(O: RigidityOracle, v: int, max_degree: int = RC_STAR_EXACT_MAX_DEGREE) -> Fraction:
    _check_vertex(O, v)
    k = O.graph.degree(v)
    if k > max_degree:
        raise ValueError(f"deg({v})={k} exceeds the exhaustive bound {max_degree}; use rc_star_monte_carlo")
    table = _star_table(O, v)
    by_size = [0] * (k + 1)
    for mask in range(1 << k):
        by_size[mask.bit_count()] += int(table[mask])
    total = sum(Fraction(s, comb(k, i)) for i, s in enumerate(by_size))
    return total / (k + 1)


# -- Monte Carlo -------------------------------------------------------------


@dataclass(frozen=True)
class Estimate:
    mean: Fraction
    stderr: float
    samples: int
    seed: object

    def within(self, value, sigmas: float = 4.0) -> bool:
        return abs(float(self.mean - Fraction(value))) <= sigmas * self.stderr + 1e-12


def _estimate(draws: list[int], seed) -> Estimate:
    m = len(draws)
    mean = Fraction(sum(draws), m)
    if m < 2:
        return Estimate(mean, math.inf, m, seed)
    mu = sum(draws) / m
    var = sum((x - mu) ** 2 for x in draws) / (m - 1)
    return Estimate(mean, math.sqrt(var / m), m, seed)


def _orders(n: int, samples: int, seed):
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        yield rng.permutation(n).tolist()


def rc_monte_carlo(O: RigidityOracle, v: int, samples: int, seed=0) -> Estimate:
    """Average of ``samples`` independent draws of the contribution of ``v``."""
    _check_vertex(O, v)
    draws = []
    for order in _orders(O.n, samples, seed):
        mask = 0
        for u in order[: order.index(v)]:
            mask |= 1 << u
        draws.append(O.rank_of_vertex_subset(mask | 1 << v) - O.rank_of_vertex_subset(mask))
    return _estimate(draws, seed)


def rc_star_monte_carlo(O: RigidityOracle, v: int, samples: int, seed=0) -> Estimate:
    _check_vertex(O, v)
    star, R = O.contracted_star(v)
    position = {(a if a != v else b): i for i, (a, b) in enumerate(star)}
    small = len(star) <= 16
    table = subset_ranks(R) if small else None
    cache: dict[int, int] = {}
    draws = []
    for order in _orders(O.n, samples, seed):
        mask = 0
        for u in order[: order.index(v)]:
            if u in position:
                mask |= 1 << position[u]
        if small:
            draws.append(int(table[mask]))
        else:
            if mask not in cache:
                F = [star[i] for i in range(len(star)) if mask >> i & 1]
                cache[mask] = O.contracted_rank(v, F)
            draws.append(cache[mask])
    return _estimate(draws, seed)


# -- lemma checkers ----------------------------------------------------------


@dataclass
class LemmaCheck:
    lemma: str
    vertex: int
    d: int
    status: str
    bound: Fraction | None = None
    rc_star: Fraction | None = None
    hypothesis: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "vertex": self.vertex,
            "d": self.d,
            "status": self.status,
            "bound": None if self.bound is None else str(self.bound),
            "rc_star": None if self.rc_star is None else str(self.rc_star),
            "hypothesis": self.hypothesis,
        }


def _judge(lemma, O, v, hyp, ok, bound_fn) -> LemmaCheck:
    if not ok:
        return LemmaCheck(lemma, v, O.d, NOT_APPLICABLE, hypothesis=hyp)
    bound = bound_fn()
    value = rc_star_exact(O, v)
    return LemmaCheck(lemma, v, O.d, PASS if value >= bound else FAIL, bound, value, hyp)


def check_rc_tbound(O: RigidityOracle, v: int) -> LemmaCheck:
    """Bound from the rank drop ``t = r(G) - r(G - v) - d`` when ``t >= 0``."""
    _check_vertex(O, v)
    d, k = O.d, O.graph.degree(v)
    drop = O.rank() - O.rank_of_vertex_subset(((1 << O.n) - 1) & ~(1 << v))
    t = drop - d
    hyp = {"t": t, "degree": k}
    return _judge(
        "tbound", O, v, hyp, t >= 0,
        lambda: d + Fraction(t * (k - d + 1) - d * (d + 1), 2 * (k + 1)),
    )


def check_rc_Kfree(O: RigidityOracle, v: int) -> LemmaCheck:
    """Closed, ``K_{d+2}``-free, ``deg(v) >= d+1``: ``rc* >= d + 1 - C(d+2,2)/(k+1)``."""
    _check_vertex(O, v)
    d, k = O.d, O.graph.degree(v)
    hyp = {"degree": k}
    if k >= d + 1:
        hyp["clique_free"] = not contains_clique(O.graph, d + 2)
        hyp["closed"] = hyp["clique_free"] and O.is_closed()
    ok = k >= d + 1 and hyp["clique_free"] and hyp["closed"]
    return _judge("Kfree", O, v, hyp, ok, lambda: d + 1 - Fraction(comb(d + 2, 2), k + 1))


def check_rc_geq_d(O: RigidityOracle, v: int) -> LemmaCheck:
    """``G`` not rigid, ``G + K(N(v))`` rigid, ``deg(v) >= d``: ``rc* >= d + 1/2 - C(d+1,2)/k``."""
    _check_vertex(O, v)
    d, k = O.d, O.graph.degree(v)
    hyp = {"degree": k}
    ok = False
    if k >= d:
        nbrs = O.graph.neighbors(v)
        fill = [(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:] if not O.graph.has_edge(a, b)]
        hyp["rigid"] = O.is_rigid()
        hyp["filled_rigid"] = O.rank_with(extra=fill) == O.rigid_rank()
        ok = hyp["filled_rigid"] and not hyp["rigid"]
    return _judge("geq_d", O, v, hyp, ok, lambda: d + Fraction(1, 2) - Fraction(comb(d + 1, 2), k))
