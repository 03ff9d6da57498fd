"""Exhaustive and statistical checks of rigidity statements on small graphs.

Every check returns a :class:`VerificationReport`.  Graph families come from
:mod:`rigikit.enumeration`; every graph in a run is tested against oracles
sharing one seed, so a report is reproducible from its parameters.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np

from . import enumeration as en
from .canon import canonical_graph6, canonical_key
from .constructions import (
    EXCEPTIONAL_R3,
    catalog,
    cycle,
    cycle_attach,
    gnp,
    one_extension,
    spider_split,
    vertex_split,
    zero_extension,
)
from .graph import Graph, delta, eta, is_k_connected
from .matroid import RigidityOracle
from .rank_contribution import (
    FAIL,
    NOT_APPLICABLE,
    check_rc_geq_d,
    check_rc_Kfree,
    check_rc_tbound,
    rc_all,
    rc_star_exact,
)

VERIFIED = "VERIFIED"
EXPLORATORY = "EXPLORATORY"


@dataclass
class VerificationReport:
    claim: str
    params: dict
    examined: int = 0
    counts: dict = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    exceptions: list[str] = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)
    seed: object = 0
    millis: int = 0
    status: str = VERIFIED
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """No violations and no required witness missing."""
        return not self.violations and not self.missing

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "params": self.params,
            "counts": {"examined": self.examined, **self.counts},
            "violations": self.violations,
            "exceptions": self.exceptions,
            "witnesses": self.witnesses,
            "missing": self.missing,
            "seed": self.seed,
            "status": self.status,
            "passed": self.passed,
        }
        if self.data:
            out["data"] = self.data
        if timings:
            out["millis"] = self.millis
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.as_dict(timings), sort_keys=True, default=_jsonable)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _finish(report: VerificationReport, started: float) -> VerificationReport:
    report.violations = sorted(set(report.violations))
    report.witnesses = sorted(set(report.witnesses))
    report.millis = int((time.perf_counter() - started) * 1000)
    return report


# -- worker pool -------------------------------------------------------------


def _pmap(fn: Callable, items: list, jobs: int = 1, progress=None) -> list:
    """``[fn(x) for x in items]``, optionally on ``jobs`` processes; order preserved."""
    if jobs <= 1 or len(items) < 64:
        out = []
        for i, x in enumerate(items):
            out.append(fn(x))
            if progress and (i + 1) % 500 == 0:
                progress(f"{i + 1}/{len(items)}")
        return out
    chunk = max(16, len(items) // (8 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


class _Task:
    """Picklable ``rows -> result`` wrapper around a module-level function."""

    def __init__(self, fn, n, *args):
        self.fn, self.n, self.args = fn, n, args

    def __call__(self, rows):
        return self.fn(Graph._trusted(self.n, rows), *self.args)


def _rows(graphs):
    return [G.rows for G in graphs]


# -- named graphs ----------------------------------------------------------------

_NAMED_KEYS = None


def _named_key(G: Graph) -> str | None:
    global _NAMED_KEYS
    if _NAMED_KEYS is None:
        names = list(EXCEPTIONAL_R3) + ["K4_minus_e"]
        _NAMED_KEYS = {canonical_key(catalog(nm).graph): nm for nm in names}
        _NAMED_KEYS[canonical_key(cycle(4))] = "C4"
    return _NAMED_KEYS.get(canonical_key(G))


# -- f and g ---------------------------------------------------------------


def f_status(n: int, d: int) -> str:
    """EXPLORATORY where the exact value of f is not settled by a known theorem."""
    return EXPLORATORY if d >= 4 and d < n < 29 * d else VERIFIED


def g_status(n: int, d: int) -> str:
    return EXPLORATORY if d >= 4 and d + 1 < n < d * (d + 2) else VERIFIED


def _is_rigid_rows(G: Graph, d: int, seed) -> bool:
    return RigidityOracle(G, d, seed).is_rigid()


def _threshold(n, d, kind, seed, jobs):
    invariant = delta if kind == en.MIN_DEGREE else eta
    top = n - 2 if kind == en.MIN_DEGREE else 2 * n - 4
    for low in range(top, -1, -1):
        family = [G for G in en.enumerate_graphs(en.EnumerationFilter(n, kind, low)) if not G.is_complete()]
        rigid = _pmap(_Task(_is_rigid_rows, n, d, seed), _rows(family), jobs)
        values = [invariant(G) for G, r in zip(family, rigid) if not r]
        if values:
            return 1 + max(values)
    return 0


def compute_f(n: int, d: int, seed=0, jobs: int = 1) -> int:
    """``1 + max delta`` over non-rigid ``n``-vertex graphs (0 when every graph is rigid)."""
    _check_nd(n, d)
    return _threshold(n, d, en.MIN_DEGREE, seed, jobs)


def compute_g(n: int, d: int, seed=0, jobs: int = 1) -> int:
    """``1 + max eta`` over non-rigid non-complete ``n``-vertex graphs."""
    _check_nd(n, d)
    return _threshold(n, d, en.ETA, seed, jobs)


def _check_nd(n, d):
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if not 1 <= n <= en.MAX_N_FILTERED:
        raise ValueError(f"n={n} outside the enumeration range 1..{en.MAX_N_FILTERED}")


def f_formula(n: int, d: int) -> int:
    """Known closed forms of f for d = 2, 3."""
    if d == 2 and n >= 3:
        return max(math.ceil(n / 2), math.ceil(4 - 6 / n))
    if d == 3 and n >= 4:
        return max(math.ceil((n + 1) / 2), math.ceil(6 - 12 / n))
    raise ValueError(f"no closed form for f({n},{d})")


def g_formula(n: int, d: int) -> int:
    if d == 2 and n >= 3:
        return n + 1 if n == 4 else n
    if d == 3 and n >= 4:
        return n + 2 if n in (5, 6, 7) else n + 1
    raise ValueError(f"no closed form for g({n},{d})")


def threshold_report(which: str, n: int, d: int, seed=0, jobs: int = 1) -> VerificationReport:
    started = time.perf_counter()
    fn, status = (compute_f, f_status) if which == "f" else (compute_g, g_status)
    value = fn(n, d, seed, jobs)
    rep = VerificationReport(f"compute-{which}", {"n": n, "d": d}, seed=seed, status=status(n, d))
    rep.data = {"value": value}
    return _finish(rep, started)


# -- the checks ---------------------------------------------------------------


def _eta_family(n, k):
    return list(en.enumerate_graphs(en.EnumerationFilter(n, en.ETA, k)))


def _rigid_or_named(G: Graph, d: int, seed):
    if RigidityOracle(G, d, seed).is_rigid():
        return None
    return _named_key(G) or ""


def _exception_check(claim, n, d, family, allowed, seed, jobs, progress, params):
    started = time.perf_counter()
    rep = VerificationReport(claim, params, seed=seed)
    results = _pmap(_Task(_rigid_or_named, n, d, seed), _rows(family), jobs, progress)
    rep.examined = len(family)
    found = set()
    for G, res in zip(family, results):
        if res is None:
            continue
        if res in allowed:
            found.add(res)
        else:
            rep.violations.append(canonical_graph6(G))
    rep.exceptions = sorted(found)
    rep.counts["non_rigid"] = sum(r is not None for r in results)
    return _finish(rep, started)


def verify_theorem_R3(n: int, seed=0, jobs: int = 1, progress=None) -> VerificationReport:
    """Every graph with ``eta >= n+1`` is 3-rigid or one of W5, B6, C7_1, C7_2."""
    if not 5 <= n <= en.MAX_N_FILTERED:
        raise ValueError(f"n={n} outside 5..{en.MAX_N_FILTERED}")
    family = _eta_family(n, n + 1)
    return _exception_check("R3", n, 3, family, set(EXCEPTIONAL_R3), seed, jobs, progress, {"n": n, "d": 3, "eta_min": n + 1})


def verify_theorem_R2(n: int, seed=0, jobs: int = 1, progress=None) -> VerificationReport:
    """Every graph with ``eta >= n`` is 2-rigid unless it is C4."""
    if not 3 <= n <= en.MAX_N_FILTERED:
        raise ValueError(f"n={n} outside 3..{en.MAX_N_FILTERED}")
    family = _eta_family(n, n)
    return _exception_check("R2", n, 2, family, {"C4"}, seed, jobs, progress, {"n": n, "d": 2, "eta_min": n})


DEGREE_SUM_KINDS = ("g-5d", "g-d-1", "f-bound", "f-tight", "g-tight")


def _hypothesis_family(n, d, kind):
    """(filter kind, threshold, tight-witness invariant value or None)."""
    if kind == "g-5d":
        return en.ETA, n + 3 * d - 3, None
    if kind == "g-d-1":
        return en.ETA, n + d - 2, n + d - 3
    if kind == "f-bound":
        return en.MIN_DEGREE, math.ceil(Fraction(n, 2) + d - 1), None
    if kind == "f-tight":
        f = f_formula(n, d)
        return en.MIN_DEGREE, f, f - 1
    if kind == "g-tight":
        g = g_formula(n, d)
        return en.ETA, g, g - 1
    raise ValueError(f"unknown bound kind {kind!r}; choose from {', '.join(DEGREE_SUM_KINDS)}")


def verify_degree_sum(n: int, d: int, bound_kind: str, seed=0, jobs: int = 1, progress=None) -> VerificationReport:
    """Graphs meeting a degree (or degree-sum) threshold are ``d``-rigid.

    The tight kinds also require a non-rigid graph sitting exactly one below
    the threshold.
    """
    _check_nd(n, d)
    started = time.perf_counter()
    flt_kind, k, tight = _hypothesis_family(n, d, bound_kind)
    params = {"n": n, "d": d, "bound_kind": bound_kind, "threshold": k}
    rep = VerificationReport("degree-sum", params, seed=seed)
    if bound_kind == "g-d-1" and n < d * (d + 2):
        rep.status = NOT_APPLICABLE
        return _finish(rep, started)
    low = k if tight is None else max(tight, 0)
    family = list(en.enumerate_graphs(en.EnumerationFilter(n, flt_kind, max(low, 0))))
    invariant = delta if flt_kind == en.MIN_DEGREE else eta
    rigid = _pmap(_Task(_is_rigid_rows, n, d, seed), _rows(family), jobs, progress)
    witness_found = False
    for G, r in zip(family, rigid):
        value = invariant(G)
        if value >= k:
            rep.examined += 1
            if not r:
                rep.violations.append(canonical_graph6(G))
        elif tight is not None and value == tight and not r:
            witness_found = True
            if len(rep.witnesses) < 5:
                rep.witnesses.append(canonical_graph6(G))
    if tight is not None:
        rep.counts["tight_witness"] = witness_found
        if not witness_found and tight >= 0:
            rep.missing.append(f"non-rigid graph with invariant {tight}")
    return _finish(rep, started)


def verify_ecount(n: int, d: int) -> VerificationReport:
    """``4|E| >= n(n+d-2)`` whenever ``eta >= n+d-2`` (requires ``d <= n``)."""
    if not 1 <= d <= n:
        raise ValueError("the edge bound needs 1 <= d <= n")
    started = time.perf_counter()
    rep = VerificationReport("ecount", {"n": n, "d": d})
    for G in _eta_family(n, n + d - 2):
        rep.examined += 1
        if 4 * G.num_edges < n * (n + d - 2):
            rep.violations.append(canonical_graph6(G))
    return _finish(rep, started)


# -- global rigidity in the plane -----------------------------------------------


def redundantly_rigid(O: RigidityOracle) -> bool:
    """Rigid after deleting any one edge."""
    return O.is_rigid() and not O.bridges()


def globally_rigid_2d(G: Graph, seed=0) -> bool:
    if G.n <= 3:
        return G.is_complete()
    return is_k_connected(G, 3) and redundantly_rigid(RigidityOracle(G, 2, seed))


def verify_global_2d(n: int, seed=0, jobs: int = 1, progress=None) -> VerificationReport:
    """Every graph with ``eta >= n+1`` is globally rigid in the plane."""
    if not 5 <= n <= en.MAX_N_FILTERED:
        raise ValueError(f"n={n} outside 5..{en.MAX_N_FILTERED}")
    started = time.perf_counter()
    family = _eta_family(n, n + 1)
    rep = VerificationReport("global2d", {"n": n, "d": 2, "eta_min": n + 1}, seed=seed)
    ok = _pmap(_Task(globally_rigid_2d, n, seed), _rows(family), jobs, progress)
    rep.examined = len(family)
    rep.violations = [canonical_graph6(G) for G, good in zip(family, ok) if not good]
    return _finish(rep, started)


# -- lemma checkers over enumerated families ---------------------------------------


def _all_linked_in_neighbourhood(O: RigidityOracle, w: int) -> bool:
    nbrs = O.graph.neighbors(w)
    return all(
        O.graph.has_edge(a, b) or O.is_linked(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:]
    )


def _linked_neighbourhood_one(G: Graph, d: int, seed):
    O = RigidityOracle(G, d, seed)
    if not any(_all_linked_in_neighbourhood(O, w) for w in range(G.n)):
        return None
    return O.is_rigid()


def verify_linked_neighbourhood(n: int, d: int, seed=0, jobs: int = 1, progress=None) -> VerificationReport:
    """``eta >= n+d-2`` plus a vertex whose neighbours are pairwise linked forces rigidity."""
    _check_nd(n, d)
    started = time.perf_counter()
    family = _eta_family(n, n + d - 2)
    rep = VerificationReport("linked-neighbourhood", {"n": n, "d": d}, seed=seed)
    res = _pmap(_Task(_linked_neighbourhood_one, n, d, seed), _rows(family), jobs, progress)
    rep.counts["hypothesis"] = sum(r is not None for r in res)
    rep.examined = len(family)
    rep.violations = [canonical_graph6(G) for G, r in zip(family, res) if r is False]
    return _finish(rep, started)


def verify_min_degree_d(n: int, d: int, seed=0) -> VerificationReport:
    """``n >= 2d+1``, ``delta = d`` and ``eta >= n+d-2`` force rigidity."""
    _check_nd(n, d)
    started = time.perf_counter()
    rep = VerificationReport("min-degree-d", {"n": n, "d": d}, seed=seed)
    if n < 2 * d + 1:
        rep.status = NOT_APPLICABLE
        return _finish(rep, started)
    for G in _eta_family(n, n + d - 2):
        if delta(G) != d:
            continue
        rep.examined += 1
        if not RigidityOracle(G, d, seed).is_rigid():
            rep.violations.append(canonical_graph6(G))
    return _finish(rep, started)


def verify_min_degree_3(n: int, seed=0) -> VerificationReport:
    """At d = 3 with ``delta = 3`` and ``eta >= n+1``: rigid, W5 or B6."""
    if not 5 <= n <= en.MAX_N_FILTERED:
        raise ValueError(f"n={n} outside 5..{en.MAX_N_FILTERED}")
    family = [G for G in _eta_family(n, n + 1) if delta(G) == 3]
    return _exception_check("min-degree-3", n, 3, family, {"W5", "B6"}, seed, 1, None, {"n": n, "d": 3})


def _is_circuit_graph(G: Graph, O: RigidityOracle) -> bool:
    m = G.num_edges
    if m == 0 or any(G.degree(v) == 0 for v in range(G.n)):
        return False
    return O.rank() == m - 1 and not O.bridges()


def verify_small_circuits(n: int, seed=0) -> VerificationReport:
    """3-dimensional circuits spanning ``n <= 7`` vertices are rigid; at ``n`` in {6, 7}
    every graph with ``delta >= 4`` is rigid or one of C7_1, C7_2."""
    if not 1 <= n <= 7:
        raise ValueError("circuit check runs for n <= 7")
    started = time.perf_counter()
    rep = VerificationReport("small-circuits", {"n": n, "d": 3}, seed=seed)
    circuits = 0
    for G in en.all_graphs(n):
        O = RigidityOracle(G, 3, seed)
        if _is_circuit_graph(G, O):
            circuits += 1
            if not O.is_rigid():
                rep.violations.append(canonical_graph6(G))
    rep.counts["circuits"] = circuits
    rep.examined = circuits
    if n in (6, 7):
        found = set()
        dense = list(en.enumerate_graphs(en.EnumerationFilter(n, en.MIN_DEGREE, 4)))
        for G in dense:
            rep.examined += 1
            if RigidityOracle(G, 3, seed).is_rigid():
                continue
            name = _named_key(G)
            if name in ("C7_1", "C7_2"):
                found.add(name)
            else:
                rep.violations.append(canonical_graph6(G))
        rep.exceptions = sorted(found)
        rep.counts["min_degree_4"] = len(dense)
    return _finish(rep, started)


# -- coning and rup inequalities --------------------------------------------------


def _coning_one(G: Graph, d: int, seed):
    """List of failed coning properties for one graph."""
    O = RigidityOracle(G, d, seed)
    C = RigidityOracle(G.cone(), d + 1, seed)
    bad = []
    if O.is_rigid() != C.is_rigid():
        bad.append("rigid")
    if O.is_independent() != C.is_independent():
        bad.append("independent")
    if O.dof() != C.dof():
        bad.append("dof")
    for u, v in G.non_edges():
        if O.is_linked(u, v) != C.is_linked(u, v):
            bad.append("linked")
            break
    if G.n >= d and C.rup() != O.rup() + 1:
        bad.append("rup")
    return bad


def verify_coning(n: int, d: int, seed=0) -> VerificationReport:
    started = time.perf_counter()
    rep = VerificationReport("coning", {"n": n, "d": d}, seed=seed)
    tally: dict[str, int] = {}
    for G in en.all_graphs(n):
        rep.examined += 1
        bad = _coning_one(G, d, seed)
        for b in bad:
            tally[b] = tally.get(b, 0) + 1
        if bad:
            rep.violations.append(canonical_graph6(G))
    rep.counts["failures_by_property"] = dict(sorted(tally.items()))
    return _finish(rep, started)


def s_terms(G: Graph, u: int, v: int, d: int, d2: int) -> tuple[int, int, int]:
    """The three lower-bound terms for ``rup_{d2}(G - v)`` given vertices ``u, v``."""
    Nv, Nu = G.neighbor_mask(v), G.neighbor_mask(u)
    others = ((1 << G.n) - 1) & ~Nv & ~(1 << v)
    s1 = min(others.bit_count(), d2 - d + 1)
    s2 = min((Nv & ~Nu & ~(1 << u)).bit_count(), d2 - d)
    s3 = min((Nu & Nv).bit_count(), d2)
    return s1, s2, s3


def verify_rup_bounds(n: int, d: int, seed=0) -> VerificationReport:
    """Cone-gap inequalities on all ``n``-vertex graphs.

    * ``rup_d(G) * (delta - d + 2) <= d(n - d + 1)`` for ``n >= d``
    * on ``R_d``-closed graphs, ``rup_{d'}(G - v) >= s1 + s2 + s3`` for ``d <= d' <= d+2``
    """
    started = time.perf_counter()
    rep = VerificationReport("rup-bounds", {"n": n, "d": d}, seed=seed)
    closed = easy = pairs = 0
    for G in en.all_graphs(n):
        rep.examined += 1
        O = RigidityOracle(G, d, seed)
        bad = False
        if n >= d:
            easy += 1
            if O.rup() * (delta(G) - d + 2) > d * (n - d + 1):
                bad = True
        if n >= 2 and O.is_closed():
            closed += 1
            for d2 in (d, d + 1, d + 2):
                for v in range(n):
                    gap = RigidityOracle(G.delete_vertex(v), d2, seed).rup()
                    for u in range(n):
                        if u == v:
                            continue
                        pairs += 1
                        if gap < sum(s_terms(G, u, v, d, d2)):
                            bad = True
        if bad:
            rep.violations.append(canonical_graph6(G))
    rep.counts.update({"easybound_checked": easy, "closed": closed, "s_checks": pairs})
    return _finish(rep, started)


# -- rank contributions over a corpus ----------------------------------------------


def verify_rc(n: int, d: int, seed=0) -> VerificationReport:
    """Exact identity ``sum_v rc = rank``, ``rc* <= rc`` and the three rc* lower bounds."""
    started = time.perf_counter()
    rep = VerificationReport("rc", {"n": n, "d": d}, seed=seed)
    tally = {"sum": 0, "rcstar": 0, "tbound": 0, "Kfree": 0, "geq_d": 0}
    applicable = {"tbound": 0, "Kfree": 0, "geq_d": 0}
    for G in en.all_graphs(n):
        rep.examined += 1
        O = RigidityOracle(G, d, seed)
        rcs = rc_all(O)
        bad = []
        if sum(rcs, Fraction(0)) != O.rank():
            bad.append("sum")
        for v in range(n):
            if rc_star_exact(O, v) > rcs[v]:
                bad.append("rcstar")
            for chk in (check_rc_tbound, check_rc_Kfree, check_rc_geq_d):
                res = chk(O, v)
                if res.status != NOT_APPLICABLE:
                    applicable[res.lemma] += 1
                if res.status == FAIL:
                    bad.append(res.lemma)
        for b in set(bad):
            tally[b] += 1
        if bad:
            rep.violations.append(canonical_graph6(G))
    rep.counts.update({"failures": tally, "applicable": applicable})
    return _finish(rep, started)


# -- rigidity-preserving constructions -----------------------------------------------


def _random_rigid(rng, d: int, n_range=(None, 11)) -> Graph:
    lo = n_range[0] or d + 2
    while True:
        n = int(rng.integers(lo, n_range[1] + 1))
        G = gnp(n, float(rng.uniform(0.55, 0.9)), int(rng.integers(2**32)))
        if RigidityOracle(G, d, int(rng.integers(2**32))).is_rigid():
            return G


def _split_args(rng, G: Graph, d: int, shared_min: int):
    candidates = [z for z in range(G.n) if G.degree(z) >= shared_min]
    if not candidates:
        return None
    z = int(rng.choice(candidates))
    N = G.neighbors(z)
    size = int(rng.integers(shared_min, len(N) + 1))
    shared = set(rng.choice(N, size=size, replace=False).tolist()) if size else set()
    rest = [x for x in N if x not in shared]
    side = rng.integers(0, 2, size=len(rest))
    Nu = shared | {x for x, s in zip(rest, side) if s == 0}
    Nv = shared | {x for x, s in zip(rest, side) if s == 1}
    return z, Nu, Nv


def random_operation(op: str, rng, d: int):
    """Draw a rigid input and apply one valid instance of ``op``; returns (input, output)."""
    while True:
        G = _random_rigid(rng, d)
        if op == "zero":
            S = rng.choice(G.n, size=d, replace=False).tolist()
            return G, zero_extension(G, d, S)
        if op == "one":
            edges = G.edges()
            if G.n < d + 1 or not edges:
                continue
            u, w = edges[int(rng.integers(len(edges)))]
            pool = [x for x in range(G.n) if x not in (u, w)]
            S = [u, w] + rng.choice(pool, size=d - 1, replace=False).tolist()
            return G, one_extension(G, d, (u, w), S)
        if op in ("split", "spider"):
            args = _split_args(rng, G, d, d - 1 if op == "split" else d)
            if args is None:
                continue
            fn = vertex_split if op == "split" else spider_split
            return G, fn(G, d, *args)
        if op == "cycle":
            k = int(rng.integers(3, 6))
            while True:
                pairs = [tuple(rng.choice(G.n, size=2, replace=False).tolist()) for _ in range(k)]
                if len({x for p in pairs for x in p}) >= 3:
                    return G, cycle_attach(G, pairs)
        raise ValueError(f"unknown operation {op!r}")


def verify_preservation(op: str, d: int, instances: int, seed=0) -> VerificationReport:
    started = time.perf_counter()
    rep = VerificationReport("preservation", {"op": op, "d": d, "instances": instances}, seed=seed)
    rng = np.random.default_rng([seed, d, sum(map(ord, op))])
    for i in range(instances):
        _, H = random_operation(op, rng, d)
        rep.examined += 1
        if not RigidityOracle(H, d, (seed, i)).is_rigid():
            rep.violations.append(canonical_graph6(H) if H.n <= 62 else f"instance {i}")
    return _finish(rep, started)


# -- random graphs ---------------------------------------------------------------


def random_rigidity_experiment(n: int, p: float, d: int, samples: int, seed=0, progress=None) -> VerificationReport:
    """Fraction of ``G(n, p)`` samples that are ``d``-rigid, with its binomial standard error."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    started = time.perf_counter()
    rep = VerificationReport("random-experiment", {"n": n, "p": p, "d": d, "samples": samples}, seed=seed)
    rigid = 0
    for i in range(samples):
        G = gnp(n, p, [seed, i])
        if RigidityOracle(G, d, [seed, i, 1]).is_rigid():
            rigid += 1
        if progress and (i + 1) % 10 == 0:
            progress(f"{i + 1}/{samples}")
    frac = rigid / samples
    rep.examined = samples
    rep.counts["rigid"] = rigid
    rep.data = {"fraction": frac, "stderr": math.sqrt(frac * (1 - frac) / samples)}
    return _finish(rep, started)


def random_threshold_dimension(n: int) -> int:
    """``floor(7n/32 - sqrt(15 n ln n)/16)``."""
    return math.floor(7 * n / 32 - math.sqrt(15 * n * math.log(n)) / 16)


def standard_pairing(n: int) -> list[tuple[int, int]]:
    return [(i, i + n // 2) for i in range(n // 2)]


@dataclass
class ChainReport:
    n: int
    d: int
    common: list[int]
    expected: list[float]
    half_min_degree: int
    half_rigid: bool
    graph_rigid: bool

    @property
    def all_common_ok(self) -> bool:
        return min(self.common, default=self.d) >= self.d

    @property
    def half_degree_hypothesis(self) -> bool:
        """Minimum-degree bound that makes the half graph rigid: ``delta >= n/4 + d - 1``."""
        return 4 * self.half_min_degree >= self.n + 4 * (self.d - 1)

    @property
    def half_degree_margin(self) -> bool:
        """Stricter ``delta > n/4 + d`` used when sampling."""
        return 4 * self.half_min_degree > self.n + 4 * self.d

    @property
    def certificate(self) -> bool:
        return self.all_common_ok and self.half_degree_hypothesis

    @property
    def consistent(self) -> bool:
        return self.graph_rigid or not self.certificate

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "common": self.common,
            "expected": [round(x, 6) for x in self.expected],
            "below_d": [i for i, x in enumerate(self.common) if x < self.d],
            "half_min_degree": self.half_min_degree,
            "half_degree_hypothesis": self.half_degree_hypothesis,
            "half_degree_margin": self.half_degree_margin,
            "half_rigid": self.half_rigid,
            "graph_rigid": self.graph_rigid,
            "certificate": self.certificate,
            "consistent": self.consistent,
        }


def verify_contraction_chain(G: Graph, pairing: list[tuple[int, int]], d: int, seed=0) -> ChainReport:
    """Contract the pairs in order and record common-neighbourhood sizes.

    ``common[i]`` is ``|N(u) & N(v)|`` for pair ``i`` just before it is
    contracted.  When every entry is at least ``d`` each contraction can be
    undone by a spider split plus edge additions, so rigidity of the half graph
    carries back to ``G``.
    """
    n = G.n
    if n % 2 or len(pairing) != n // 2:
        raise ValueError("pairing must consist of n/2 pairs on an even number of vertices")
    flat = [x for p in pairing for x in p]
    if sorted(flat) != list(range(n)):
        raise ValueError("pairing must cover every vertex exactly once")
    nbr = {v: set(G.neighbors(v)) for v in range(n)}
    common, expected = [], []
    for i, (u, v) in enumerate(pairing):
        common.append(len(nbr[u] & nbr[v]))
        expected.append(9 * i / 16 + (n - 2 * i - 2) / 4)
        merged = (nbr[u] | nbr.pop(v)) - {u, v}
        nbr[u] = merged
        for x in nbr:
            if v in nbr[x]:
                nbr[x].discard(v)
                nbr[x].add(u)
        for x in merged:
            nbr[x].add(u)
    heads = [u for u, _ in pairing]
    index = {u: i for i, u in enumerate(heads)}
    half = Graph.from_edges(len(heads), [(index[a], index[b]) for a in heads for b in nbr[a] if index[a] < index[b]])
    return ChainReport(
        n=n,
        d=d,
        common=common,
        expected=expected,
        half_min_degree=delta(half),
        half_rigid=RigidityOracle(half, d, seed).is_rigid(),
        graph_rigid=RigidityOracle(G, d, seed).is_rigid(),
    )


def chain_experiment(n: int, d: int, samples: int, seed=0) -> VerificationReport:
    """Run the contraction-chain certificate on ``samples`` draws of ``G(n, 1/2)``."""
    started = time.perf_counter()
    rep = VerificationReport("chain-check", {"n": n, "d": d, "samples": samples, "p": 0.5}, seed=seed)
    runs = []
    for i in range(samples):
        G = gnp(n, 0.5, [seed, i])
        r = verify_contraction_chain(G, standard_pairing(n), d, [seed, i, 1])
        runs.append(r)
        if not r.consistent:
            rep.violations.append(f"sample {i}")
    rep.examined = samples
    rep.counts.update(
        {
            "certificate": sum(r.certificate for r in runs),
            "all_common_ok": sum(r.all_common_ok for r in runs),
            "half_degree_hypothesis": sum(r.half_degree_hypothesis for r in runs),
            "half_degree_margin": sum(r.half_degree_margin for r in runs),
            "graph_rigid": sum(r.graph_rigid for r in runs),
        }
    )
    rep.data = {"runs": [r.as_dict() for r in runs]}
    return _finish(rep, started)
