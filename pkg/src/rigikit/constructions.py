"""Rigidity-preserving graph operations and a catalogue of named graphs.

New vertices always take the next free indices.  The two splitting
operations keep the split vertex's index for ``u`` and append ``v`` as vertex
``n``, so ``contract_pair(split, z, n)`` returns the original graph exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

import numpy as np

from .graph import Graph, delta, eta


def _vertex_set(G: Graph, S: Iterable[int], what: str) -> list[int]:
    S = list(S)
    if len(set(S)) != len(S):
        raise ValueError(f"{what} contains repeated vertices")
    for x in S:
        if not 0 <= x < G.n:
            raise ValueError(f"{what}: vertex {x} out of range")
    return sorted(S)


def zero_extension(G: Graph, d: int, S: Iterable[int]) -> Graph:
    """Add vertex ``n`` joined to the ``d`` vertices of ``S``."""
    S = _vertex_set(G, S, "S")
    if len(S) != d:
        raise ValueError(f"0-extension in dimension {d} needs |S| = {d}, got {len(S)}")
    return G.add_vertex(S)


def one_extension(G: Graph, d: int, uw: tuple[int, int], S: Iterable[int]) -> Graph:
    """Delete edge ``uw`` and add vertex ``n`` joined to ``S`` (``|S| = d+1``, ``u, w`` in ``S``)."""
    S = _vertex_set(G, S, "S")
    u, w = uw
    if len(S) != d + 1:
        raise ValueError(f"1-extension in dimension {d} needs |S| = {d + 1}, got {len(S)}")
    if not (0 <= u < G.n and 0 <= w < G.n) or not G.has_edge(u, w):
        raise ValueError(f"({u}, {w}) is not an edge")
    if u not in S or w not in S:
        raise ValueError("both endpoints of the removed edge must lie in S")
    return G.remove_edges([(u, w)]).add_vertex(S)


def _split(G: Graph, z: int, Nu, Nv, need: int, adjacent: bool, name: str) -> Graph:
    if not 0 <= z < G.n:
        raise ValueError(f"vertex {z} out of range")
    Nu, Nv = set(Nu), set(Nv)
    Nz = set(G.neighbors(z))
    if not (Nu <= Nz and Nv <= Nz) or Nu | Nv != Nz:
        raise ValueError(f"{name}: Nu and Nv must cover N(z) = {sorted(Nz)} exactly")
    if len(Nu & Nv) < need:
        raise ValueError(f"{name}: |Nu & Nv| = {len(Nu & Nv)} but at least {need} shared neighbours are required")
    H = G.remove_edges([(z, x) for x in Nz - Nu])
    H = H.add_vertex(sorted(Nv))
    if adjacent:
        H = H.add_edges([(z, H.n - 1)])
    return H


def vertex_split(G: Graph, d: int, z: int, Nu: Iterable[int], Nv: Iterable[int]) -> Graph:
    """Replace ``z`` by adjacent vertices ``u = z`` and ``v = n`` with ``|Nu & Nv| >= d-1``."""
    return _split(G, z, Nu, Nv, d - 1, True, "vertex split")


def spider_split(G: Graph, d: int, z: int, Nu: Iterable[int], Nv: Iterable[int]) -> Graph:
    """Replace ``z`` by non-adjacent ``u = z`` and ``v = n`` with ``|Nu & Nv| >= d``."""
    return _split(G, z, Nu, Nv, d, False, "spider split")


def cycle_attach(H: Graph, pairs: list[tuple[int, int]]) -> Graph:
    """Attach a k-cycle ``u_1..u_k`` (vertices ``n..n+k-1``) with ``u_i`` joined to both vertices of pair i.

    With H rigid in 3 dimensions the result is rigid in 3 dimensions.
    """
    k = len(pairs)
    if k < 3:
        raise ValueError(f"need at least 3 pairs, got {k}")
    touched = set()
    for a, b in pairs:
        if a == b:
            raise ValueError(f"pair ({a}, {b}) repeats a vertex")
        for x in (a, b):
            if not 0 <= x < H.n:
                raise ValueError(f"vertex {x} out of range")
        touched |= {a, b}
    if len(touched) < 3:
        raise ValueError("the pairs must cover at least 3 distinct vertices")
    n = H.n
    edges = H.edges()
    for i, (a, b) in enumerate(pairs):
        edges += [(n + i, n + (i + 1) % k), (n + i, a), (n + i, b)]
    return Graph.from_edges(n + k, edges)


# -- catalogue ---------------------------------------------------------------


@dataclass(frozen=True)
class Expected:
    n: int
    num_edges: int | None = None
    delta: int | None = None
    eta: float | int | None = None
    d: int | None = None
    is_d_rigid: bool | None = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: Graph
    expected: Expected
    params: dict = field(default_factory=dict)

    def mismatches(self, seed=0) -> list[str]:
        """Fields of ``expected`` that disagree with a recomputation from the graph."""
        from .matroid import is_rigid

        G, exp = self.graph, self.expected
        actual = {"n": G.n, "num_edges": G.num_edges, "delta": delta(G), "eta": eta(G)}
        if exp.d is not None:
            actual["is_d_rigid"] = is_rigid(G, exp.d, seed)
        out = []
        for key, value in actual.items():
            want = getattr(exp, key)
            if want is not None and want != value:
                out.append(f"{key}: expected {want}, got {value}")
        return out


def _remove_cycle(n: int, cycle: list[int]) -> list[tuple[int, int]]:
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def wheel5() -> Graph:
    # hub 0, rim 1-2-3-4
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)])


def b6() -> Graph:
    return Graph.complete(6).remove_edges([(0, 1), (1, 2), (3, 4), (4, 5)])


def c7_1() -> Graph:
    return Graph.complete(7).remove_edges(_remove_cycle(7, [0, 1, 2]) + _remove_cycle(7, [3, 4, 5, 6]))


def c7_2() -> Graph:
    return Graph.complete(7).remove_edges(_remove_cycle(7, list(range(7))))


def k4_minus_e() -> Graph:
    return Graph.complete(4).remove_edges([(2, 3)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [])


def glued_cliques(a: int, b: int, s: int) -> Graph:
    """``K_a`` on ``0..a-1`` and ``K_b`` sharing the last ``s`` vertices of the first clique."""
    if s < 0 or a < s + 1 or b < s + 1:
        raise ValueError(f"glued_cliques needs a, b >= s+1 >= 1, got a={a}, b={b}, s={s}")
    A = list(range(a))
    B = list(range(a - s, a)) + list(range(a, a + b - s))
    edges = {(x, y) for X in (A, B) for i, x in enumerate(X) for y in X[i + 1:]}
    return Graph.from_edges(a + b - s, sorted(edges))


def f_extremal_params(n: int, d: int) -> tuple[int, int, int]:
    a = math.ceil((n + d - 2) / 2)
    return a, n - a + d - 1, d - 1


def gnp(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi sample; edge ``uv`` (lexicographic order) kept with probability ``p``."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.shape[0]) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


_FIXED = {
    "W5": (wheel5, Expected(5, 8, 3, 6, 3, False)),
    "B6": (b6, Expected(6, 11, 3, 7, 3, False)),
    "C7_1": (c7_1, Expected(7, 14, 4, 8, 3, False)),
    "C7_2": (c7_2, Expected(7, 14, 4, 8, 3, False)),
    "K4_minus_e": (k4_minus_e, Expected(4, 5, 2, 4, 3, False)),
}

EXCEPTIONAL_R3 = ("W5", "B6", "C7_1", "C7_2")

_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


def _glued_entry(name, a, b, s, d=None):
    G = glued_cliques(a, b, s)
    exp = Expected(
        n=a + b - s,
        num_edges=comb(a, 2) + comb(b, 2) - comb(s, 2),
        delta=min(a, b) - 1,
        eta=a + b - 2,
        d=d,
        is_d_rigid=None if d is None else s >= d,
    )
    return CatalogEntry(name, G, exp, {"a": a, "b": b, "s": s} | ({} if d is None else {"d": d}))


def catalog(name: str, *args, **kwargs) -> CatalogEntry:
    """Look up a named graph.

    Fixed names: ``W5``, ``B6``, ``C7_1``, ``C7_2``, ``K4_minus_e``.  Parametric
    names take arguments either as call arguments or inline, e.g.
    ``catalog("glued_cliques(4,5,2)")``: ``glued_cliques(a,b,s)``,
    ``f_extremal(n,d)``, ``gnp(n,p,seed)``, ``K(n)``, ``C(n)``.
    """
    m = _CALL.match(name)
    if not m:
        raise ValueError(f"unknown catalogue name {name!r}")
    base, inline = m.group(1), m.group(2)
    if inline:
        args = tuple(_literal(x) for x in inline.split(",")) + args
    if base in _FIXED:
        build, exp = _FIXED[base]
        return CatalogEntry(base, build(), exp)
    if base == "glued_cliques":
        return _glued_entry(base, *args, **kwargs)
    if base == "f_extremal":
        n, d = (list(args) + [kwargs.get("n"), kwargs.get("d")])[:2] if args else (kwargs["n"], kwargs["d"])
        if not 1 <= d < n:
            raise ValueError(f"f_extremal needs 1 <= d < n, got n={n}, d={d}")
        a, b, s = f_extremal_params(n, d)
        entry = _glued_entry("f_extremal", a, b, s, d)
        return CatalogEntry("f_extremal", entry.graph, entry.expected, {"n": n, "d": d})
    if base == "gnp":
        n, p, seed = args if args else (kwargs["n"], kwargs["p"], kwargs["seed"])
        return CatalogEntry("gnp", gnp(n, p, seed), Expected(n), {"n": n, "p": p, "seed": seed})
    if base == "K":
        (n,) = args
        return CatalogEntry(f"K{n}", Graph.complete(n), Expected(n, comb(n, 2), max(n - 1, 0), math.inf))
    if base == "C":
        (n,) = args
        if n < 3:
            raise ValueError("cycles need at least 3 vertices")
        return CatalogEntry(f"C{n}", cycle(n), Expected(n, n, 2, 4 if n > 3 else math.inf))
    raise ValueError(f"unknown catalogue name {name!r}")


def _literal(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    if "/" in text:
        num, den = text.split("/")
        return int(num) / int(den)
    return float(text)


def catalog_names() -> list[str]:
    return list(_FIXED) + ["glued_cliques(a,b,s)", "f_extremal(n,d)", "gnp(n,p,seed)", "K(n)", "C(n)"]
