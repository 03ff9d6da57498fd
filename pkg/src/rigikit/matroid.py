"""Rigidity-matroid queries on one graph at one generic point.

A :class:`RigidityOracle` fixes random field coordinates for the vertices of
``G`` plus one spare apex vertex ``w = n`` (used for cones ``G^{w,U}``).
Every rank it reports is the rank of a row subset of the same matrix, so
cached values are mutually consistent: rank is monotone and submodular on
them exactly, not just with high probability.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import field
from .field import EchelonBasis, edge_rank, rigid_rank_bound, sample_coordinates
from .graph import Graph, _bits


def _norm(e) -> tuple[int, int]:
    u, v = e
    return (u, v) if u < v else (v, u)


class RigidityOracle:
    def __init__(self, graph: Graph, d: int, seed=0):
        if d < 1:
            raise ValueError("dimension must be at least 1")
        self.graph = graph
        self.d = d
        self.seed = seed
        self.n = graph.n
        self.coords = sample_coordinates(graph.n + 1, d, seed)
        self.edges = graph.edges()
        self._edge_set = set(self.edges)
        self._cache: dict[frozenset, int] = {}
        self._vcache: dict[int, int] = {}
        self._basis: EchelonBasis | None = None
        self._rank: int | None = None

    # -- raw rank -------------------------------------------------------

    def _rank_pairs(self, pairs: Iterable[tuple[int, int]]) -> int:
        key = frozenset(_norm(e) for e in pairs)
        r = self._cache.get(key)
        if r is None:
            r = edge_rank(self.coords, sorted(key)) if key else 0
            self._cache[key] = r
        return r

    def row(self, u: int, v: int) -> np.ndarray:
        """Rigidity-matrix row of the pair ``uv`` (apex ``n`` allowed)."""
        return field._fill_rows(self.coords, np.array([[u, v]], dtype=np.int64))[0]

    @property
    def basis(self) -> EchelonBasis:
        if self._basis is None:
            basis = EchelonBasis(self.d * (self.n + 1), capacity=len(self.edges) + 1)
            for u, v in self.edges:
                basis.insert(self.row(u, v))
            self._basis = basis
        return self._basis

    # -- rank, dof, rigidity ---------------------------------------------

    def rank(self) -> int:
        if self._rank is None:
            self._rank = self._rank_pairs(self.edges)
        return self._rank

    def rank_of_edge_subset(self, F: Iterable[tuple[int, int]]) -> int:
        F = [_norm(e) for e in F]
        for e in F:
            if e not in self._edge_set:
                raise ValueError(f"{e} is not an edge of the graph")
        return self._rank_pairs(F)

    def rank_of_vertex_subset(self, X) -> int:
        """Rank of the induced subgraph ``G[X]``; ``X`` is an iterable or a bitmask."""
        mask = X if isinstance(X, int) else sum(1 << v for v in set(X))
        r = self._vcache.get(mask)
        if r is None:
            rows = self.graph.rows
            pairs = [(u, v) for u in _bits(mask) for v in _bits(rows[u] & mask) if u < v]
            r = edge_rank(self.coords, pairs) if pairs else 0
            self._vcache[mask] = r
        return r

    def rank_with(self, extra: Iterable[tuple[int, int]] = (), without: Iterable[tuple[int, int]] = ()) -> int:
        """Rank of ``E(G) - without + extra``; pairs may touch the apex ``n``."""
        drop = {_norm(e) for e in without}
        pairs = [e for e in self.edges if e not in drop]
        return self._rank_pairs(pairs + [_norm(e) for e in extra])

    def rigid_rank(self) -> int:
        return rigid_rank_bound(self.n, self.d)

    def dof(self) -> int:
        return self.rigid_rank() - self.rank()

    def is_rigid(self) -> bool:
        return self.rank() == self.rigid_rank()

    def is_independent(self) -> bool:
        return self.rank() == len(self.edges)

    # -- linked pairs, closure -------------------------------------------

    def _check_pair(self, u: int, v: int):
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"({u}, {v}) is not a pair of distinct vertices")
        if self.graph.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is an edge; linkedness is defined for non-adjacent pairs")

    def is_linked(self, u: int, v: int) -> bool:
        self._check_pair(u, v)
        return self.basis.reduces_to_zero(self.row(u, v))

    def linked_pairs(self) -> list[tuple[int, int]]:
        basis = self.basis
        return [(u, v) for u, v in self.graph.non_edges() if basis.reduces_to_zero(self.row(u, v))]

    def closure(self) -> Graph:
        return self.graph.add_edges(self.linked_pairs())

    def is_closed(self) -> bool:
        return not self.linked_pairs()

    # -- bridges and circuits ---------------------------------------------

    def is_bridge(self, e) -> bool:
        e = _norm(e)
        if e not in self._edge_set:
            raise ValueError(f"{e} is not an edge of the graph")
        return self.rank_with(without=[e]) == self.rank() - 1

    def bridges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if self.is_bridge(e)]

    def find_circuit(self) -> list[tuple[int, int]] | None:
        """An inclusion-minimal dependent edge set, or ``None`` if G is independent.

        Edges are tried for deletion in descending lexicographic order.
        """
        if self.is_independent():
            return None
        current = list(self.edges)
        for e in sorted(self.edges, reverse=True):
            trial = [f for f in current if f != e]
            if self._rank_pairs(trial) < len(trial):
                current = trial
        return current

    def greedy_basis(self) -> list[tuple[int, int]]:
        """Lexicographically first basis of the edge set."""
        chosen: list[tuple[int, int]] = []
        for e in self.edges:
            if self._rank_pairs(chosen + [e]) == len(chosen) + 1:
                chosen.append(e)
        return chosen

    def fundamental_circuit(self, e) -> list[tuple[int, int]]:
        """Circuit through the non-edge ``e`` inside ``B + e`` for the greedy basis ``B``.

        When ``E(G)`` is independent this is the unique circuit of ``E + e``.
        """
        u, v = _norm(e)
        self._check_pair(u, v)
        if not self.is_linked(u, v):
            raise ValueError(f"({u}, {v}) is loose; E + e contains no circuit through e")
        B = self.greedy_basis()
        circuit = [f for f in B if self._rank_pairs([g for g in B if g != f] + [(u, v)]) == len(B)]
        return sorted(circuit + [(u, v)])

    # -- cones ---------------------------------------------------------------

    def cone_rank(self, U: Iterable[int] | None = None) -> int:
        """Rank of ``G^{w,U}`` (apex ``w = n``); ``U`` defaults to all of V."""
        U = range(self.n) if U is None else sorted(set(U))
        for u in U:
            if not 0 <= u < self.n:
                raise ValueError(f"vertex {u} out of range")
        return self.rank_with(extra=[(u, self.n) for u in U])

    def rup(self) -> int:
        """``r_d(G^w) - r_d(G)``."""
        return self.cone_rank() - self.rank()

    # -- contraction onto the star of v ---------------------------------------

    def star(self, v: int) -> list[tuple[int, int]]:
        return [_norm((v, u)) for u in self.graph.neighbors(v)]

    def contracted_rank(self, v: int, F: Iterable[tuple[int, int]]) -> int:
        """Rank of ``F`` in ``R_d(G) / E(G - v)``, for ``F`` a set of edges at ``v``."""
        F = [_norm(e) for e in F]
        star = set(self.star(v))
        for e in F:
            if e not in star:
                raise ValueError(f"{e} is not an edge incident with vertex {v}")
        rest = [e for e in self.edges if v not in e]
        return self._rank_pairs(rest + F) - self._rank_pairs(rest)

    def contracted_star(self, v: int) -> tuple[list[tuple[int, int]], np.ndarray]:
        """Star edges at ``v`` and their rows reduced modulo the span of ``E(G - v)``.

        Any subset of the reduced rows has rank equal to ``contracted_rank`` of
        the matching edges.
        """
        star = self.star(v)
        basis = EchelonBasis(self.d * (self.n + 1), capacity=len(self.edges) + 1)
        for u, w in self.edges:
            if v != u and v != w:
                basis.insert(self.row(u, w))
        width = self.d * (self.n + 1)
        R = np.zeros((len(star), width), dtype=np.uint64)
        for i, (a, b) in enumerate(star):
            R[i] = basis.residual(self.row(a, b))
        return star, R


# Function-style entry points.  Each builds a fresh oracle at ``seed``.


def rank(G: Graph, d: int, seed=0) -> int:
    return RigidityOracle(G, d, seed).rank()


def dof(G: Graph, d: int, seed=0) -> int:
    return RigidityOracle(G, d, seed).dof()


def is_rigid(G: Graph, d: int, seed=0) -> bool:
    return RigidityOracle(G, d, seed).is_rigid()


def is_independent(G: Graph, d: int, seed=0) -> bool:
    return RigidityOracle(G, d, seed).is_independent()


def rup(G: Graph, d: int, seed=0) -> int:
    return RigidityOracle(G, d, seed).rup()


def closure(G: Graph, d: int, seed=0) -> Graph:
    return RigidityOracle(G, d, seed).closure()


def is_closed(G: Graph, d: int, seed=0) -> bool:
    return RigidityOracle(G, d, seed).is_closed()
