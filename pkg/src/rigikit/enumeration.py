"""Isomorph-free generation of small graphs.

Graphs are grown one vertex at a time; each child is reduced to its
canonical form and kept once per level.  A family can be generated this way
whenever membership is inherited by induced subgraphs.  Degree-type filters
on dense graphs are handled through their complements, which are sparse:

* ``MIN_DEGREE >= k`` on G  <=>  complement has maximum degree ``<= n-1-k``
* ``ETA >= k`` on G         <=>  every complement edge ``uv`` has
  ``deg(u) + deg(v) <= 2n-2-k``

Both complement conditions are hereditary, so the generation prunes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .canon import canonical_rows
from .graph import Graph, _bits, complement

ALL = "ALL"
MIN_DEGREE = "MIN_DEGREE"
ETA = "ETA"
COMPLEMENT_EDGE_DEGREE_SUM = "COMPLEMENT_EDGE_DEGREE_SUM"

MAX_N_ALL = 9
MAX_N_FILTERED = 11


@dataclass(frozen=True)
class EnumerationFilter:
    """Which family to enumerate.

    ``COMPLEMENT_EDGE_DEGREE_SUM <= k`` is the sparse family itself: graphs in
    which every edge has endpoint degree sum at most ``k``.
    """

    n: int
    kind: str = ALL
    k: int = 0

    def __post_init__(self):
        if self.kind not in (ALL, MIN_DEGREE, ETA, COMPLEMENT_EDGE_DEGREE_SUM):
            raise ValueError(f"unknown filter kind {self.kind!r}")
        bound = MAX_N_ALL if self.kind == ALL else MAX_N_FILTERED
        if not 0 <= self.n <= bound:
            raise ValueError(f"n={self.n} outside the supported range 0..{bound} for {self.kind}")


def _edge_sum_ok(rows, bound):
    deg = [r.bit_count() for r in rows]
    for u, r in enumerate(rows):
        for v in _bits(r >> (u + 1) << (u + 1)):
            if deg[u] + deg[v] > bound:
                return False
    return True


def _children(rows, max_degree, edge_sum):
    m = len(rows)
    deg = [r.bit_count() for r in rows]
    eligible = [v for v in range(m) if deg[v] < max_degree and deg[v] + 2 <= edge_sum]
    top = min(len(eligible), max_degree, max(edge_sum - 1, 0))
    for size in range(top + 1):
        for S in combinations(eligible, size):
            mask = 0
            for v in S:
                mask |= 1 << v
            new = [r | (1 << m) if mask >> v & 1 else r for v, r in enumerate(rows)]
            new.append(mask)
            if edge_sum < 2 * m and not _edge_sum_ok(new, edge_sum):
                continue
            yield tuple(new)


@lru_cache(maxsize=None)
def _level(n: int, max_degree: int, edge_sum: int) -> tuple[tuple[int, ...], ...]:
    """Canonical adjacency rows of every graph in the family on ``n`` vertices."""
    if n == 0:
        return ((),)
    seen = set()
    for parent in _level(n - 1, max_degree, edge_sum):
        for child in _children(parent, max_degree, edge_sum):
            seen.add(canonical_rows(Graph._trusted(n, child)))
    return tuple(sorted(seen))


def _family(n: int, max_degree: int, edge_sum: int) -> list[Graph]:
    if max_degree < 0:
        return []
    # a negative edge bound still admits the edgeless graph
    edge_sum = max(edge_sum, 0)
    return [Graph._trusted(n, rows) for rows in _level(n, max_degree, edge_sum)]


def enumerate_graphs(flt: EnumerationFilter) -> Iterator[Graph]:
    """One representative per isomorphism class satisfying ``flt``."""
    n, kind, k = flt.n, flt.kind, flt.k
    big = 4 * MAX_N_FILTERED
    if kind == ALL:
        yield from _family(n, big, big)
    elif kind == COMPLEMENT_EDGE_DEGREE_SUM:
        yield from _family(n, big, k)
    elif kind == MIN_DEGREE:
        for H in _family(n, n - 1 - k, big):
            yield complement(H)
    else:
        for H in _family(n, big, 2 * n - 2 - k):
            yield complement(H)


def all_graphs(n: int) -> list[Graph]:
    return list(enumerate_graphs(EnumerationFilter(n, ALL)))


def graphs_with_eta_at_least(n: int, k: int) -> list[Graph]:
    return list(enumerate_graphs(EnumerationFilter(n, ETA, k)))


def graphs_with_min_degree_at_least(n: int, k: int) -> list[Graph]:
    return list(enumerate_graphs(EnumerationFilter(n, MIN_DEGREE, k)))
