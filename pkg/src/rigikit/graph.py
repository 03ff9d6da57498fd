"""Simple undirected graphs stored as dense bit-row adjacency.

Vertices are ``0..n-1``.  Row ``v`` is an int whose bit ``u`` is set when
``uv`` is an edge.  Graphs are immutable; every operation returns a new one.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

INFINITY = math.inf


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        rows = [0] * n
        for index, (u, v) in enumerate(edges):
            for x in (u, v):
                if not 0 <= x < n:
                    raise ValueError(f"edge #{index} ({u}, {v}): endpoint {x} out of range 0..{n - 1}")
            if u == v:
                raise ValueError(f"edge #{index} ({u}, {v}) is a loop")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> "Graph":
        # skips validation; callers guarantee symmetric, loop-free rows
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    # -- basic queries -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def neighbor_mask(self, v: int) -> int:
        return self.rows[v]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.rows[u] >> v & 1]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees()))

    # -- derived graphs ------------------------------------------------

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + list(edges))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if not rows[u] >> v & 1:
                raise ValueError(f"({u}, {v}) is not an edge")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))

    def add_vertex(self, neighbors: Iterable[int] = ()) -> "Graph":
        """Append vertex ``n`` joined to ``neighbors``."""
        w = self.n
        rows = list(self.rows) + [0]
        for u in neighbors:
            if not 0 <= u < w:
                raise ValueError(f"neighbor {u} out of range")
            rows[u] |= 1 << w
            rows[w] |= 1 << u
        return Graph._trusted(w + 1, tuple(rows))

    def cone(self, U: Iterable[int] | None = None) -> "Graph":
        """``G^{w,U}`` with apex ``w = n``; ``U`` defaults to every vertex."""
        return self.add_vertex(range(self.n) if U is None else U)

    def delete_vertex(self, v: int) -> "Graph":
        return induced(self, [u for u in range(self.n) if u != v])

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``perm[v]`` playing the role of old vertex ``v``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, edges)


def delta(G: Graph) -> int:
    """Minimum degree (0 for the empty vertex set)."""
    return min(G.degrees(), default=0)


def eta(G: Graph):
    """Minimum degree sum over non-adjacent pairs; ``INFINITY`` for complete graphs."""
    deg = G.degrees()
    best = INFINITY
    for u in range(G.n):
        missing = ((1 << G.n) - 1) & ~G.rows[u] & ~((1 << (u + 1)) - 1)
        for v in _bits(missing):
            s = deg[u] + deg[v]
            if s < best:
                best = s
    return best


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph._trusted(G.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(G.rows)))


def induced(G: Graph, X: Iterable[int]) -> Graph:
    """``G[X]`` relabelled so that the sorted vertices of X become ``0..|X|-1``."""
    order = sorted(set(X))
    index = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = 0
        for u in _bits(G.rows[v]):
            if u in index:
                row |= 1 << index[u]
        rows.append(row)
    return Graph._trusted(len(order), tuple(rows))


def contract_pair(G: Graph, u: int, v: int) -> Graph:
    """Merge ``u`` and ``v`` into one vertex adjacent to ``N(u) | N(v) - {u, v}``.

    The merged vertex keeps index ``min(u, v)``; index ``max(u, v)`` is removed
    and higher vertices shift down by one.
    """
    if u == v:
        raise ValueError("cannot contract a vertex with itself")
    for x in (u, v):
        if not 0 <= x < G.n:
            raise ValueError(f"vertex {x} out of range")
    keep, drop = min(u, v), max(u, v)
    merged = (G.rows[keep] | G.rows[drop]) & ~(1 << keep) & ~(1 << drop)
    rows = list(G.rows)
    rows[keep] = merged
    for x in _bits(merged):
        rows[x] |= 1 << keep
    rows = [r & ~(1 << drop) for r in rows]
    low = (1 << drop) - 1
    out = [(r & low) | ((r >> (drop + 1)) << drop) for i, r in enumerate(rows) if i != drop]
    return Graph._trusted(G.n - 1, tuple(out))


def components(G: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp, frontier = 1 << s, 1 << s
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= G.rows[x]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def local_vertex_connectivity(G: Graph, s: int, t: int, cap: int | None = None) -> int:
    """Number of internally disjoint s-t paths for non-adjacent ``s, t``.

    Unit-capacity max-flow on the vertex-split digraph; stops once ``cap``
    paths are found.
    """
    if G.has_edge(s, t):
        raise ValueError("s and t must be non-adjacent")
    n = G.n
    # node 2x is x_in, 2x+1 is x_out; inner arc x_in -> x_out has capacity 1
    flow: dict[tuple[int, int], int] = {}

    def residual(a: int, b: int) -> int:
        if a // 2 == b // 2:
            base = 1 if a % 2 == 0 and b == a + 1 else 0
        elif a % 2 == 1 and b % 2 == 0 and G.has_edge(a // 2, b // 2):
            base = n
        else:
            base = 0
        return base - flow.get((a, b), 0) + flow.get((b, a), 0)

    def arcs(a: int):
        x = a // 2
        if a % 2 == 0:
            yield a + 1
            for y in _bits(G.rows[x]):
                yield 2 * y + 1
        else:
            yield a - 1
            for y in _bits(G.rows[x]):
                yield 2 * y

    source, sink = 2 * s + 1, 2 * t
    paths = 0
    while cap is None or paths < cap:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in arcs(a):
                if b not in parent and residual(a, b) > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            if flow.get((b, a), 0) > 0:
                flow[(b, a)] -= 1
            else:
                flow[(a, b)] = flow.get((a, b), 0) + 1
            b = a
        paths += 1
    return paths


def is_k_connected(G: Graph, k: int) -> bool:
    """At least ``k+1`` vertices and no vertex cut of size below ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    if G.n < k + 1:
        return False
    return all(local_vertex_connectivity(G, u, v, cap=k) >= k for u, v in G.non_edges())


def vertex_connectivity(G: Graph) -> int:
    if G.is_complete():
        return max(G.n - 1, 0)
    return min(local_vertex_connectivity(G, u, v) for u, v in G.non_edges())


def common_neighbors(G: Graph, u: int, v: int) -> int:
    return (G.rows[u] & G.rows[v]).bit_count()


def contains_clique(G: Graph, size: int) -> bool:
    """True when G has a complete subgraph on ``size`` vertices."""
    if size <= 1:
        return G.n >= size

    def extend(candidates: int, need: int) -> bool:
        if need == 0:
            return True
        if candidates.bit_count() < need:
            return False
        for x in _bits(candidates):
            candidates &= ~(1 << x)
            if extend(candidates & G.rows[x], need - 1):
                return True
        return False

    return extend((1 << G.n) - 1, size)


# -- text formats ---------------------------------------------------------


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def encode_graph6(G: Graph) -> str:
    n = G.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        raise ValueError("graph6 encoding supports n <= 258047")
    bits = [G.rows[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5]))
        for k in range(0, len(bits), 6)
    )
    return head + body


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 character {ch!r}", i)
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        raise Graph6Error("8-byte graph6 headers are not supported", 1)
    else:
        if len(s) < 4:
            raise Graph6Error("truncated size header", len(s))
        n = sum((ord(s[1 + k]) - 63) << (12 - 6 * k) for k in range(3))
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - pos != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {len(s) - pos}", min(len(s), pos + need))
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[pos + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if k % 6 and (ord(s[-1]) - 63) & ((1 << (6 - k % 6)) - 1):
        raise Graph6Error("non-zero padding bits", len(s) - 1)
    return Graph(n, tuple(rows))


def read_edge_list(text: str) -> Graph:
    """Parse ``"n m\\nu v\\n..."``; blank lines and ``#`` comments are ignored."""
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or len(lines[0]) != 2:
        raise ValueError("edge list must start with a 'n m' header")
    n, m = (int(x) for x in lines[0])
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if len(ln) != 2:
            raise ValueError(f"line {lineno}: expected two vertex indices")
        edges.append((int(ln[0]), int(ln[1])))
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges but {len(edges)} were listed")
    return Graph.from_edges(n, edges)


def write_edge_list(G: Graph) -> str:
    edges = G.edges()
    return "\n".join([f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"
