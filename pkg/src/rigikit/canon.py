"""Canonical labelling of small graphs.

Individualisation-refinement search: the unit partition is refined to an
equitable ordered partition, the first non-singleton cell is split by
individualising each of its vertices in turn, and every discrete leaf yields
a labelling.  The canonical form is the leaf whose relabelled adjacency rows
are lexicographically smallest.  Leaves with equal certificates expose
automorphisms, which prune children lying in an already explored orbit of the
prefix stabiliser.
"""

from __future__ import annotations

from .graph import Graph, _bits, encode_graph6


def _refine(rows, cells):
    """Equitable refinement, splitting cells by neighbour counts into all cells."""
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                r = rows[v]
                key = tuple([(r & m).bit_count() for m in masks])
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                for key in sorted(groups):
                    out.append(groups[key])
        cells = out
        if not split:
            return cells


def _certificate(rows, order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = []
    for v in order:
        r = 0
        for u in _bits(rows[v]):
            r |= 1 << pos[u]
        cert.append(r)
    return tuple(cert)


class _Search:
    def __init__(self, rows):
        self.rows = rows
        self.best = None
        self.best_order = None
        self.autos: list[list[int]] = []

    def orbit_rep(self, prefix, target, v, explored):
        # union-find orbits of automorphisms fixing the prefix pointwise
        if not explored or not self.autos:
            return False
        usable = [g for g in self.autos if all(g[x] == x for x in prefix)]
        if not usable:
            return False
        parent = {x: x for x in target}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in usable:
            for x in target:
                y = g[x]
                if y in parent:
                    a, b = find(x), find(y)
                    if a != b:
                        parent[a] = b
        root = find(v)
        return any(find(w) == root for w in explored)

    def run(self, cells, prefix):
        cells = _refine(self.rows, cells)
        for idx, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            order = [c[0] for c in cells]
            cert = _certificate(self.rows, order)
            if self.best is None or cert < self.best:
                self.best, self.best_order = cert, order
            elif cert == self.best:
                g = [0] * len(order)
                for a, b in zip(self.best_order, order):
                    g[a] = b
                self.autos.append(g)
            return
        explored: list[int] = []
        for v in cell:
            if self.orbit_rep(prefix, cell, v, explored):
                continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            self.run(cells[:idx] + [[v], rest] + cells[idx + 1:], prefix + [v])


def canonical_order(G: Graph) -> list[int]:
    """Vertex order ``order`` such that relabelling ``order[i] -> i`` is canonical."""
    if G.n == 0:
        return []
    s = _Search(G.rows)
    s.run([list(range(G.n))], [])
    return s.best_order


def canonical_rows(G: Graph) -> tuple[int, ...]:
    if G.n == 0:
        return ()
    s = _Search(G.rows)
    s.run([list(range(G.n))], [])
    return s.best


def canonical_graph(G: Graph) -> Graph:
    return Graph._trusted(G.n, canonical_rows(G))


def canonical_key(G: Graph) -> tuple[int, tuple[int, ...]]:
    """Hashable isomorphism invariant that is complete: equal iff isomorphic."""
    return (G.n, canonical_rows(G))


def canonical_graph6(G: Graph) -> str:
    return encode_graph6(canonical_graph(G))


def are_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.num_edges == H.num_edges and canonical_key(G) == canonical_key(H)
