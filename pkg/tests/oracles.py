"""Independent reference implementations used only by the tests.

None of these import the package's rank or canonical-form code.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

PRIME = (1 << 61) - 1


def component_rank(n, edges):
    """Rank of the 1-dimensional rigidity matroid: ``n`` minus the number of components."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            rank += 1
    return rank


def pebble_game_rank(n, edges):
    """(2,3) pebble game: the number of edges accepted equals the planar rigidity rank."""
    pebbles = [2] * n
    out = [[] for _ in range(n)]  # directed edges u -> w

    def find_pebble(root, avoid):
        # DFS along directed edges looking for a free pebble; reverse the path on success.
        seen = {root} | set(avoid)
        stack = [(root, iter(out[root]))]
        path = []
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                if path:
                    path.pop()
                continue
            if nxt in seen:
                continue
            seen.add(nxt)
            path.append((node, nxt))
            if pebbles[nxt] > 0:
                pebbles[nxt] -= 1
                for a, b in path:
                    out[a].remove(b)
                    out[b].append(a)
                pebbles[root] += 1
                return True
            stack.append((nxt, iter(list(out[nxt]))))
        return False

    accepted = 0
    for u, v in edges:
        while pebbles[u] + pebbles[v] < 4:
            if pebbles[u] < 2 and find_pebble(u, [v]):
                continue
            if pebbles[v] < 2 and find_pebble(v, [u]):
                continue
            break
        if pebbles[u] + pebbles[v] >= 4:
            pebbles[u] -= 1
            out[u].append(v)
            accepted += 1
    return accepted


def labeled_graph_classes(n):
    """Number of isomorphism classes on ``n`` vertices by brute force over all labelled graphs.

    Each labelled graph is an edge bit-vector; its canonical code is the
    minimum over all ``n!`` relabellings.
    """
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    if m == 0:
        return 1
    index = {p: i for i, p in enumerate(pairs)}
    codes = np.arange(1 << m, dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(m)) & 1).astype(np.int64)
    best = None
    for perm in permutations(range(n)):
        target = [index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs]
        relabelled = (bits << np.array(target, dtype=np.int64)).sum(axis=1)
        best = relabelled if best is None else np.minimum(best, relabelled)
    return len(np.unique(best))


def brute_k_connected(n, edges, k):
    if n < k + 1:
        return False
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for size in range(k):
        for cut in combinations(range(n), size):
            rest = [v for v in range(n) if v not in cut]
            seen = {rest[0]}
            stack = [rest[0]]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen and y not in cut:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(rest):
                return False
    return True


def graph6_reference(n, edges):
    """graph6 encoding written from the format description (n <= 62)."""
    assert n <= 62
    E = {tuple(sorted(e)) for e in edges}
    bits = [1 if (i, j) in E else 0 for j in range(1, n) for i in range(j)]
    while len(bits) % 6:
        bits.append(0)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return chr(63 + n) + body


def modp_rank(rows):
    """Gaussian elimination over GF(2^61 - 1) with Python integers."""
    M = [[int(x) % PRIME for x in r] for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], PRIME - 2, PRIME)
        M[rank] = [x * inv % PRIME for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % PRIME for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def rigid_rank_closed_form(n, d):
    from math import comb

    return comb(n, 2) if n <= d + 1 else d * n - comb(d + 1, 2)
