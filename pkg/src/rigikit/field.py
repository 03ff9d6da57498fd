"""Rigidity-matrix rank over the prime field GF(2^61 - 1).

Generic coordinates are realised as uniform random field points.  A maximal
minor of the rigidity matrix is a polynomial of degree at most ``d*n`` in the
coordinates, so one evaluation under-reports the generic rank with
probability at most ``d*n / p`` (Schwartz-Zippel).

Arithmetic runs in numba kernels on ``uint64`` arrays.  Products are reduced
with the Mersenne identity ``2^61 = 1 (mod p)`` after splitting each factor
into 31-bit and 30-bit halves, so nothing overflows 64 bits.
"""

from __future__ import annotations

from math import comb

import numba as nb
import numpy as np

from .graph import Graph

PRIME = (1 << 61) - 1

_P = np.uint64(PRIME)
_M31 = np.uint64((1 << 31) - 1)
_M30 = np.uint64((1 << 30) - 1)
_S1 = np.uint64(1)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S61 = np.uint64(61)


@nb.njit(inline="always")
def _mul(a, b):
    ah = a >> _S31
    al = a & _M31
    bh = b >> _S31
    bl = b & _M31
    mid = ah * bl + al * bh
    r = ((ah * bh) << _S1) + (mid >> _S30) + ((mid & _M30) << _S31) + al * bl
    r = (r & _P) + (r >> _S61)
    r = (r & _P) + (r >> _S61)
    if r >= _P:
        r -= _P
    return r


@nb.njit(inline="always")
def _sub(a, b):
    return a - b if a >= b else a + _P - b


@nb.njit(cache=True)
def _inv(a):
    e = PRIME - 2
    r = np.uint64(1)
    while e:
        if e & 1:
            r = _mul(r, a)
        a = _mul(a, a)
        e >>= 1
    return r


@nb.njit(cache=True)
def _fill_rows(coords, edges):
    m = edges.shape[0]
    N, d = coords.shape
    M = np.zeros((m, N * d), dtype=np.uint64)
    for k in range(m):
        u = edges[k, 0]
        v = edges[k, 1]
        for t in range(d):
            x = _sub(coords[u, t], coords[v, t])
            M[k, u * d + t] = x
            M[k, v * d + t] = _sub(np.uint64(0), x)
    return M


@nb.njit(cache=True)
def _rank_inplace(M):
    m, c = M.shape
    r = 0
    for col in range(c):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if M[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(col, c):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        inv = _inv(M[r, col])
        for j in range(col, c):
            M[r, j] = _mul(M[r, j], inv)
        for i in range(r + 1, m):
            f = M[i, col]
            if f != 0:
                for j in range(col, c):
                    M[i, j] = _sub(M[i, j], _mul(f, M[r, j]))
        r += 1
    return r


@nb.njit(cache=True)
def _edge_rank(coords, edges):
    return _rank_inplace(_fill_rows(coords, edges))


@nb.njit(cache=True)
def _reduce(basis, pivots, rank, row):
    # basis rows are in reduced echelon form with pivot entry 1
    for k in range(rank):
        f = row[pivots[k]]
        if f != 0:
            for j in range(basis.shape[1]):
                b = basis[k, j]
                if b != 0:
                    row[j] = _sub(row[j], _mul(f, b))


@nb.njit(cache=True)
def _insert(basis, pivots, rank, row):
    _reduce(basis, pivots, rank, row)
    c = row.shape[0]
    col = -1
    for j in range(c):
        if row[j] != 0:
            col = j
            break
    if col < 0:
        return False
    inv = _inv(row[col])
    for j in range(c):
        row[j] = _mul(row[j], inv)
    for k in range(rank):
        f = basis[k, col]
        if f != 0:
            for j in range(c):
                basis[k, j] = _sub(basis[k, j], _mul(f, row[j]))
    basis[rank, :] = row
    pivots[rank] = col
    return True


def rigid_rank_bound(n: int, d: int) -> int:
    """Rank of a d-rigid graph on ``n`` vertices: ``C(n,2)`` if ``n <= d+1``, else ``dn - C(d+1,2)``."""
    if n <= d + 1:
        return comb(n, 2)
    return d * n - comb(d + 1, 2)


def sample_coordinates(n: int, d: int, seed) -> np.ndarray:
    """``n x d`` table of uniform field elements; a deterministic function of ``seed``."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    return rng.integers(0, PRIME, size=(n, d), dtype=np.uint64)


def _edge_array(edges) -> np.ndarray:
    arr = np.asarray(list(edges), dtype=np.int64)
    return arr.reshape(-1, 2)


def rigidity_matrix(G: Graph, coords: np.ndarray) -> np.ndarray:
    """One row per edge in lexicographic order, width ``d * n``."""
    if coords.shape[0] != G.n:
        raise ValueError("coordinate table must have one row per vertex")
    return _fill_rows(np.ascontiguousarray(coords, dtype=np.uint64), _edge_array(G.edges()))


def matrix_rank(M: np.ndarray) -> int:
    """Rank over GF(p) of an integer matrix with entries in ``[0, p)``."""
    M = np.array(M, dtype=np.uint64)
    if M.ndim != 2 or M.size == 0:
        return 0
    return int(_rank_inplace(M))


def edge_rank(coords: np.ndarray, edges) -> int:
    """Rank of the rigidity-matrix rows for ``edges`` at the given coordinates."""
    arr = _edge_array(edges)
    if arr.shape[0] == 0:
        return 0
    return int(_edge_rank(coords, arr))


def generic_rank(G: Graph, d: int, trials: int = 1, seed=0) -> int:
    """Generic ``d``-dimensional rigidity rank: the best of ``trials`` random evaluations."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if trials < 1:
        raise ValueError("trials must be positive")
    edges = G.edges()
    if not edges:
        return 0
    cap = min(len(edges), rigid_rank_bound(G.n, d))
    best = 0
    for t in range(trials):
        coords = sample_coordinates(G.n, d, seed if t == 0 else (seed, t))
        best = max(best, edge_rank(coords, edges))
        if best == cap:
            break
    return best


class EchelonBasis:
    """Row space accumulated incrementally, kept in reduced row-echelon form."""

    def __init__(self, width: int, capacity: int | None = None):
        self.width = width
        self.capacity = width if capacity is None else min(capacity, width)
        self._rows = np.zeros((max(self.capacity, 1), width), dtype=np.uint64)
        self._pivots = np.zeros(max(self.capacity, 1), dtype=np.int64)
        self.rank = 0

    def _check(self, row) -> np.ndarray:
        row = np.array(row, dtype=np.uint64).reshape(-1)
        if row.shape[0] != self.width:
            raise ValueError(f"row width {row.shape[0]} does not match basis width {self.width}")
        return row

    def insert(self, row) -> bool:
        """Add ``row`` if it is independent of the stored rows; report whether it was."""
        row = self._check(row)
        if self.rank >= self.capacity:
            if not self.reduces_to_zero(row):
                raise ValueError("basis capacity exhausted")
            return False
        ok = bool(_insert(self._rows, self._pivots, self.rank, row))
        if ok:
            self.rank += 1
        return ok

    def reduces_to_zero(self, row) -> bool:
        """True when ``row`` lies in the span of the stored rows (basis unchanged)."""
        row = self._check(row)
        _reduce(self._rows, self._pivots, self.rank, row)
        return not row.any()

    def residual(self, row) -> np.ndarray:
        row = self._check(row)
        _reduce(self._rows, self._pivots, self.rank, row)
        return row

    @property
    def rows(self) -> np.ndarray:
        return self._rows[: self.rank].copy()

    @property
    def pivots(self) -> list[int]:
        return [int(p) for p in self._pivots[: self.rank]]


def basis_insert(basis: EchelonBasis, row) -> bool:
    return basis.insert(row)


@nb.njit(cache=True)
def _subset_ranks(R):
    k, c = R.shape
    out = np.zeros(1 << k, dtype=np.int64)
    work = np.zeros((k, c), dtype=np.uint64)
    for mask in range(1, 1 << k):
        m = 0
        for i in range(k):
            if (mask >> i) & 1:
                for j in range(c):
                    work[m, j] = R[i, j]
                m += 1
        out[mask] = _rank_inplace(work[:m])
    return out


def compress_rows(M: np.ndarray) -> np.ndarray:
    """Restrict ``M`` to a column set on which its row space projects injectively.

    Every subset of rows keeps its rank, but the matrix becomes ``k x rank(M)``.
    """
    M = np.ascontiguousarray(M, dtype=np.uint64)
    if M.shape[0] == 0:
        return M.reshape(0, 0)
    basis = EchelonBasis(M.shape[1], capacity=M.shape[0])
    for row in M:
        basis.insert(row)
    return np.ascontiguousarray(M[:, basis.pivots])


def subset_ranks(M: np.ndarray) -> np.ndarray:
    """``out[mask]`` is the rank of the rows of ``M`` selected by the bits of ``mask``."""
    M = compress_rows(M)
    if M.shape[0] > 24:
        raise ValueError("too many rows for an exhaustive subset scan")
    if M.shape[1] == 0:
        return np.zeros(1 << M.shape[0], dtype=np.int64)
    return _subset_ranks(M)
