"""Conflict graphs on vector sets and independent-ball peeling.

Two vectors conflict (= are adjacent) iff their inner product is at most
-16, equivalently their squared distance is at least 96.  On subsets of
the minimal-vector set the only adjacent inner products are -16 and -32,
which is asserted while building.

Explicit mode materializes sorted compressed neighbor lists (32-bit ids);
implicit mode keeps only the vectors and answers neighbor queries with an
on-demand inner-product scan.  Both expose the same interface, so the
coloring machinery is mode-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, TextIO

import numpy as np

from .leech import VectorSet, inner_product

#: adjacency threshold: edge iff <x, y> <= IP_ADJACENT
IP_ADJACENT = -16

#: inner products that can occur between distinct minimal vectors
_ALLOWED_IPS = np.array([-32, -16, -8, 0, 8, 16, 32], dtype=np.int32)

DEFAULT_MEM_BUDGET = 3 << 30  # bytes

#: no vertex of any subset of the minimal-vector set exceeds this degree
#: (4600 vectors at ip -16 plus the antipode)
_MAX_DEGREE = 4601


class CapacityExceeded(Exception):
    """Explicit adjacency would exceed the memory budget; use implicit mode."""


class BadPair(Exception):
    """Ball construction needs a pair at inner product -8."""


class ConflictGraph:
    """Vertices are positions 0..V-1 into a vector set; vertex_ids maps
    them back to the source set's canonical order."""

    def __init__(self, vectors: np.ndarray, vertex_ids: np.ndarray, mode: str,
                 indptr: np.ndarray | None = None,
                 indices: np.ndarray | None = None,
                 edge_count: int | None = None):
        self.vectors = vectors
        self.vertex_ids = vertex_ids
        self.mode = mode
        self.indptr = indptr
        self.indices = indices
        self._edge_count = edge_count
        self._float = vectors.astype(np.float32)

    @property
    def vertex_count(self) -> int:
        return len(self.vectors)

    @property
    def edge_count(self) -> int:
        if self._edge_count is None:
            self._edge_count = self._count_edges()
        return self._edge_count

    def degree(self, v: int) -> int:
        if self.mode == "explicit":
            return int(self.indptr[v + 1] - self.indptr[v])
        return len(self.neighbors(v))

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v."""
        if self.mode == "explicit":
            return self.indices[self.indptr[v]:self.indptr[v + 1]]
        ips = self._float @ self._float[v]
        nb = np.flatnonzero(ips <= IP_ADJACENT)
        return nb.astype(np.int32)

    def adjacent(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if self.mode == "explicit":
            row = self.neighbors(u)
            pos = np.searchsorted(row, v)
            return pos < len(row) and row[pos] == v
        return inner_product(self.vectors[u], self.vectors[v]) <= IP_ADJACENT

    def degrees_of(self, ids: np.ndarray, block: int = 512) -> np.ndarray:
        """Degrees of a batch of vertices via blocked scans."""
        ids = np.asarray(ids)
        if self.mode == "explicit":
            return (self.indptr[ids + 1] - self.indptr[ids]).astype(np.int64)
        out = np.empty(len(ids), dtype=np.int64)
        for s in range(0, len(ids), block):
            chunk = ids[s:s + block]
            ips = self._float @ self._float[chunk].T
            out[s:s + len(chunk)] = (ips <= IP_ADJACENT).sum(axis=0)
        return out

    def iter_edges(self, block: int = 2048) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted by u then v."""
        if self.mode == "explicit":
            for u in range(self.vertex_count):
                row = self.neighbors(u)
                for v in row[row > u]:
                    yield u, int(v)
            return
        V = self.vertex_count
        for s in range(0, V, block):
            ips = self._float[s:s + block] @ self._float.T
            adj = ips <= IP_ADJACENT
            for r in range(adj.shape[0]):
                u = s + r
                for v in np.flatnonzero(adj[r][u + 1:]) + u + 1:
                    yield u, int(v)

    def _count_edges(self, block: int = 2048) -> int:
        total = 0
        for s in range(0, self.vertex_count, block):
            ips = self._float[s:s + block] @ self._float.T
            total += int((ips <= IP_ADJACENT).sum())
        return total // 2

    def subgraph(self, keep_ids: np.ndarray) -> "ConflictGraph":
        """Graph induced on a subset of vertices (ids into this graph)."""
        keep_ids = np.asarray(keep_ids)
        sub_vectors = self.vectors[keep_ids]
        sub_source_ids = self.vertex_ids[keep_ids]
        if self.mode == "explicit":
            return _build_explicit(sub_vectors, sub_source_ids)
        return ConflictGraph(sub_vectors, sub_source_ids, "implicit")


def _estimated_explicit_bytes(V: int) -> int:
    # sorted neighbor lists with 32-bit ids plus 64-bit offsets
    return V * min(V - 1, _MAX_DEGREE) * 4 + (V + 1) * 8


def _build_explicit(vectors: np.ndarray, vertex_ids: np.ndarray,
                    validate_support: bool = True, block: int = 2048) -> ConflictGraph:
    V = len(vectors)
    Xf = vectors.astype(np.float32)
    rows: list[np.ndarray] = []
    degs = np.zeros(V, dtype=np.int64)
    for s in range(0, V, block):
        ips = Xf[s:s + block] @ Xf.T
        if validate_support:
            vals = np.unique(ips.astype(np.int32))
            off_diag = vals[vals != 32] if V > 1 else vals
            if not np.isin(off_diag, _ALLOWED_IPS).all():
                raise AssertionError(f"unexpected inner products {off_diag}")
        adj = ips <= IP_ADJACENT
        for r in range(adj.shape[0]):
            nb = np.flatnonzero(adj[r]).astype(np.int32)
            rows.append(nb)
            degs[s + r] = len(nb)
    indptr = np.zeros(V + 1, dtype=np.int64)
    np.cumsum(degs, out=indptr[1:])
    indices = np.concatenate(rows) if rows else np.empty(0, dtype=np.int32)
    return ConflictGraph(vectors, vertex_ids, "explicit",
                         indptr=indptr, indices=indices,
                         edge_count=int(indptr[-1]) // 2)


def build_graph(X: VectorSet, mode: str = "auto",
                mem_budget: int = DEFAULT_MEM_BUDGET) -> ConflictGraph:
    """Conflict graph of a vector set.

    mode "explicit" raises CapacityExceeded when the estimated adjacency
    size exceeds mem_budget; "auto" falls back to implicit instead.
    """
    if len(X) < 1:
        raise ValueError("empty vector set")
    vertex_ids = np.arange(len(X), dtype=np.int64)
    if mode not in ("auto", "explicit", "implicit"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "implicit":
        return ConflictGraph(X.vectors, vertex_ids, "implicit")
    estimate = _estimated_explicit_bytes(len(X))
    if estimate > mem_budget:
        if mode == "explicit":
            raise CapacityExceeded(
                f"explicit adjacency needs ~{estimate} bytes > budget {mem_budget}")
        return ConflictGraph(X.vectors, vertex_ids, "implicit")
    return _build_explicit(X.vectors, vertex_ids)


@dataclass
class IndependentBall:
    """The set {z : <x + y, z> >= 16} for a pair with <x, y> = -8; its
    members are pairwise at inner product >= -8, hence independent in the
    conflict graph."""

    center: np.ndarray          # int8, squared norm 48
    x_id: int
    y_id: int
    member_ids: np.ndarray      # sorted positions into the source set


def independent_ball(X: VectorSet, x_id: int, y_id: int) -> IndependentBall:
    x = X.vectors[x_id]
    y = X.vectors[y_id]
    ip = inner_product(x, y)
    if ip != -8:
        raise BadPair(f"need inner product -8, got {ip}")
    center = (x.astype(np.int16) + y).astype(np.int8)
    assert inner_product(center, center) == 48
    ips = X.float_vectors() @ center.astype(np.float32)
    members = np.flatnonzero(ips >= 16).astype(np.int64)
    return IndependentBall(center=center, x_id=x_id, y_id=y_id, member_ids=members)


def min_pairwise_ip(vectors: np.ndarray, block: int = 2048) -> int:
    """Exact minimum off-diagonal inner product over all pairs."""
    Xf = vectors.astype(np.float32)
    best = 32
    for s in range(0, len(Xf), block):
        ips = (Xf[s:s + block] @ Xf.T).astype(np.int32)
        n = ips.shape[0]
        ips[np.arange(n), np.arange(s, s + n)] = 32
        best = min(best, int(ips.min()))
    return best


def iter_ball_candidates(X: VectorSet, per_vector: int = 1) -> Iterator[tuple[int, int]]:
    """Pairs (x, y), x < y, with inner product -8, lazily in canonical
    order, yielding at most per_vector pairs for each x."""
    Xf = X.float_vectors()
    for x_id in range(len(X)):
        ips = Xf @ Xf[x_id]
        ys = np.flatnonzero(ips == -8)
        n = 0
        for y_id in ys[ys > x_id][:per_vector]:
            yield x_id, int(y_id)
            n += 1
            if n >= per_vector:
                break


def peel(G: ConflictGraph, k: int, pool_size: int = 64,
         source: VectorSet | None = None) -> tuple[list[IndependentBall], ConflictGraph]:
    """Greedily remove up to k disjoint independent ball sets from G.

    Candidate centers come from the first pool_size inner-product--8 pairs
    in canonical order (one per base vector); each step keeps the
    candidate covering the most not-yet-removed vertices (ties to the
    earliest candidate) and stops early once no candidate adds coverage.
    Returns the chosen sets (vertex ids of G) and the residual graph on
    the uncovered vertices.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    X = source if source is not None else VectorSet(
        vectors=G.vectors, shape_tags=np.zeros(len(G.vectors), np.uint8),
        dimension=0, label="graph")
    if k == 0:
        return [], G
    candidates = []
    for pair in iter_ball_candidates(X):
        candidates.append(independent_ball(X, *pair))
        if len(candidates) >= pool_size:
            break
    covered = np.zeros(G.vertex_count, dtype=bool)
    chosen: list[IndependentBall] = []
    for _ in range(k):
        best_gain = 0
        best_ball = None
        for ball in candidates:
            gain = int((~covered[ball.member_ids]).sum())
            if gain > best_gain:
                best_gain = gain
                best_ball = ball
        if best_ball is None:
            break
        members = best_ball.member_ids[~covered[best_ball.member_ids]]
        chosen.append(IndependentBall(center=best_ball.center,
                                      x_id=best_ball.x_id, y_id=best_ball.y_id,
                                      member_ids=members))
        covered[members] = True
    residual = G.subgraph(np.flatnonzero(~covered))
    return chosen, residual


def export_dimacs(G: ConflictGraph, sink: TextIO) -> None:
    """DIMACS text: `p edge V E` then one `e u v` line per edge, 1-based,
    u < v, sorted."""
    sink.write(f"p edge {G.vertex_count} {G.edge_count}\n")
    for u, v in G.iter_edges():
        sink.write(f"e {u + 1} {v + 1}\n")


def read_dimacs(src: TextIO) -> tuple[int, set[tuple[int, int]]]:
    """Parse a DIMACS edge file into a vertex count and a set of 0-based
    (u, v) pairs with u < v."""
    vertex_count = 0
    edges: set[tuple[int, int]] = set()
    for line in src:
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            vertex_count = int(parts[2])
        elif parts[0] == "e":
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if u > v:
                u, v = v, u
            edges.add((u, v))
    return vertex_count, edges
