"""Undirected simple graphs with dense vertex ids and BFS machinery."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import GraphError


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Edges keep the order they were given in; that order fixes the order of
    every adjacency list, which in turn fixes how the embedder assigns
    coordinates to the neighbours of its root.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray, *, require_connected: bool = True):
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GraphError("edges must be pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphError(f"edge endpoint out of range 0..{n - 1}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if np.any(lo == hi):
            k = int(np.flatnonzero(lo == hi)[0])
            raise GraphError(f"self-loop at vertex {int(lo[k])}")
        keys = lo * n + hi
        uniq, counts = np.unique(keys, return_counts=True)
        if np.any(counts > 1):
            key = int(uniq[np.flatnonzero(counts > 1)[0]])
            raise GraphError(f"duplicate edge {key // n} {key % n}")
        self.n = n
        self.edges = np.stack([lo, hi], axis=1)
        self.edges.setflags(write=False)
        if require_connected and not self.is_connected():
            raise GraphError("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        mat = coo_matrix(
            (np.ones(self.m, dtype=np.int8), (self.edges[:, 0], self.edges[:, 1])),
            shape=(self.n, self.n),
        )
        count, _ = connected_components(mat, directed=False)
        return count == 1

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)``: neighbours of ``v`` are ``indices[indptr[v]:indptr[v+1]]``.

        Same order as :attr:`adj`.
        """
        m = self.m
        src = np.empty(2 * m, dtype=np.int64)
        dst = np.empty(2 * m, dtype=np.int64)
        src[0::2], dst[0::2] = self.edges[:, 0], self.edges[:, 1]
        src[1::2], dst[1::2] = self.edges[:, 1], self.edges[:, 0]
        order = np.argsort(src, kind="stable")
        indices = dst[order].astype(np.int32 if self.n < 2**31 else np.int64)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=self.n), out=indptr[1:])
        indices.setflags(write=False)
        indptr.setflags(write=False)
        return indptr, indices

    @cached_property
    def adj(self) -> list[list[int]]:
        """Neighbour lists, each in order of edge appearance."""
        indptr, indices = self.csr
        flat = indices.tolist()
        bounds = indptr.tolist()
        return [flat[bounds[v]:bounds[v + 1]] for v in range(self.n)]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def edge_set(self) -> set[tuple[int, int]]:
        return set(map(tuple, self.edges.tolist()))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabeled(self, perm: Sequence[int], edge_order: Sequence[int] | None = None) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``, edges optionally reordered."""
        p = np.asarray(perm, dtype=np.int64)
        edges = p[self.edges]
        if edge_order is not None:
            edges = edges[np.asarray(edge_order, dtype=np.int64)]
        return Graph(self.n, edges, require_connected=False)

    def without_edge(self, u: int, v: int) -> Graph:
        a, b = min(u, v), max(u, v)
        keep = ~((self.edges[:, 0] == a) & (self.edges[:, 1] == b))
        if keep.all():
            raise GraphError(f"no edge {a} {b}")
        return Graph(self.n, self.edges[keep], require_connected=False)


@dataclass(frozen=True)
class DistanceField:
    root: int
    dist: list[int]

    def levels(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(self.dist) + 1)]
        for v, d in enumerate(self.dist):
            out[d].append(v)
        return out


def bfs(g: Graph, root: int) -> DistanceField:
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range")
    adj = g.adj
    dist = [-1] * g.n
    dist[root] = 0
    frontier = [root]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for z in adj[v]:
                if dist[z] < 0:
                    dist[z] = d
                    nxt.append(z)
        frontier = nxt
    if -1 in dist:
        raise GraphError(f"graph is not connected: vertex {dist.index(-1)} unreachable from {root}")
    return DistanceField(root, dist)


def down_neighbors(g: Graph, d: DistanceField, v: int) -> set[int]:
    """Neighbours of ``v`` one BFS level closer to the root of ``d``."""
    dv = d.dist[v]
    return {z for z in g.adj[v] if d.dist[z] == dv - 1}


def max_degree_vertex(g: Graph) -> tuple[int, int]:
    """Vertex of maximum degree (smallest id among ties) and that degree."""
    v = int(np.argmax(g.degrees))
    return v, int(g.degrees[v])
