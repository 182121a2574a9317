"""Single-source shortest paths.

:func:`sssp` is a binary-heap Dijkstra with lazy deletion (stale heap entries
are skipped when popped) and a breadth-first fast path for unit weights.
:func:`distance_rows` runs many sources at once, either through :func:`sssp`
or through ``scipy.sparse.csgraph.dijkstra``; both produce the same arrays.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush

import numpy as np
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .graph import Graph

__all__ = ["DistanceVector", "sssp", "eccentricity", "distance_rows", "BACKENDS"]

INF = math.inf
BACKENDS = ("heap", "scipy")


@dataclass(frozen=True, eq=False)
class DistanceVector:
    source: int
    dist: np.ndarray

    def __post_init__(self):
        self.dist.flags.writeable = False

    def __len__(self):
        return len(self.dist)

    def __getitem__(self, v):
        return self.dist[v]

    def __eq__(self, other):
        if not isinstance(other, DistanceVector):
            return NotImplemented
        return self.source == other.source and np.array_equal(self.dist, other.dist)

    def tolist(self):
        return self.dist.tolist()


def _check_source(g, source):
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range for n={g.n}")


def _bfs(adj, n, source):
    dist = [INF] * n
    dist[source] = 0.0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1.0
        for v, _ in adj[u]:
            if dist[v] == INF:
                dist[v] = du
                queue.append(v)
    return dist


def _dijkstra(adj, n, source):
    """Return ``(dist, settle_order)``; each vertex is settled at most once."""
    dist = [INF] * n
    dist[source] = 0.0
    done = bytearray(n)
    order = []
    heap = [(0.0, source)]
    while heap:
        d, u = heappop(heap)
        if done[u]:
            continue
        done[u] = 1
        order.append(u)
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heappush(heap, (nd, v))
    return dist, order


def sssp(g: Graph, source: int, use_bfs: bool = True) -> DistanceVector:
    """Shortest-path distances from ``source`` to every vertex.

    Unreachable vertices get ``math.inf``.  Unit-weight graphs are routed
    through breadth-first search unless ``use_bfs`` is false.
    """
    _check_source(g, source)
    if use_bfs and g.unit_weights:
        dist = _bfs(g.adjacency, g.n, source)
    else:
        dist, _ = _dijkstra(g.adjacency, g.n, source)
    return DistanceVector(source, np.array(dist, dtype=np.float64))


def eccentricity(dv: DistanceVector) -> float:
    """Largest distance from the source; raises if anything is unreachable."""
    if len(dv) == 0:
        raise ValueError("empty distance vector")
    ecc = float(np.max(dv.dist))
    if ecc == INF:
        raise ValueError(f"vertex unreachable from source {dv.source}; graph is disconnected")
    return ecc


def distance_rows(g: Graph, sources, backend: str = "scipy") -> np.ndarray:
    """Distances from each of ``sources`` as a ``(len(sources), n)`` array.

    Row ``i`` holds the distances from ``sources[i]``; repeated sources are
    repeated rows.
    """
    sources = np.asarray(sources, dtype=np.int64).reshape(-1)
    for s in sources:
        _check_source(g, int(s))
    if backend == "heap":
        out = np.empty((len(sources), g.n))
        for i, s in enumerate(sources):
            out[i] = sssp(g, int(s)).dist
        return out
    if backend == "scipy":
        if len(sources) == 0:
            return np.empty((0, g.n))
        # both arc directions are already in the matrix
        return _csgraph_dijkstra(g.to_csr(), directed=True, indices=sources)
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
