"""Immutable weighted graphs and the plain-text edge-list format.

Vertices are dense integer ids ``0..n-1``.  An edge list is a sequence of
``u v [w]`` lines; ``#`` starts a comment and blank lines are skipped::

    >>> import io
    >>> g = load_edge_list(io.StringIO("0 1\\n1 2 2.5\\n"))
    >>> g.n, g.m
    (3, 2)
    >>> print(dumps(g), end="")
    0 1 1.0
    1 2 2.5
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

import numpy as np
import scipy.sparse as sp

from .errors import GraphFormatError

__all__ = [
    "Graph",
    "ConnectivityCertificate",
    "check_connected",
    "load_edge_list",
    "loads",
    "dump",
    "dumps",
]


class Graph:
    """Weighted graph with adjacency lists, frozen after construction.

    Use :meth:`from_edges` rather than calling the constructor directly; it
    validates weights, drops self-loops and collapses duplicate edges to the
    minimum weight.  Undirected edges are stored once per endpoint.
    """

    __slots__ = ("_n", "_adj", "_directed", "_m", "_labels", "_self_loops_dropped",
                 "_unit", "_csr")

    def __init__(self, n, adj, directed=False, labels=None, self_loops_dropped=0):
        self._n = n
        self._adj = adj
        self._directed = directed
        self._labels = labels
        self._self_loops_dropped = self_loops_dropped
        arcs = sum(len(row) for row in adj)
        self._m = arcs if directed else arcs // 2
        self._unit = all(w == 1.0 for row in adj for _, w in row)
        self._csr = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple], directed: bool = False,
                   labels: Optional[Iterable[str]] = None) -> "Graph":
        """Build a graph from ``(u, v)`` or ``(u, v, w)`` tuples."""
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        best: dict[tuple[int, int], float] = {}
        loops = 0
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            _check_weight(w)
            if u == v:
                loops += 1
                continue
            key = (u, v) if directed or u < v else (v, u)
            old = best.get(key)
            if old is None or w < old:
                best[key] = w

        rows: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for (u, v), w in best.items():
            rows[u].append((v, w))
            if not directed:
                rows[v].append((u, w))
        adj = tuple(tuple(sorted(row)) for row in rows)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("label table must have one entry per vertex")
        return cls(n, adj, directed=directed, labels=labels, self_loops_dropped=loops)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        """Number of edges (undirected edges counted once)."""
        return self._m

    @property
    def directed(self) -> bool:
        return self._directed

    @property
    def labels(self):
        return self._labels

    @property
    def self_loops_dropped(self) -> int:
        return self._self_loops_dropped

    @property
    def unit_weights(self) -> bool:
        return self._unit

    def neighbors(self, u: int) -> tuple:
        """Outgoing ``(v, w)`` pairs of ``u``, sorted by ``v``."""
        return self._adj[u]

    @property
    def adjacency(self) -> tuple:
        return self._adj

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield ``(u, v, w)`` in sorted order; undirected edges once with ``u < v``."""
        for u, row in enumerate(self._adj):
            for v, w in row:
                if self._directed or u < v:
                    yield u, v, w

    def label_of(self, u: int) -> str:
        return self._labels[u] if self._labels is not None else str(u)

    def to_csr(self) -> sp.csr_matrix:
        """Adjacency as a CSR matrix holding both arc directions for undirected graphs.

        Explicit zeros are kept, so zero-weight edges remain edges.
        """
        if self._csr is None:
            indptr = np.zeros(self._n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(row) for row in self._adj])
            indices = np.fromiter((v for row in self._adj for v, _ in row),
                                  dtype=np.int32, count=int(indptr[-1]))
            data = np.fromiter((w for row in self._adj for _, w in row),
                               dtype=np.float64, count=int(indptr[-1]))
            self._csr = sp.csr_matrix((data, indices, indptr), shape=(self._n, self._n))
        return self._csr

    def relabel(self, perm) -> "Graph":
        """Return the graph with vertex ``u`` renamed to ``perm[u]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self._n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return Graph.from_edges(
            self._n, ((perm[u], perm[v], w) for u, v, w in self.edges()),
            directed=self._directed)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._n == other._n and self._directed == other._directed
                and self._adj == other._adj)

    def __hash__(self):
        return hash((self._n, self._directed, self._adj))

    def __repr__(self):
        kind = "directed" if self._directed else "undirected"
        return f"Graph(n={self._n}, m={self._m}, {kind})"


def _check_weight(w, lineno=None):
    if not math.isfinite(w):
        raise GraphFormatError(f"non-finite weight {w!r}", lineno)
    if w < 0:
        raise GraphFormatError(f"negative weight {w!r}", lineno)


@dataclass(frozen=True)
class ConnectivityCertificate:
    connected: bool
    witness: Optional[int] = None

    def __post_init__(self):
        if self.connected != (self.witness is None):
            raise ValueError("witness must be present iff the graph is disconnected")

    def __bool__(self):
        return self.connected


def check_connected(g: Graph) -> ConnectivityCertificate:
    """Check that every vertex is reachable from vertex 0.

    Edge direction is ignored, so for directed graphs this is only weak
    connectivity; reachability along arcs is verified where distances are
    actually computed.
    """
    if g.n <= 1:
        return ConnectivityCertificate(True)
    if g.directed:
        undirected = [set() for _ in range(g.n)]
        for u, v, _ in g.edges():
            undirected[u].add(v)
            undirected[v].add(u)
        nbrs = undirected
    else:
        nbrs = [[v for v, _ in row] for row in g.adjacency]

    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = 1
                queue.append(v)
    missing = seen.find(0)
    if missing == -1:
        return ConnectivityCertificate(True)
    return ConnectivityCertificate(False, missing)


def load_edge_list(stream: TextIO, directed: bool = False,
                   labeled: bool = False) -> Graph:
    """Parse an edge list from a text stream.

    With ``labeled=True`` the endpoint tokens are arbitrary strings, numbered
    in order of first appearance; the resulting graph carries the label table.
    Otherwise tokens must be non-negative integers and ``n`` is one more than
    the largest id seen.
    """
    edges = []
    ids: dict[str, int] = {}
    max_id = -1
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphFormatError(f"expected 'u v [w]', got {line!r}", lineno)
        if labeled:
            u, v = (ids.setdefault(tok, len(ids)) for tok in parts[:2])
        else:
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"vertex ids must be integers: {line!r}", lineno) from None
            if u < 0 or v < 0:
                raise GraphFormatError(f"negative vertex id: {line!r}", lineno)
            max_id = max(max_id, u, v)
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"bad weight {parts[2]!r}", lineno) from None
            _check_weight(w, lineno)
        edges.append((u, v, w))

    if labeled:
        return Graph.from_edges(len(ids), edges, directed=directed, labels=list(ids))
    return Graph.from_edges(max_id + 1, edges, directed=directed)


def loads(text: str, directed: bool = False, labeled: bool = False) -> Graph:
    return load_edge_list(text.splitlines(), directed=directed, labeled=labeled)


def dump(g: Graph, stream: TextIO) -> None:
    """Write sorted ``u v w`` lines; weights use the shortest round-trip repr."""
    for u, v, w in g.edges():
        stream.write(f"{u} {v} {w!r}\n")


def dumps(g: Graph) -> str:
    return "".join(f"{u} {v} {w!r}\n" for u, v, w in g.edges())
