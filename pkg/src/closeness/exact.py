"""Exact closeness centrality and diameter from one SSSP run per vertex."""
from __future__ import annotations

import time

import numpy as np

from .errors import DisconnectedGraphError, ParameterError
from .graph import ConnectivityCertificate, Graph, check_connected
from .paths import eccentricity, distance_rows, sssp
from .report import CentralityReport, DiameterInfo

__all__ = ["exact_centrality", "exact_diameter", "exact_all", "diameter_upper_bound",
           "require_connected"]

# cap on the size of one block of distance rows (float64 entries)
_BLOCK_ENTRIES = 4_000_000


def require_connected(g: Graph) -> None:
    cert = check_connected(g)
    if not cert.connected:
        raise DisconnectedGraphError(cert)


def _unreachable(g, row, source):
    witness = int(np.flatnonzero(np.isinf(row))[0])
    cert = ConnectivityCertificate(False, witness)
    return DisconnectedGraphError(
        cert, f"vertex {witness} is unreachable from vertex {source}")


def exact_all(g: Graph, backend: str = "scipy"):
    """Column sums of the full distance matrix and the diameter.

    Returns ``(sums, diameter)`` where ``sums[u]`` is the total distance from
    every vertex to ``u``.  Rows are accumulated block by block in source
    order, so the result does not depend on the block size.
    """
    if g.n < 2:
        raise ParameterError("centrality needs at least two vertices")
    require_connected(g)
    sums = np.zeros(g.n)
    diameter = 0.0
    block = max(1, _BLOCK_ENTRIES // g.n)
    for start in range(0, g.n, block):
        sources = np.arange(start, min(start + block, g.n))
        rows = distance_rows(g, sources, backend=backend)
        bad = np.flatnonzero(np.isinf(rows).any(axis=1))
        if len(bad):
            raise _unreachable(g, rows[bad[0]], int(sources[bad[0]]))
        for row in rows:
            sums += row
        diameter = max(diameter, float(rows.max()))
    return sums, diameter


def _report_from_sums(n, sums, elapsed):
    inverse = sums / (n - 1)
    return CentralityReport(values=(n - 1) / sums, inverse=inverse, method="exact",
                            elapsed=elapsed)


def exact_centrality(g: Graph, backend: str = "scipy") -> CentralityReport:
    """``c_u = (n - 1) / sum_i d(i, u)`` for every vertex ``u``.

    For directed graphs the sum runs over distances *into* ``u``.
    """
    t0 = time.perf_counter()
    sums, _ = exact_all(g, backend=backend)
    return _report_from_sums(g.n, sums, time.perf_counter() - t0)


def exact_diameter(g: Graph, backend: str = "scipy") -> DiameterInfo:
    _, diameter = exact_all(g, backend=backend)
    return DiameterInfo(diameter, diameter, exact=True)


def diameter_upper_bound(g: Graph, probe: int = 0) -> DiameterInfo:
    """Bracket the diameter by ``ecc(probe) <= diameter <= 2 * ecc(probe)``.

    The upper half of the bracket relies on the triangle inequality through
    ``probe`` and so holds for undirected graphs only.
    """
    if g.directed:
        raise ParameterError("the eccentricity bracket needs an undirected graph")
    require_connected(g)
    ecc = eccentricity(sssp(g, probe))
    return DiameterInfo(ecc, 2 * ecc, exact=False)
