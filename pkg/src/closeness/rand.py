"""Sampled closeness centrality.

Pick ``k`` source vertices uniformly at random with replacement, run SSSP
from each, and estimate the inverse centrality of every vertex ``u`` by

    1 / c_u  ~=  n / (k (n - 1)) * sum_i d(v_i, u)

which is an unbiased estimate of ``sum_j d(j, u) / (n - 1)`` for any ``k``.
Each term ``n d(v_i, u) / (n - 1)`` lies in ``[0, n D / (n - 1)]`` with ``D``
the diameter, so Hoeffding's inequality with additive error ``eps * D`` gives

    P(|error| >= eps * D) <= 2 exp(-2 k eps^2 ((n - 1) / n)^2)

per vertex.  The diameter cancels, and :func:`sample_size` returns the
smallest ``k`` that pushes this below the requested failure probability.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ParameterError
from .exact import _unreachable, require_connected
from .graph import Graph
from .paths import distance_rows, sssp
from .report import CentralityReport

__all__ = [
    "SamplePlan",
    "SampleTrace",
    "RNG_FAMILY",
    "failure_bound",
    "sample_size",
    "draw_sources",
    "estimate_centrality",
    "estimate_with_plan",
]

RNG_FAMILY = "numpy.random.PCG64"

# below this size the pure-Python heap beats scipy's per-call overhead
_SMALL_GRAPH = 128


def failure_bound(k: int, epsilon: float, n: int) -> float:
    """Per-vertex probability bound that an estimate misses by ``epsilon * D`` or more."""
    return 2.0 * math.exp(-2.0 * k * epsilon ** 2 * ((n - 1) / n) ** 2)


@dataclass(frozen=True)
class SamplePlan:
    k: int
    epsilon: float
    delta_vertex: float
    delta_graph: float
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("k must be at least 1")
        if not self.epsilon > 0:
            raise ParameterError("epsilon must be positive")
        if not 0 < self.delta_vertex <= 1:
            raise ParameterError("delta_vertex must lie in (0, 1]")

    def as_dict(self):
        return {"k": self.k, "epsilon": self.epsilon, "delta_vertex": self.delta_vertex,
                "delta_graph": self.delta_graph, "n": self.n}


def sample_size(n: int, epsilon: float, delta_vertex: Optional[float] = None) -> SamplePlan:
    """Smallest ``k`` with ``failure_bound(k, epsilon, n) <= delta_vertex``.

    ``delta_vertex`` defaults to ``1 / n**2``; a union bound over all vertices
    then gives a graph-wide failure probability of at most ``1 / n``.

    >>> sample_size(1000, 0.1, 1e-6).k
    727
    """
    if n < 2:
        raise ParameterError("n must be at least 2")
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise ParameterError("epsilon must be a positive finite number")
    if delta_vertex is None:
        delta_vertex = 1.0 / n ** 2
    if not 0 < delta_vertex < 1:
        raise ParameterError("delta_vertex must lie in (0, 1)")

    rate = 2.0 * epsilon ** 2 * ((n - 1) / n) ** 2
    k = max(1, math.ceil(math.log(2.0 / delta_vertex) / rate))
    # settle rounding at the boundary against the bound as actually evaluated
    while k > 1 and failure_bound(k - 1, epsilon, n) <= delta_vertex:
        k -= 1
    while failure_bound(k, epsilon, n) > delta_vertex:
        k += 1
    return SamplePlan(k=k, epsilon=epsilon, delta_vertex=delta_vertex,
                      delta_graph=min(1.0, n * delta_vertex), n=n)


@dataclass(frozen=True)
class SampleTrace:
    """How a sampled estimate was produced, sufficient to replay it."""

    seed: Optional[int]
    sources: tuple
    elapsed: tuple
    flagged: tuple = ()
    rng: str = RNG_FAMILY
    injected: bool = False

    @property
    def k(self):
        return len(self.sources)


def draw_sources(n: int, k: int, seed: int) -> list[int]:
    """``k`` i.i.d. uniform vertex ids; one generator draw per iteration, in order."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return [int(rng.integers(n)) for _ in range(k)]


def _fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy)


def _pick_backend(g, backend):
    if backend == "auto":
        return "heap" if g.n < _SMALL_GRAPH else "scipy"
    return backend


def estimate_centrality(g: Graph, k: Optional[int] = None, seed: Optional[int] = None, *,
                        sources: Optional[Sequence[int]] = None,
                        backend: str = "auto"):
    """Sampled closeness centrality of every vertex.

    Returns ``(report, trace)``.  ``report.values[u]`` is
    ``k (n - 1) / (n * sum_i d(v_i, u))``; if every sampled source was ``u``
    itself the sum is zero, the value is ``inf`` and ``u`` is listed in
    ``trace.flagged``.

    ``sources`` replaces random sampling with an explicit source list and is
    meant for tests; ``k`` is then taken from its length.  Without it, a
    missing ``seed`` is drawn from OS entropy and recorded in the trace.
    """
    n = g.n
    if n < 2:
        raise ParameterError("centrality needs at least two vertices")
    injected = sources is not None
    if injected:
        sources = [int(s) for s in sources]
        if k is not None and k != len(sources):
            raise ParameterError("k disagrees with the length of the injected source list")
        k = len(sources)
        if any(not 0 <= s < n for s in sources):
            raise ParameterError("injected source out of range")
    if k is None or k < 1:
        raise ParameterError("k must be at least 1")
    require_connected(g)

    if not injected:
        if seed is None:
            seed = _fresh_seed()
        sources = draw_sources(n, k, seed)

    backend = _pick_backend(g, backend)
    t0 = time.perf_counter()
    totals = np.zeros(n)
    elapsed = []
    for s in sources:
        ts = time.perf_counter()
        if backend == "heap":
            row = sssp(g, s).dist
        else:
            row = distance_rows(g, [s], backend=backend)[0]
        if np.isinf(row).any():
            raise _unreachable(g, row, s)
        totals += row
        elapsed.append(time.perf_counter() - ts)
    total_time = time.perf_counter() - t0

    inverse = (n * totals) / (k * (n - 1))
    zero = totals == 0
    values = np.full(n, math.inf)
    np.divide(k * (n - 1), n * totals, out=values, where=~zero)
    flagged = tuple(int(u) for u in np.flatnonzero(zero))

    report = CentralityReport(values=values, inverse=inverse, method="sampled", k=k,
                              seed=None if injected else seed, elapsed=total_time,
                              flagged=flagged)
    trace = SampleTrace(seed=None if injected else seed, sources=tuple(sources),
                        elapsed=tuple(elapsed), flagged=flagged, injected=injected)
    return report, trace


def estimate_with_plan(g: Graph, epsilon: float, delta_vertex: Optional[float] = None,
                       seed: Optional[int] = None, backend: str = "auto"):
    """Size the sample with :func:`sample_size`, then estimate.

    Returns ``(report, plan, trace)``; the plan is also stored in
    ``report.meta["plan"]``.
    """
    plan = sample_size(g.n, epsilon, delta_vertex)
    report, trace = estimate_centrality(g, plan.k, seed, backend=backend)
    report.meta["plan"] = plan.as_dict()
    return report, plan, trace
