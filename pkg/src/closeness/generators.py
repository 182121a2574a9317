"""Deterministic and seeded graph families.

Every generator output is connected.  Random families are pure functions of
their :class:`GeneratorSpec`, seed included.

Specs can be written as short strings, e.g. ``"path:3"``, ``"tree:2,4"``,
``"er:2000,0.004"`` or ``"ws:100,6,0.1"``; see :func:`parse_spec`.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GenerationError, ParameterError
from .graph import Graph

__all__ = ["GeneratorSpec", "generate", "generate_info", "parse_spec", "FAMILIES"]

log = logging.getLogger(__name__)

FAMILIES = ("path", "cycle", "star", "complete", "balanced-tree", "erdos-renyi",
            "watts-strogatz")
_ALIASES = {"tree": "balanced-tree", "er": "erdos-renyi", "gnp": "erdos-renyi",
            "ws": "watts-strogatz"}
_RANDOM = {"erdos-renyi", "watts-strogatz"}
_ARITY = {"path": 1, "cycle": 1, "star": 1, "complete": 1, "balanced-tree": 2,
          "erdos-renyi": 2, "watts-strogatz": 3}


@dataclass(frozen=True)
class GeneratorSpec:
    """A graph family, its parameters, a seed and a weight model.

    ``weights`` is ``"unit"`` or ``("uniform", lo, hi)`` with ``0 < lo <= hi``.
    """

    family: str
    params: tuple
    seed: Optional[int] = None
    weights: object = "unit"
    max_tries: int = 1000

    def __post_init__(self):
        family = _ALIASES.get(self.family, self.family)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", tuple(self.params))
        if family not in FAMILIES:
            raise ParameterError(f"unknown graph family {self.family!r}")
        if len(self.params) != _ARITY[family]:
            raise ParameterError(f"{family} takes {_ARITY[family]} parameter(s)")
        self._validate()

    def _validate(self):
        f, p = self.family, self.params
        if f in ("path", "complete", "star") and p[0] < 1:
            raise ParameterError(f"{f} needs at least one vertex")
        if f == "cycle" and p[0] < 3:
            raise ParameterError("cycle needs at least three vertices")
        if f == "balanced-tree" and (p[0] < 2 or p[1] < 0):
            raise ParameterError("balanced-tree needs arity >= 2 and depth >= 0")
        if f == "erdos-renyi" and (p[0] < 1 or not 0 <= p[1] <= 1):
            raise ParameterError("erdos-renyi needs n >= 1 and p in [0, 1]")
        if f == "watts-strogatz":
            n, degree, beta = p
            if degree < 2 or degree % 2 or degree >= n:
                raise ParameterError("watts-strogatz degree must be even, >= 2 and < n")
            if not 0 <= beta <= 1:
                raise ParameterError("watts-strogatz rewiring probability must be in [0, 1]")
        if self.weights != "unit":
            kind, lo, hi = self.weights
            if kind != "uniform" or not 0 < lo <= hi:
                raise ParameterError("weights must be 'unit' or ('uniform', lo, hi) with 0 < lo <= hi")
        needs_seed = f in _RANDOM or self.weights != "unit"
        if needs_seed and self.seed is None:
            raise ParameterError(f"{f} with these weights needs a seed")

    def label(self) -> str:
        text = f"{self.family}:{','.join(str(x) for x in self.params)}"
        if self.weights != "unit":
            text += f"/uniform:{self.weights[1]},{self.weights[2]}"
        return text


def _number(tok):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def parse_spec(text: str, seed: Optional[int] = None, weights=None) -> GeneratorSpec:
    """Parse ``family:p1,p2[/uniform:lo,hi]`` into a :class:`GeneratorSpec`."""
    text = text.strip()
    weight_part = None
    if "/" in text:
        text, weight_part = text.split("/", 1)
    family, _, rest = text.partition(":")
    try:
        params = tuple(_number(t) for t in rest.split(",")) if rest else ()
    except ValueError:
        raise ParameterError(f"bad generator parameters in {text!r}") from None
    if weight_part is not None:
        weights = parse_weights(weight_part)
    return GeneratorSpec(family, params, seed=seed, weights=weights or "unit")


def parse_weights(text: str):
    if text == "unit":
        return "unit"
    kind, _, rest = text.partition(":")
    try:
        lo, hi = (float(t) for t in rest.split(","))
    except ValueError:
        raise ParameterError(f"bad weight model {text!r}") from None
    return (kind, lo, hi)


def _path(n):
    return n, [(i, i + 1) for i in range(n - 1)]


def _cycle(n):
    return n, [(i, (i + 1) % n) for i in range(n)]


def _star(n):
    return n, [(0, i) for i in range(1, n)]


def _complete(n):
    return n, [(i, j) for i in range(n) for j in range(i + 1, n)]


def _balanced_tree(arity, depth):
    n = sum(arity ** d for d in range(depth + 1))
    return n, [((i - 1) // arity, i) for i in range(1, n)]


def _connected(n, edges):
    nbrs = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = bytearray(n)
    seen[0] = 1
    queue = deque([0])
    count = 1
    while queue:
        for v in nbrs[queue.popleft()]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                queue.append(v)
    return count == n


def _pair_of(index):
    """Map linear indices onto pairs ``(j, i)`` with ``j < i``, enumerated row by row."""
    index = np.asarray(index, dtype=np.int64)
    i = ((1 + np.sqrt(1 + 8 * index.astype(np.float64))) // 2).astype(np.int64)
    # float sqrt can land one off near perfect squares
    i -= (i * (i - 1) // 2) > index
    i += ((i + 1) * i // 2) <= index
    j = index - i * (i - 1) // 2
    return j, i


def _erdos_renyi(n, p, rng, max_tries):
    """G(n, p): a binomial edge count, then a uniform subset of that many pairs."""
    pairs = n * (n - 1) // 2
    for attempt in range(max_tries):
        m = int(rng.binomial(pairs, p))
        picked = np.sort(rng.choice(pairs, size=m, replace=False))
        lo, hi = _pair_of(picked)
        edges = list(zip(lo.tolist(), hi.tolist()))
        if _connected(n, edges):
            return n, edges, attempt
    raise GenerationError(
        f"erdos-renyi({n}, {p}) still disconnected after {max_tries} tries")


def _reaches(adj, src, dst):
    seen = {src}
    queue = deque([src])
    while queue:
        for v in adj[queue.popleft()]:
            if v == dst:
                return True
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def _watts_strogatz(n, degree, beta, rng, max_tries):
    """Ring lattice, then rewire each lattice edge ``(u, u+j)`` with probability ``beta``.

    A rewire that would disconnect the graph is undone and redrawn; after
    ``max_tries`` rejected targets the original edge is kept.
    """
    half = degree // 2
    adj = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, half + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    rejected = 0
    for j in range(1, half + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= beta or v not in adj[u] or len(adj[u]) >= n - 1:
                continue
            for _ in range(max_tries):
                w = int(rng.integers(n))
                if w == u or w in adj[u]:
                    continue
                adj[u].discard(v)
                adj[v].discard(u)
                adj[u].add(w)
                adj[w].add(u)
                # the graph was connected, so it still is iff v can reach u
                if _reaches(adj, v, u):
                    break
                adj[u].discard(w)
                adj[w].discard(u)
                adj[u].add(v)
                adj[v].add(u)
                rejected += 1
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return n, edges, rejected


def generate_info(spec: GeneratorSpec):
    """Build the graph; returns ``(graph, info)`` with retry/rejection counts."""
    rng = np.random.Generator(np.random.PCG64(spec.seed)) if spec.seed is not None else None
    f, p = spec.family, spec.params
    info = {"family": f, "params": list(p), "seed": spec.seed}
    if f == "path":
        n, edges = _path(p[0])
    elif f == "cycle":
        n, edges = _cycle(p[0])
    elif f == "star":
        n, edges = _star(p[0])
    elif f == "complete":
        n, edges = _complete(p[0])
    elif f == "balanced-tree":
        n, edges = _balanced_tree(*p)
    elif f == "erdos-renyi":
        n, edges, info["retries"] = _erdos_renyi(p[0], p[1], rng, spec.max_tries)
    else:
        n, edges, info["rejected_rewires"] = _watts_strogatz(*p, rng, spec.max_tries)

    edges.sort()
    if spec.weights == "unit":
        weighted = [(u, v, 1.0) for u, v in edges]
    else:
        _, lo, hi = spec.weights
        draws = rng.uniform(lo, hi, size=len(edges))
        weighted = [(u, v, float(w)) for (u, v), w in zip(edges, draws)]
    g = Graph.from_edges(n, weighted)
    log.debug("generated %s: n=%d m=%d %s", spec.label(), g.n, g.m, info)
    return g, info


def generate(spec: GeneratorSpec) -> Graph:
    return generate_info(spec)[0]
