"""Empirical checks of the sampled estimator: error audits and timing benchmarks."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ParameterError
from .exact import exact_all
from .generators import GeneratorSpec, generate
from .graph import Graph
from .rand import estimate_centrality, sample_size

__all__ = ["TrialRecord", "ErrorAudit", "BenchRecord", "trial_seed", "binomial_allowance",
           "run_audit", "run_bench"]

log = logging.getLogger(__name__)


def trial_seed(seed: int, trial: int) -> int:
    """Independent 64-bit seed for one audit trial, derived from ``(seed, trial)``."""
    state = np.random.SeedSequence([seed, trial]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def binomial_allowance(trials: int, p: float) -> float:
    """Largest violation count still consistent with failure rate ``p``.

    Mean plus three binomial standard deviations.
    """
    return trials * p + 3.0 * math.sqrt(trials * p * (1.0 - p))


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    k: int
    max_error: float
    budget: float
    violated: bool
    # max_u |c_u / c_hat_u - 1|, i.e. inverse-centrality error relative to 1/c_u
    max_rel_error: float
    # max_u |c_hat_u - c_u| / c_u; inf when some estimate is inf
    max_rel_centrality_error: float


@dataclass
class ErrorAudit:
    n: int
    m: int
    diameter: float
    epsilon: float
    budget: float
    k: int
    delta_vertex: float
    delta_graph: float
    c_max: float
    seed: int
    records: list = field(default_factory=list)

    @property
    def trials(self):
        return len(self.records)

    @property
    def violations(self):
        return sum(r.violated for r in self.records)

    @property
    def violation_fraction(self):
        return self.violations / self.trials if self.records else 0.0

    @property
    def allowed(self):
        return binomial_allowance(self.trials, self.delta_graph)

    @property
    def passed(self):
        return self.violations <= self.allowed

    @property
    def max_rel_error(self):
        return max((r.max_rel_error for r in self.records), default=0.0)

    def to_dict(self):
        return {
            "graph": {"n": self.n, "m": self.m, "diameter": self.diameter},
            "epsilon": self.epsilon,
            "budget": self.budget,
            "k": self.k,
            "seed": self.seed,
            "delta_vertex": self.delta_vertex,
            "delta_graph": self.delta_graph,
            "c_max": self.c_max,
            "aggregate": {
                "trials": self.trials,
                "violations": self.violations,
                "violation_fraction": self.violation_fraction,
                "allowed_violations": self.allowed,
                "passed": self.passed,
                "max_rel_error": self.max_rel_error,
                "rel_error_bound": self.epsilon * self.diameter * self.c_max,
            },
            "trials": [asdict(r) for r in self.records],
        }

    def to_json(self):
        def clean(x):
            if isinstance(x, float) and not math.isfinite(x):
                return None
            if isinstance(x, dict):
                return {k: clean(v) for k, v in x.items()}
            if isinstance(x, list):
                return [clean(v) for v in x]
            return x
        return json.dumps(clean(self.to_dict()), indent=2, allow_nan=False) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        names = list(TrialRecord.__dataclass_fields__)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for r in self.records:
            writer.writerow([repr(v) if isinstance(v, float) else v
                             for v in (getattr(r, name) for name in names)])
        return buf.getvalue()


def run_audit(g: Graph, epsilon: float, trials: int, seed: int, *,
              k: Optional[int] = None, delta_vertex: Optional[float] = None,
              cap: int = 5000, backend: str = "auto") -> ErrorAudit:
    """Compare ``trials`` independent estimates with the exact inverse centralities.

    A trial is a violation when some vertex misses its exact inverse
    centrality by more than ``epsilon * diameter``.  ``k`` defaults to
    ``sample_size(n, epsilon, delta_vertex).k``; passing it explicitly keeps
    the plan's ``delta_graph`` as the target but changes the sample count.
    """
    if trials < 1:
        raise ParameterError("trials must be at least 1")
    if g.n > cap:
        raise ParameterError(f"graph has {g.n} vertices, above the exact-oracle cap of {cap}")
    plan = sample_size(g.n, epsilon, delta_vertex)
    if k is None:
        k = plan.k
    elif k < 1:
        raise ParameterError("k must be at least 1")

    sums, diameter = exact_all(g, backend="scipy")
    n = g.n
    inverse = sums / (n - 1)
    exact = (n - 1) / sums
    budget = epsilon * diameter
    audit = ErrorAudit(n=n, m=g.m, diameter=diameter, epsilon=epsilon, budget=budget,
                       k=k, delta_vertex=plan.delta_vertex, delta_graph=plan.delta_graph,
                       c_max=float(exact.max()), seed=seed)
    for t in range(trials):
        s = trial_seed(seed, t)
        report, _ = estimate_centrality(g, k, s, backend=backend)
        err = np.abs(report.inverse - inverse)
        max_error = float(err.max())
        with np.errstate(invalid="ignore"):
            rel_c = np.abs(report.values - exact) / exact
        audit.records.append(TrialRecord(
            trial=t, seed=s, k=k, max_error=max_error, budget=budget,
            violated=max_error > budget,
            max_rel_error=float((err * exact).max()),
            max_rel_centrality_error=float(rel_c.max()),
        ))
    return audit


@dataclass(frozen=True)
class BenchRecord:
    label: str
    n: int
    m: int
    k: int
    exact_time: float
    approx_time: float

    def __post_init__(self):
        if not (self.exact_time > 0 and self.approx_time > 0):
            raise ValueError("timings must be positive")

    @property
    def speedup(self):
        return self.exact_time / self.approx_time

    @property
    def k_over_n(self):
        return self.k / self.n

    @property
    def exact_cheaper(self):
        return self.k >= self.n


def _median_time(fn, repeats, warmup):
    if warmup:
        fn()
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def run_bench(specs: Sequence[GeneratorSpec], epsilon: float, seed: int, *,
              repeats: int = 3, warmup: bool = True,
              backend: str = "scipy") -> list[BenchRecord]:
    """Time exact against sampled centrality for each generated graph.

    The sample count comes from ``sample_size(n, epsilon)``.  Each timing is
    the median of ``repeats`` runs after one untimed warmup.
    """
    if not specs:
        raise ParameterError("no graph specs to benchmark")
    if repeats < 1:
        raise ParameterError("repeats must be at least 1")
    records = []
    for spec in specs:
        g = generate(spec)
        plan = sample_size(g.n, epsilon)
        exact_t = _median_time(lambda: exact_all(g, backend=backend), repeats, warmup)
        approx_t = _median_time(
            lambda: estimate_centrality(g, plan.k, seed, backend=backend), repeats, warmup)
        rec = BenchRecord(spec.label(), g.n, g.m, plan.k, exact_t, approx_t)
        if rec.exact_cheaper:
            log.warning("%s: k=%d >= n=%d, exact computation is cheaper",
                        rec.label, rec.k, rec.n)
        records.append(rec)
    return records
