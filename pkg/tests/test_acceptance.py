"""Exit criteria.  Run with ``pytest tests/test_acceptance.py -v`` for one line per criterion."""
import math
import random
import subprocess
import sys
import time

import mpmath
import numpy as np
import pytest

from closeness import (Graph, GeneratorSpec, distance_rows, estimate_centrality,
                       exact_centrality, generate, sample_size)
from closeness.audit import run_audit, run_bench, trial_seed
from closeness.rand import failure_bound

from oracles import centrality_from_matrix, floyd_warshall, random_connected_edges

WS_SPEC = GeneratorSpec("watts-strogatz", (500, 6, 0.1), seed=2024)
WS_EPSILON = 0.2
WS_TRIALS = 200


@pytest.fixture(scope="module")
def ws_audit():
    g = generate(WS_SPEC)
    t0 = time.perf_counter()
    audit = run_audit(g, WS_EPSILON, WS_TRIALS, seed=7)
    return audit, time.perf_counter() - t0


@pytest.mark.acceptance(1, "exact centrality equals Floyd-Warshall on 500 small graphs")
def test_oracle_equivalence(record_property):
    rng = random.Random(20240601)
    t0 = time.perf_counter()
    for _ in range(500):
        n = rng.randint(2, 8)
        # weights on a 2**-10 grid in (0, 2]: every path sum is exact
        edges = random_connected_edges(rng, n, extra_p=rng.random())
        g = Graph.from_edges(n, edges)
        fw = floyd_warshall(n, edges)
        assert distance_rows(g, range(n)).tolist() == fw
        got = exact_centrality(g).values
        want = centrality_from_matrix(fw)
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=0)
    elapsed = time.perf_counter() - t0
    record_property("elapsed_s", round(elapsed, 2))
    assert elapsed < 10


@pytest.mark.acceptance(2, "exhaustive source list reproduces exact centrality")
def test_exhaustive_sample_identity():
    t0 = time.perf_counter()
    for spec in (GeneratorSpec("path", (3,)), GeneratorSpec("cycle", (6,)),
                 GeneratorSpec("complete", (4,)), GeneratorSpec("star", (5,))):
        g = generate(spec)
        report, _ = estimate_centrality(g, sources=range(g.n))
        np.testing.assert_allclose(report.values, exact_centrality(g).values, rtol=1e-9)
    assert time.perf_counter() - t0 < 1


@pytest.mark.acceptance(3, "mean of sampled inverse centrality is unbiased (P5, k=1)")
def test_inverse_unbiased(record_property):
    g = generate(GeneratorSpec("path", (5,)))
    exact_inv = exact_centrality(g).inverse
    trials = 20_000
    t0 = time.perf_counter()
    samples = np.empty((trials, g.n))
    for t in range(trials):
        report, _ = estimate_centrality(g, 1, trial_seed(31337, t))
        samples[t] = report.inverse
    elapsed = time.perf_counter() - t0
    mean = samples.mean(axis=0)
    se = samples.std(axis=0, ddof=1) / math.sqrt(trials)
    z = np.abs(mean - exact_inv) / se
    record_property("max_z", round(float(z.max()), 3))
    assert np.all(z < 4)
    assert elapsed < 30


@pytest.mark.acceptance(4, "additive error bound holds on Watts-Strogatz(500, 6, 0.1)")
def test_concentration(ws_audit, record_property):
    audit, elapsed = ws_audit
    assert audit.k == sample_size(500, WS_EPSILON, 1 / 500 ** 2).k
    assert audit.delta_graph == pytest.approx(1 / 500)
    assert audit.trials == WS_TRIALS
    record_property("audit_s", round(elapsed, 1))
    record_property("k", audit.k)
    record_property("violations", audit.violations)
    record_property("allowed", round(audit.allowed, 3))
    record_property("worst_error/budget",
                    round(max(r.max_error for r in audit.records) / audit.budget, 3))
    assert audit.passed
    assert elapsed < 300


def _mp_k(n, eps, delta):
    with mpmath.workdps(60):
        n, eps, delta = (mpmath.mpf(x) for x in (n, eps, delta))
        return int(mpmath.ceil(mpmath.log(2 / delta) / (2 * eps ** 2 * ((n - 1) / n) ** 2)))


@pytest.mark.acceptance(5, "sample-size closed form and minimality invariant")
def test_sample_size_closed_form():
    assert _mp_k(1000, mpmath.mpf("0.1"), mpmath.mpf("1e-6")) == 727
    assert sample_size(1000, 0.1, 1e-6).k == 727

    rng = random.Random(5)
    for _ in range(1000):
        n = int(10 ** rng.uniform(math.log10(2), 7))
        eps = 10 ** rng.uniform(-2.5, 0.5)
        delta = 10 ** rng.uniform(-15, math.log10(0.99))
        k = sample_size(n, eps, delta).k
        shrink = ((n - 1) / n) ** 2
        assert (2 * math.exp(-2 * k * eps ** 2 * shrink) <= delta
                < 2 * math.exp(-2 * (k - 1) * eps ** 2 * shrink))
        assert failure_bound(k, eps, n) <= delta
        assert abs(k - max(1, _mp_k(n, eps, delta))) <= 1


@pytest.mark.acceptance(6, "sampling gains on exact as n grows (Erdos-Renyi, degree 8)")
def test_runtime_scaling(record_property):
    specs = [GeneratorSpec("erdos-renyi", (n, 8 / (n - 1)), seed=11, weights=("uniform", 0.5, 1.5))
             for n in (2000, 4000, 8000)]
    t0 = time.perf_counter()
    # single timed run per size: the ratios differ by ~2x, far above timing noise
    records = run_bench(specs, 0.2, seed=3, repeats=1, warmup=False)
    elapsed = time.perf_counter() - t0
    ratios = [r.approx_time / r.exact_time for r in records]
    for r, ratio in zip(records, ratios):
        record_property(f"n{r.n}", f"k={r.k},ratio={ratio:.4f}")
    assert ratios[0] > ratios[1] > ratios[2]
    assert records[-1].approx_time < records[-1].exact_time
    assert elapsed < 300


@pytest.mark.acceptance(7, "passing trials keep relative error within eps * diameter * c_max")
def test_small_world_relative_error(ws_audit, record_property):
    audit, _ = ws_audit
    bound = audit.epsilon * audit.diameter * audit.c_max
    passing = [r for r in audit.records if not r.violated]
    assert passing
    for rec in passing:
        assert rec.max_rel_error <= bound
    record_property("max_rel_error", round(audit.max_rel_error, 4))
    record_property("max_rel_centrality_error",
                    round(max(r.max_rel_centrality_error for r in audit.records), 4))
    record_property("bound", round(bound, 4))


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "closeness", *map(str, args)],
                          capture_output=True)
    return proc.returncode, proc.stdout


@pytest.mark.acceptance(8, "identical CLI invocations give byte-identical output")
def test_cli_determinism(tmp_path):
    graph = tmp_path / "ws.txt"
    assert _cli("gen", "ws:200,6,0.1/uniform:0.5,2", "--seed", 9, "-o", graph)[0] == 0
    commands = [
        ("exact", graph, "--format", "csv"),
        ("exact", graph, "--format", "json"),
        ("approx", graph, "--epsilon", 0.3, "--seed", 17, "--format", "csv"),
        ("approx", graph, "--epsilon", 0.3, "--seed", 17, "--format", "json"),
        ("approx", graph, "--k", 25, "--seed", 4, "--format", "json"),
        ("audit", graph, "--epsilon", 0.3, "--trials", 5, "--seed", 2, "--format", "json"),
        ("audit", graph, "--epsilon", 0.3, "--trials", 5, "--seed", 2, "--format", "csv"),
    ]
    for cmd in commands:
        outputs = {_cli(*cmd) for _ in range(5)}
        assert len(outputs) == 1, cmd
        code, out = outputs.pop()
        assert code == 0 and out
