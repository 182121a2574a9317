import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closeness import Graph, distance_rows, eccentricity, sssp
from closeness.paths import _dijkstra

from oracles import bellman_ford, random_connected_edges, simple_path_distances


def test_path(p3):
    assert sssp(p3, 0).tolist() == [0, 1, 2]


def test_complete(k4):
    assert sssp(k4, 2).tolist() == [1, 1, 0, 1]


def test_weighted_triangle(triangle):
    edges = [(0, 1, 5.0), (1, 2, 1.0), (0, 2, 1.0)]
    expected = simple_path_distances(3, edges, 0)
    assert expected == [0.0, 2.0, 1.0]
    assert sssp(triangle, 0).tolist() == expected


def test_unreachable_is_inf():
    g = Graph.from_edges(3, [(0, 1, 2.0)])
    assert sssp(g, 0).tolist() == [0.0, 2.0, np.inf]


def test_source_out_of_range(p3):
    with pytest.raises(IndexError):
        sssp(p3, 3)


@pytest.mark.parametrize("source, ecc", [(0, 2), (1, 1)])
def test_eccentricity_path(p3, source, ecc):
    assert eccentricity(sssp(p3, source)) == ecc


def test_eccentricity_complete(k4):
    assert {eccentricity(sssp(k4, s)) for s in range(4)} == {1}


def test_eccentricity_disconnected():
    with pytest.raises(ValueError, match="disconnected"):
        eccentricity(sssp(Graph.from_edges(2, []), 0))


def test_distance_vector_is_read_only(p3):
    dv = sssp(p3, 0)
    with pytest.raises(ValueError):
        dv.dist[0] = 5.0


def _random_graph(seed, n, directed=False, weight=None):
    rng = random.Random(seed)
    kw = {} if weight is None else {"weight": weight}
    edges = random_connected_edges(rng, n, extra_p=0.3, **kw)
    return edges, Graph.from_edges(n, edges, directed=directed)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2 ** 32), st.booleans())
def test_matches_bellman_ford(n, seed, directed):
    edges, g = _random_graph(seed, n, directed, weight=lambda r: r.uniform(0.0, 5.0))
    for s in range(n):
        expected = bellman_ford(n, edges, s, directed)
        assert sssp(g, s).tolist() == expected
        assert sssp(g, s, use_bfs=False).tolist() == expected


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2 ** 32))
def test_bfs_equals_heap_on_unit_weights(n, seed):
    _, g = _random_graph(seed, n, weight=lambda r: 1.0)
    assert g.unit_weights
    for s in range(n):
        assert sssp(g, s) == sssp(g, s, use_bfs=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 25), st.integers(0, 2 ** 32))
def test_triangle_consistency(n, seed):
    _, g = _random_graph(seed, n, weight=lambda r: r.uniform(0.0, 3.0))
    dv = sssp(g, 0)
    assert dv[0] == 0
    for u, v, w in g.edges():
        assert dv[v] <= dv[u] + w and dv[u] <= dv[v] + w


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 20), st.integers(0, 2 ** 32))
def test_each_vertex_settled_once(n, seed):
    _, g = _random_graph(seed, n)
    dist, order = _dijkstra(g.adjacency, g.n, 0)
    assert sorted(order) == list(range(n))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 20), st.integers(0, 2 ** 32))
def test_undirected_distances_symmetric(n, seed):
    # dyadic weights: exact in either summation direction
    _, g = _random_graph(seed, n)
    d = distance_rows(g, range(n), backend="heap")
    assert np.array_equal(d, d.T)
    # arbitrary reals: a path summed from opposite ends may round differently
    _, g = _random_graph(seed, n, weight=lambda r: r.uniform(0.0, 3.0))
    d = distance_rows(g, range(n), backend="heap")
    np.testing.assert_allclose(d, d.T, rtol=1e-12)


@pytest.mark.parametrize("directed", [False, True])
def test_backends_agree(directed):
    _, g = _random_graph(7, 40, directed)
    sources = [0, 5, 5, 39, 12]
    assert np.array_equal(distance_rows(g, sources, backend="heap"),
                          distance_rows(g, sources, backend="scipy"))


def test_backends_agree_with_zero_weights():
    g = Graph.from_edges(4, [(0, 1, 0.0), (1, 2, 0.0), (2, 3, 2.5)])
    assert distance_rows(g, [0], backend="scipy").tolist() == [[0.0, 0.0, 0.0, 2.5]]
    assert distance_rows(g, [0], backend="heap").tolist() == [[0.0, 0.0, 0.0, 2.5]]


def test_unknown_backend(p3):
    with pytest.raises(ValueError):
        distance_rows(p3, [0], backend="fibonacci")
