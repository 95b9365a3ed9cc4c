import itertools
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from moorepack import kernels
from moorepack.errors import NotRegular, TooLarge
from moorepack.generators import (complete, complete_bipartite, cycle, gen_gq_incidence, gen_pg_incidence,
                                  hoffman_singleton, path, petersen)
from moorepack.graph import (INF, Graph, all_pairs_distances, diameter, distance_degree_sequence,
                             enumerate_max_independent_sets, girth, independence_number, is_independent,
                             max_independent_set, regularity)


def floyd_warshall(g):
    n = g.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for u, v in g.edges():
        d[u, v] = d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def brute_beta(g):
    for size in range(g.n, -1, -1):
        for S in itertools.combinations(range(g.n), size):
            if is_independent(g, S):
                return size
    return 0


def test_validation():
    with pytest.raises(ValueError):
        Graph([[1], []])
    with pytest.raises(ValueError):
        Graph([[0]])
    with pytest.raises(ValueError):
        Graph([[1, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[1], [0]], side=[0, 0])


def test_single_edge():
    g = Graph([[1], [0]])
    d = all_pairs_distances(g)
    assert d[0, 1] == 1 and d[0, 0] == 0


def test_distances_read_only():
    g = cycle(5)
    with pytest.raises(ValueError):
        g.distances[0, 1] = 3


def test_cycle_metric():
    assert diameter(cycle(8)) == 4
    assert girth(cycle(5)) == 5


def test_disconnected():
    g = Graph([[1], [0], []])
    assert g.distances[0, 2] == INF
    assert diameter(g) == float("inf")


def test_forest_girth():
    assert girth(path(6)) == float("inf")


def test_heawood_metric():
    g = gen_pg_incidence(2)
    assert diameter(g) == 3 and girth(g) == 6


def test_petersen_and_tutte_coxeter():
    assert girth(petersen()) == 5
    assert girth(gen_gq_incidence(2)) == 8


def test_regularity():
    assert regularity(complete(4)) == 3
    assert regularity(gen_gq_incidence(3)) == 4
    assert regularity(path(3)) is None
    with pytest.raises(NotRegular):
        regularity(path(3), strict=True)


def test_distance_degree_sequence_uniform():
    g = gen_gq_incidence(2)
    seqs = {distance_degree_sequence(g, v) for v in range(g.n)}
    assert seqs == {(1, 3, 6, 12, 8)}


def test_petersen_beta_brute_force():
    g = petersen()
    assert brute_beta(g) == 4
    S = max_independent_set(g)
    assert len(S) == 4 and is_independent(g, S)


def test_hoffman_singleton_beta():
    g = hoffman_singleton()
    S = max_independent_set(g)
    assert len(S) == 15 and is_independent(g, S)


def test_heawood_beta():
    assert independence_number(gen_pg_incidence(2)) == 7


def test_enumerate_heawood_sides():
    g = gen_pg_incidence(2)
    sets = enumerate_max_independent_sets(g)
    sides = sorted([g.side_vertices(0), g.side_vertices(1)])
    assert sets == sides
    # oracle: all C(14,7) subsets
    brute = [list(S) for S in itertools.combinations(range(14), 7) if is_independent(g, S)]
    assert brute == sides


def test_enumerate_small():
    assert len(enumerate_max_independent_sets(cycle(4))) == 2
    assert enumerate_max_independent_sets(complete(3)) == [[0], [1], [2]]
    assert len(enumerate_max_independent_sets(cycle(5), limit=3)) == 3


def test_too_large():
    with pytest.raises(TooLarge):
        enumerate_max_independent_sets(cycle(42))
    with pytest.raises(TooLarge):
        max_independent_set(cycle(65))
    # bipartite graphs of any size go through matching
    assert independence_number(cycle(200)) == 100


def test_bfs_matches_floyd_warshall():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(1, 120))
        g = random_graph(rng, n, float(rng.uniform(0.01, 0.2)))
        fw = floyd_warshall(g)
        d = g.distances.astype(float)
        d[d == INF] = np.inf
        assert np.array_equal(d, fw)


def test_numpy_fallback_kernel_matches():
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(2, 80)), 0.08)
        indptr, indices = g.csr
        a = kernels.bfs_all(indptr, indices, g.n, use_numba=True)
        b = kernels.bfs_all(indptr, indices, g.n, use_numba=False)
        assert np.array_equal(a, b)


def test_matching_vs_bnb_bipartite():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = int(rng.integers(1, 20)), int(rng.integers(1, 20))
        edges = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < 0.25]
        g = Graph.from_edges(a + b, edges, side=[0] * a + [1] * b)
        m = max_independent_set(g, method="matching")
        k = max_independent_set(g, method="bnb")
        assert is_independent(g, m) and len(m) == len(k)


def test_bipartition_inference():
    assert cycle(6).is_bipartite()
    assert not cycle(5).is_bipartite()
    assert complete_bipartite(2, 3).bipartition() == (0, 0, 1, 1, 1)


def test_numba_disabled_subprocess():
    """The uncompiled path reproduces distances and the exact search."""
    code = (
        "import json; from moorepack import kernels; from moorepack.generators import gen_gq_incidence, petersen;"
        "from moorepack.solver import solve_exact;"
        "g = gen_gq_incidence(3);"
        "print(json.dumps({'enabled': kernels.NUMBA_ENABLED, 'dist': g.distances.tolist(),"
        " 'pet': solve_exact(petersen()).value}))"
    )
    env = dict(os.environ, MOOREPACK_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    data = json.loads(out.stdout)
    assert data["enabled"] is False
    assert np.array_equal(np.array(data["dist"]), gen_gq_incidence(3).distances)
    assert data["pet"] == 7
