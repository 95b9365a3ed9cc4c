"""Compiled vs uncompiled kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

All-pairs distances: numba BFS loops against the numpy frontier-matmul
fallback.  Packing search: the numba DFS against the same function run as
plain Python (``.py_func``), compared by nodes per second on a fixed node
limit.  Both paths must agree; the script asserts it.
"""
import argparse
import time

import numpy as np

from moorepack import kernels
from moorepack.generators import gen_cage_3_12, gen_gq_incidence, gen_pg_incidence
from moorepack.solver import DEFAULT_PRUNE, SearchConfig, _Search, class_caps_for, vertex_order


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def bench_bfs(repeat):
    print("all-pairs distances (seconds, best of %d)" % repeat)
    print(f"{'graph':<12}{'n':>6}{'numba':>11}{'numpy':>11}{'ratio':>8}")
    for name, g in [("gq(3)", gen_gq_incidence(3)), ("cage312", gen_cage_3_12()),
                    ("gq(5)", gen_gq_incidence(5)), ("gq(7)", gen_gq_incidence(7))]:
        indptr, indices = g.csr
        kernels._bfs_all_loops(indptr, indices, g.n)  # compile outside the timing
        a, t_jit = best_of(lambda: kernels._bfs_all_loops(indptr, indices, g.n), repeat)
        b, t_np = best_of(lambda: kernels._bfs_all_numpy(indptr, indices, g.n), repeat)
        assert np.array_equal(a, b)
        print(f"{name:<12}{g.n:>6}{t_jit:>11.4f}{t_np:>11.4f}{t_np / t_jit:>8.1f}")


def bench_dfs(repeat, node_limit):
    print(f"\npacking search, {node_limit} nodes (nodes per second)")
    print(f"{'graph':<12}{'cap':>5}{'numba':>14}{'python':>14}{'ratio':>8}")
    for name, g, K in [("heawood", gen_pg_incidence(2), 7), ("gq(2)", gen_gq_incidence(2), 8)]:
        cfg = SearchConfig(max_color=K)
        s = _Search(g, K, cfg, vertex_order(g, "distance"), class_caps_for(g, K, DEFAULT_PRUNE))

        def run(fn, limit):
            st = s.fresh()
            status, nodes = fn(s.order, s.posof, s.idx, s.end, K, s.cap, *st, 0, limit, True, True, s.sym)
            return int(nodes), st[0].copy()

        fast = kernels.packing_dfs
        slow = getattr(fast, "py_func", fast)
        run(fast, 10)
        (n1, cur1), t_jit = best_of(lambda: run(fast, node_limit), repeat)
        (n2, cur2), t_py = best_of(lambda: run(slow, node_limit), repeat)
        assert n1 == n2 and np.array_equal(cur1, cur2)
        print(f"{name:<12}{K:>5}{n1 / t_jit:>14.0f}{n2 / t_py:>14.0f}{t_py / t_jit:>8.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--nodes", type=int, default=20000)
    args = ap.parse_args()
    print(f"numba enabled: {kernels.NUMBA_ENABLED}")
    bench_bfs(args.repeat)
    bench_dfs(args.repeat, args.nodes)


if __name__ == "__main__":
    main()
