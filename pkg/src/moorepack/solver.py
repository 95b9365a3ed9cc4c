"""Exact and first-solution packing-coloring search.

The search assigns vertices in a fixed order, trying colors in increasing
order, so the first coloring it reports is the lexicographically least valid
one under the color cap.  Admissible prunes (class-size caps, forward
checking) only cut subtrees without solutions and therefore never change
which coloring is found, only how fast.
"""
from __future__ import annotations

import time
import weakref
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .clique import coloring_bound, max_clique
from .coloring import PackingColoring
from .errors import BudgetExceeded, Infeasible, NotDiameter2, TooLarge
from .graph import Graph, diameter, independence_number

ORDERS = ("natural", "degree", "distance")
PRUNES = frozenset({"beta", "diameter", "packing", "forward", "capacity", "symmetry"})
DEFAULT_PRUNE = PRUNES
CHUNK_NODES = 1 << 20
PACKING_LIMIT = 200
PACKING_NODE_BUDGET = 50_000


@dataclass(frozen=True)
class SearchConfig:
    """Search parameters.

    ``max_color`` caps every color (None means n).  ``prune`` holds any of
    ``beta`` (color 1 at most the independence number), ``diameter`` (colors
    at or above the diameter are singletons), ``packing`` (color c at most the
    largest set with pairwise distance > c, by clique search) and ``forward``
    (reject a color that leaves some uncolored vertex without options) and
    ``capacity`` (the uncolored vertices must fit into the classes that
    can still grow, counting only vertices each class could take) and
    ``symmetry`` (colors at or above the diameter are interchangeable, so
    only the least unused one is tried).
    """

    max_color: int | None = None
    vertex_order: str = "distance"
    prune: frozenset = DEFAULT_PRUNE
    time_budget: float | None = None
    node_budget: int | None = None
    threads: int = 1

    def __post_init__(self):
        if self.max_color is not None and self.max_color < 1:
            raise ValueError("max_color must be at least 1")
        if self.vertex_order not in ORDERS:
            raise ValueError(f"vertex_order must be one of {ORDERS}")
        object.__setattr__(self, "prune", frozenset(self.prune))
        unknown = self.prune - PRUNES
        if unknown:
            raise ValueError(f"unknown prune flags {sorted(unknown)}")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass
class SearchStats:
    nodes: int = 0
    seconds: float = 0.0
    result: str = ""
    runs: list = field(default_factory=list)

    def to_dict(self):
        return {"nodes": self.nodes, "seconds": round(self.seconds, 6), "result": self.result, "runs": self.runs}


def vertex_order(g: Graph, kind: str) -> list[int]:
    if kind == "natural":
        return list(range(g.n))
    if kind == "degree":
        return sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    if kind == "distance":
        out, seen = [], [False] * g.n
        for root in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
            if seen[root]:
                continue
            seen[root] = True
            dq = deque([root])
            while dq:
                u = dq.popleft()
                out.append(u)
                for w in g.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        dq.append(w)
        return out
    raise ValueError(f"unknown vertex order {kind!r}")


def feasible_extension_check(g: Graph, partial: Sequence[int], v: int, c: int) -> bool:
    """True iff no vertex u < v already colored ``c`` lies within distance ``c`` of ``v``."""
    D = g.distances
    for u, cu in enumerate(partial[:v]):
        if cu == c and u != v and D[u, v] <= c:
            return False
    return True


def _distance_masks(g: Graph, c: int) -> list[int]:
    masks = []
    for row in g.distances > c:
        m = 0
        for j in np.flatnonzero(row):
            m |= 1 << int(j)
        masks.append(m)
    return masks


def packing_number(g: Graph, c: int, node_budget: int | None = None) -> int:
    """Largest set of vertices with pairwise distance greater than ``c``."""
    return len(max_clique(_distance_masks(g, c), node_budget=node_budget))


_PACKING_CACHE: "weakref.WeakKeyDictionary[Graph, dict]" = weakref.WeakKeyDictionary()


def packing_cap(g: Graph, c: int) -> tuple[int, bool]:
    """``(bound, exact)``: the packing number when the clique search fits its budget, else a coloring bound."""
    memo = _PACKING_CACHE.setdefault(g, {})
    if c not in memo:
        masks = _distance_masks(g, c)
        try:
            memo[c] = (len(max_clique(masks, node_budget=PACKING_NODE_BUDGET)), True)
        except BudgetExceeded:
            memo[c] = (coloring_bound(masks), False)
    return memo[c]


def class_caps_for(g: Graph, K: int, prune: frozenset) -> np.ndarray:
    """Admissible upper bounds on each class size, index 1..K."""
    n = g.n
    cap = np.full(K + 1, n, dtype=np.int64)
    cap[0] = 0
    d = diameter(g)
    if "diameter" in prune and d != float("inf"):
        cap[int(d):] = 1
    if "beta" in prune and K >= 1:
        try:
            cap[1] = min(cap[1], independence_number(g))
        except TooLarge:
            pass
    if "packing" in prune and n <= PACKING_LIMIT:
        top = min(K, int(d) - 1) if d != float("inf") else K
        for c in range(1 if "beta" not in prune else 2, top + 1):
            cap[c] = min(cap[c], packing_cap(g, c)[0])
    return cap


class _Search:
    """Dense state for one color cap; runs the kernel in node chunks."""

    def __init__(self, g: Graph, K: int, cfg: SearchConfig, order: list[int], cap: np.ndarray):
        n = g.n
        self.g, self.K, self.cfg = g, K, cfg
        self.order = np.asarray(order, dtype=np.int64)
        self.posof = np.empty(n, dtype=np.int64)
        self.posof[self.order] = np.arange(n)
        D = g.distances
        self.idx, self.end = kernels.balls(D, K)
        self.cap = cap
        self.forward = "forward" in cfg.prune
        self.tight = "capacity" in cfg.prune
        d = diameter(g)
        self.sym = int(d) if "symmetry" in cfg.prune and d != float("inf") and d >= 1 else K + 1

    def fresh(self):
        n, K = self.g.n, self.K
        return (np.zeros(n, dtype=np.int64), np.zeros((n, K + 1), dtype=np.int32),
                np.zeros(K + 1, dtype=np.int64), np.zeros(1, dtype=np.int64))

    def seed(self, prefix: Sequence[int]):
        """State with the first ``len(prefix)`` positions fixed to ``prefix``."""
        cur, blocked, cnt, state = self.fresh()
        for p, c in enumerate(prefix):
            v = int(self.order[p])
            cur[p] = c
            kernels._apply(v, c, self.idx, self.end, blocked, 1)
            cnt[c] += 1
        state[0] = len(prefix)
        return cur, blocked, cnt, state

    def run(self, st, floor, clock, cancel=None):
        cur, blocked, cnt, state = st
        while True:
            limit = clock.chunk()
            if limit <= 0:
                return kernels.PAUSED
            status, nodes = kernels.packing_dfs(self.order, self.posof, self.idx, self.end, self.K, self.cap,
                                                cur, blocked, cnt, state, floor, limit, self.forward,
                                                self.tight, self.sym)
            clock.spend(int(nodes))
            if status != kernels.PAUSED:
                return status
            if cancel is not None and cancel():
                return kernels.PAUSED

    def coloring(self, cur) -> list[int]:
        colors = [0] * self.g.n
        for p, v in enumerate(self.order):
            colors[int(v)] = int(cur[p])
        return colors


class _Clock:
    def __init__(self, cfg: SearchConfig, stats: SearchStats):
        self.t0 = time.perf_counter()
        self.deadline = None if cfg.time_budget is None else self.t0 + cfg.time_budget
        self.node_budget = cfg.node_budget
        self.stats = stats

    def chunk(self) -> int:
        if self.deadline is not None and time.perf_counter() >= self.deadline:
            return 0
        if self.node_budget is not None:
            return min(CHUNK_NODES, self.node_budget - self.stats.nodes)
        return CHUNK_NODES

    def spend(self, nodes: int):
        self.stats.nodes += nodes

    def elapsed(self) -> float:
        return time.perf_counter() - self.t0


def _prefixes(search: _Search, want: int) -> tuple[int, list[list[int]]]:
    """All feasible color prefixes of the smallest depth giving at least ``want`` (lexicographic)."""
    D = search.g.distances
    order = [int(v) for v in search.order]
    K, cap = search.K, search.cap
    level = [[]]
    depth = 0
    while len(level) < want and depth < len(order):
        nxt = []
        v = order[depth]
        for pre in level:
            counts = np.bincount(pre, minlength=K + 1) if pre else np.zeros(K + 1, dtype=np.int64)
            for c in range(1, K + 1):
                if c > search.sym and counts[c - 1] == 0:
                    break
                if counts[c] >= cap[c]:
                    continue
                if all(not (pc == c and D[order[p], v] <= c) for p, pc in enumerate(pre)):
                    nxt.append(pre + [c])
        level = nxt
        depth += 1
        if not level:
            break
    return depth, level


def _run_cap(g: Graph, K: int, cfg: SearchConfig, order, cap, clock: _Clock) -> tuple[str, list[int] | None]:
    """``("found", colors)``, ``("infeasible", None)`` or ``("budget", None)`` for cap K."""
    search = _Search(g, K, cfg, order, cap)
    if cfg.threads <= 1 or g.n < 8:
        st = search.fresh()
        status = search.run(st, 0, clock)
        if status == kernels.FOUND:
            return "found", search.coloring(st[0])
        return ("infeasible", None) if status == kernels.EXHAUSTED else ("budget", None)

    depth, prefixes = _prefixes(search, 4 * cfg.threads)
    if not prefixes:
        return "infeasible", None
    results: list = [None] * len(prefixes)
    best = [len(prefixes)]

    def task(i):
        if i > best[0]:
            return "cancelled"
        st = search.seed(prefixes[i])
        status = search.run(st, depth, clock, cancel=lambda: i > best[0])
        if status == kernels.FOUND:
            results[i] = search.coloring(st[0])
            best[0] = min(best[0], i)
            return "found"
        return "infeasible" if status == kernels.EXHAUSTED else "budget"

    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        outcomes = list(pool.map(task, range(len(prefixes))))
    for i, out in enumerate(outcomes):
        if out == "found":
            return "found", results[i]
        if out != "infeasible":
            return "budget", None
    return "infeasible", None


def solve_upper(g: Graph, cfg: SearchConfig = SearchConfig()) -> PackingColoring:
    """First valid coloring with colors at most ``cfg.max_color``.

    Raises Infeasible when the search space is exhausted and BudgetExceeded
    when the time or node budget runs out.  Stats land in ``meta['stats']``.
    """
    K = cfg.max_color or g.n
    stats = SearchStats()
    clock = _Clock(cfg, stats)
    order = vertex_order(g, cfg.vertex_order)
    cap = class_caps_for(g, K, cfg.prune)
    outcome, colors = _run_cap(g, K, cfg, order, cap, clock)
    stats.seconds = clock.elapsed()
    stats.result = outcome
    stats.runs.append({"cap": K, "result": outcome, "nodes": stats.nodes})
    if outcome == "found":
        return PackingColoring(tuple(colors), meta={"stats": stats.to_dict(), "max_color": K})
    if outcome == "infeasible":
        exc = Infeasible(f"no packing coloring with at most {K} colors")
        exc.stats = stats.to_dict()
        raise exc
    exc = BudgetExceeded(f"budget exhausted at cap {K} after {stats.nodes} nodes")
    exc.stats = stats.to_dict()
    raise exc


@dataclass
class ExactResult:
    value: int | None
    witness: PackingColoring
    proven: bool
    lower: int
    upper: int
    stats: dict

    def to_dict(self):
        return {"value": self.value, "proven": self.proven, "lower": self.lower, "upper": self.upper,
                "colors": list(self.witness.colors), "stats": self.stats}


def capacity_lower_bound(cap: np.ndarray, n: int) -> int:
    """Least K with cap[1] + ... + cap[K] >= n."""
    total = 0
    for K in range(1, len(cap)):
        total += int(cap[K])
        if total >= n:
            return K
    return len(cap)


def solve_exact(g: Graph, cfg: SearchConfig = SearchConfig(), *, raise_on_budget: bool = True) -> ExactResult:
    """Packing chromatic number by descending caps until a cap is refuted.

    The first run is a greedy first-fit (cap n, never backtracks); each later
    run tries one color fewer than the best witness.  On budget exhaustion
    BudgetExceeded is raised with ``best`` = the ExactResult bracket, unless
    ``raise_on_budget`` is False, in which case the unproven bracket is
    returned.
    """
    n = g.n
    if n == 0:
        return ExactResult(0, PackingColoring(()), True, 0, 0, {})
    stats = SearchStats()
    clock = _Clock(cfg, stats)
    order = vertex_order(g, cfg.vertex_order)
    cap_n = class_caps_for(g, n, cfg.prune)
    lower = capacity_lower_bound(cap_n, n)
    K = cfg.max_color or n
    witness = None
    proven = False
    while True:
        outcome, colors = _run_cap(g, K, cfg, order, cap_n[: K + 1].copy(), clock)
        stats.runs.append({"cap": K, "result": outcome, "nodes": stats.nodes})
        if outcome == "found":
            witness = PackingColoring(tuple(colors))
            K = witness.k - 1
            if K < 1:
                proven = True
                break
            continue
        if outcome == "infeasible":
            lower = max(lower, K + 1)
            proven = witness is not None
            break
        break
    stats.seconds = clock.elapsed()
    if witness is None:
        if outcome == "infeasible":
            raise Infeasible(f"no packing coloring with at most {K} colors")
        raise BudgetExceeded("budget exhausted before any coloring was found", best=(lower, None))
    upper = witness.k
    stats.result = "exact" if proven else "bracket"
    witness.meta["stats"] = stats.to_dict()
    res = ExactResult(upper if proven else None, witness, proven, upper if proven else lower, upper, stats.to_dict())
    if not proven and raise_on_budget:
        exc = BudgetExceeded(f"bracket [{lower}, {upper}] after {stats.nodes} nodes", best=res)
        exc.stats = stats.to_dict()
        raise exc
    return res


def chi_rho_diameter2(g: Graph) -> int:
    """n - beta + 1 for a graph of diameter at most 2 (exact beta).

    Every color above 1 is then a singleton, so this is exact; complete
    graphs (diameter 1) are included.
    """
    if g.n < 2 or diameter(g) > 2:
        raise NotDiameter2(f"diameter is {diameter(g)}, not at most 2")
    return g.n - independence_number(g) + 1


def diameter2_witness(g: Graph) -> PackingColoring:
    """Color 1 on a maximum independent set, distinct colors elsewhere."""
    from .graph import max_independent_set

    if g.n < 2 or diameter(g) > 2:
        raise NotDiameter2("needs diameter at most 2")
    S = set(max_independent_set(g))
    colors, nxt = [], 2
    for v in range(g.n):
        if v in S:
            colors.append(1)
        else:
            colors.append(nxt)
            nxt += 1
    return PackingColoring(tuple(colors))


__all__ = [
    "SearchConfig", "SearchStats", "ExactResult", "vertex_order", "feasible_extension_check",
    "packing_number", "packing_cap", "class_caps_for", "solve_upper", "solve_exact", "chi_rho_diameter2",
    "diameter2_witness", "capacity_lower_bound",
]
