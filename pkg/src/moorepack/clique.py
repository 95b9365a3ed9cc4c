"""Maximum clique search on Python-int bitsets.

Branch and bound with a greedy coloring bound (Tomita-style MCQ).  Vertices
are renumbered by non-increasing degree before the search; results are
reported in the caller's numbering, sorted.  The search is deterministic.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import BudgetExceeded


def masks_from_adjacency(adj: Sequence[Iterable[int]]) -> list[int]:
    out = []
    for nb in adj:
        m = 0
        for v in nb:
            m |= 1 << v
        out.append(m)
    return out


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _color_order(P: int, N: list[int]) -> list[tuple[int, int]]:
    """Greedy sequential coloring of P; returns (vertex, color) with colors non-decreasing."""
    out = []
    k = 0
    uncolored = P
    while uncolored:
        k += 1
        Q = uncolored
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~N[v] & ~low
            uncolored &= ~low
            out.append((v, k))
    return out


def coloring_bound(masks: Sequence[int]) -> int:
    """Colors used by a greedy coloring; every color class meets a clique at most once, so this bounds the clique number."""
    if not masks:
        return 0
    order, N = _relabel(masks, range(len(masks)))
    cols = _color_order((1 << len(order)) - 1, N)
    return cols[-1][1]


class _Search:
    def __init__(self, N, node_budget):
        self.N = N
        self.node_budget = node_budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


def _relabel(masks: Sequence[int], vertices: Sequence[int]):
    within = _mask_of(vertices)
    order = sorted(vertices, key=lambda v: (-(masks[v] & within).bit_count(), v))
    pos = {v: i for i, v in enumerate(order)}
    N = []
    for v in order:
        m = 0
        for u in _bits(masks[v]):
            if u in pos:
                m |= 1 << pos[u]
        N.append(m)
    return order, N


def _mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def max_clique(masks: Sequence[int], vertices: Sequence[int] | None = None, *,
               target: int | None = None, node_budget: int | None = None) -> list[int]:
    """Return a maximum clique of the graph given by neighbor bitmasks.

    ``vertices`` restricts the search to an induced subgraph.  With ``target``
    set the search stops as soon as a clique of that size is found.  When
    ``node_budget`` runs out, :class:`BudgetExceeded` is raised with the best
    clique so far in ``.best``.
    """
    if vertices is None:
        vertices = range(len(masks))
    vertices = list(vertices)
    if not vertices:
        return []
    order, N = _relabel(masks, vertices)
    s = _Search(N, node_budget)
    best_set = [order[0]]
    goal = target

    def expand(R: list[int], P: int):
        s.tick()
        cols = _color_order(P, N)
        for v, c in reversed(cols):
            if len(R) + c <= len(best_set):
                return
            R.append(v)
            newP = P & N[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best_set):
                best_set[:] = [order[u] for u in R]
                if goal is not None and len(best_set) >= goal:
                    raise _Found
            R.pop()
            P &= ~(1 << v)

    try:
        expand([], (1 << len(order)) - 1)
    except _Found:
        pass
    except _OutOfBudget:
        raise BudgetExceeded("clique search budget exhausted", best=sorted(best_set)) from None
    return sorted(best_set)


class _Found(Exception):
    pass


def enumerate_cliques_of_size(masks: Sequence[int], size: int, vertices: Sequence[int] | None = None, *,
                              limit: int | None = None, node_budget: int | None = None) -> list[list[int]]:
    """All cliques of exactly ``size`` vertices (up to ``limit``), each sorted, in discovery order."""
    if vertices is None:
        vertices = range(len(masks))
    vertices = list(vertices)
    if size <= 0:
        return [[]]
    order, N = _relabel(masks, vertices)
    s = _Search(N, node_budget)
    found: list[list[int]] = []

    def expand(R: list[int], P: int):
        s.tick()
        cols = _color_order(P, N)
        for v, c in reversed(cols):
            if len(R) + c < size:
                return
            R.append(v)
            if len(R) == size:
                found.append(sorted(order[u] for u in R))
                if limit is not None and len(found) >= limit:
                    raise _Found
            else:
                newP = P & N[v]
                if newP:
                    expand(R, newP)
            R.pop()
            P &= ~(1 << v)

    try:
        expand([], (1 << len(order)) - 1)
    except _Found:
        pass
    except _OutOfBudget:
        raise BudgetExceeded("clique enumeration budget exhausted", best=found) from None
    return found
