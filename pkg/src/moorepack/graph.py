"""Immutable simple graphs with cached hop-distance matrices.

Vertices are ``0..n-1``.  Optional per-vertex ``labels`` (any hashable, e.g.
coordinate tuples) and ``side`` tags (0 = points, 1 = lines) ride along.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from . import kernels
from .clique import enumerate_cliques_of_size, max_clique
from .errors import NotRegular, TooLarge

INF = int(kernels.INF)
MIS_GENERAL_LIMIT = 64
MIS_ENUM_LIMIT = 40


class Graph:
    """Undirected simple graph on ``0..n-1``.

    Adjacency is stored as sorted neighbor tuples; construction validates
    symmetry and the absence of loops and duplicate edges.
    """

    def __init__(self, adj: Sequence[Iterable[int]], labels: Sequence[Hashable] | None = None,
                 side: Sequence[int] | None = None, meta: dict | None = None):
        self.adj = tuple(tuple(sorted(int(v) for v in nb)) for nb in adj)
        self.n = len(self.adj)
        self.labels = tuple(labels) if labels is not None else None
        self.side = tuple(int(s) for s in side) if side is not None else None
        self.meta = dict(meta or {})
        self._validate()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **kw) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, **kw)

    def _validate(self):
        n = self.n
        for u, nb in enumerate(self.adj):
            if len(set(nb)) != len(nb):
                raise ValueError(f"duplicate edge at vertex {u}")
            for v in nb:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {u} has out-of-range neighbor {v}")
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u not in self._adjsets[v]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels length differs from vertex count")
        if self.side is not None:
            if len(self.side) != n:
                raise ValueError("side length differs from vertex count")
            for u, nb in enumerate(self.adj):
                for v in nb:
                    if self.side[u] == self.side[v]:
                        raise ValueError(f"edge {u}-{v} does not cross sides")

    # -- structure ---------------------------------------------------------
    @cached_property
    def _adjsets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(nb) for nb in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adj) for v in nb if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(nb) for nb in self.adj])
        indices = np.fromiter((v for nb in self.adj for v in nb), dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices

    @cached_property
    def masks(self) -> list[int]:
        out = []
        for nb in self.adj:
            m = 0
            for v in nb:
                m |= 1 << v
            out.append(m)
        return out

    @cached_property
    def index_of(self) -> dict:
        """Label -> vertex index (requires labels)."""
        if self.labels is None:
            raise ValueError("graph has no labels")
        return {lab: i for i, lab in enumerate(self.labels)}

    def side_vertices(self, s: int) -> list[int]:
        if self.side is None:
            raise ValueError("graph has no side tags")
        return [v for v in range(self.n) if self.side[v] == s]

    def same_structure(self, other: "Graph") -> bool:
        return self.adj == other.adj and self.labels == other.labels and self.side == other.side

    def __repr__(self):
        fam = self.meta.get("family", "graph")
        return f"<Graph {fam} n={self.n} m={self.num_edges}>"

    # -- metric ------------------------------------------------------------
    @cached_property
    def distances(self) -> np.ndarray:
        """Read-only int16 hop-distance matrix (``INF`` marks disconnected pairs)."""
        indptr, indices = self.csr
        d = kernels.bfs_all(indptr, indices, self.n)
        d.setflags(write=False)
        return d

    def bipartition(self) -> tuple[int, ...] | None:
        """Side tags if present, else a BFS 2-coloring, else None (odd cycle)."""
        if self.side is not None:
            return self.side
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for v in self.adj[u]:
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        dq.append(v)
                    elif color[v] == color[u]:
                        return None
        return tuple(color)

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None


def all_pairs_distances(g: Graph) -> np.ndarray:
    return g.distances


def diameter(g: Graph) -> int | float:
    if g.n == 0:
        return 0
    d = int(g.distances.max())
    return float("inf") if d == INF else d


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; ``inf`` for forests."""
    indptr, indices = g.csr
    val = int(kernels.girth_loops(indptr, indices, g.n))
    return float("inf") if val < 0 else val


def regularity(g: Graph, strict: bool = False) -> int | None:
    """The common degree; None (or NotRegular with ``strict``) when degrees differ."""
    degs = {len(nb) for nb in g.adj}
    if len(degs) == 1:
        return degs.pop()
    if not degs:
        return 0
    if strict:
        raise NotRegular(f"degrees range over {sorted(degs)}")
    return None


def distance_degree_sequence(g: Graph, v: int) -> tuple[int, ...]:
    """Number of vertices at each distance 0, 1, 2, ... from ``v``."""
    row = g.distances[v]
    row = row[row != INF]
    return tuple(np.bincount(row).tolist())


# -- independence ----------------------------------------------------------

def _bipartite_mis(g: Graph, sides: Sequence[int]) -> list[int]:
    """Maximum independent set of a bipartite graph via König's theorem."""
    left = [v for v in range(g.n) if sides[v] == 0]
    right = [v for v in range(g.n) if sides[v] == 1]
    if not left or not right:
        return list(range(g.n))
    lpos = {v: i for i, v in enumerate(left)}
    rpos = {v: i for i, v in enumerate(right)}
    rows, cols = [], []
    for u in left:
        for v in g.adj[u]:
            rows.append(lpos[u])
            cols.append(rpos[v])
    bi = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(left), len(right)))
    match_l = maximum_bipartite_matching(bi, perm_type="column")  # left i -> right index or -1
    match_r = [-1] * len(right)
    for i, j in enumerate(match_l):
        if j >= 0:
            match_r[j] = i
    # alternating BFS from unmatched left vertices
    vis_l = [False] * len(left)
    vis_r = [False] * len(right)
    dq = deque(i for i, j in enumerate(match_l) if j < 0)
    for i in dq:
        vis_l[i] = True
    while dq:
        i = dq.popleft()
        for v in g.adj[left[i]]:
            j = rpos[v]
            if not vis_r[j] and match_l[i] != j:
                vis_r[j] = True
                k = match_r[j]
                if k >= 0 and not vis_l[k]:
                    vis_l[k] = True
                    dq.append(k)
    # minimum vertex cover = (L unvisited) + (R visited); the complement is independent
    mis = [left[i] for i in range(len(left)) if vis_l[i]] + [right[j] for j in range(len(right)) if not vis_r[j]]
    return sorted(mis)


def _complement_masks(g: Graph) -> list[int]:
    full = (1 << g.n) - 1
    return [full & ~m & ~(1 << v) for v, m in enumerate(g.masks)]


def max_independent_set(g: Graph, *, method: str = "auto") -> list[int]:
    """A maximum independent set, sorted.

    Bipartite graphs go through maximum matching (any size).  Other graphs use
    clique branch-and-bound on the complement, limited to 64 vertices.
    ``method`` may force ``"matching"`` or ``"bnb"``.
    """
    sides = g.bipartition()
    if method == "matching" or (method == "auto" and sides is not None):
        if sides is None:
            raise ValueError("matching method needs a bipartite graph")
        return _bipartite_mis(g, sides)
    if g.n > MIS_GENERAL_LIMIT:
        raise TooLarge(f"branch-and-bound independence search is capped at {MIS_GENERAL_LIMIT} vertices")
    if g.n == 0:
        return []
    return max_clique(_complement_masks(g))


def independence_number(g: Graph, **kw) -> int:
    return len(max_independent_set(g, **kw))


def enumerate_max_independent_sets(g: Graph, limit: int | None = None) -> list[list[int]]:
    """Every maximum independent set (up to ``limit``), each sorted, in lexicographic order."""
    if g.n > MIS_ENUM_LIMIT:
        raise TooLarge(f"independent-set enumeration is capped at {MIS_ENUM_LIMIT} vertices")
    if g.n == 0:
        return [[]]
    size = independence_number(g)
    found = enumerate_cliques_of_size(_complement_masks(g), size)
    found.sort()
    return found[:limit] if limit is not None else found


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    return all(not (vs & g._adjsets[v]) for v in vs)
