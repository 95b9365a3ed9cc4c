"""Numeric inner loops.

Every kernel here takes plain numpy arrays (CSR adjacency, int16 distance
matrices) so that it can be compiled by numba or run as ordinary Python.
``MOOREPACK_NUMBA=0`` selects the uncompiled path; see :mod:`moorepack._jit`.
"""
import numpy as np

from ._jit import ENABLED as NUMBA_ENABLED
from ._jit import njit

INF = np.int16(np.iinfo(np.int16).max)


@njit
def _bfs_all_loops(indptr, indices, n):
    dist = np.full((n, n), INF, dtype=np.int16)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        head, tail = 0, 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            du = row[u] + 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if row[v] == INF:
                    row[v] = du
                    queue[tail] = v
                    tail += 1
    return dist


def _bfs_all_numpy(indptr, indices, n):
    # frontier expansion for all sources at once: one boolean matmul per level
    adj = np.zeros((n, n), dtype=np.float32)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    adj[rows, indices] = 1.0
    dist = np.full((n, n), INF, dtype=np.int16)
    frontier = np.eye(n, dtype=np.float32)
    seen = frontier > 0
    np.fill_diagonal(dist, 0)
    level = 0
    while frontier.any():
        level += 1
        reach = (frontier @ adj) > 0
        new = reach & ~seen
        dist[new] = level
        seen |= new
        frontier = new.astype(np.float32)
    return dist


def bfs_all(indptr, indices, n, use_numba=None):
    """All-pairs hop distances; unreachable pairs hold :data:`INF`."""
    if use_numba is None:
        use_numba = NUMBA_ENABLED
    if use_numba:
        return _bfs_all_loops(indptr, indices, n)
    return _bfs_all_numpy(indptr, indices, n)


@njit
def girth_loops(indptr, indices, n):
    """Shortest cycle length, or -1 for a forest."""
    best = n + 1
    dist = np.empty(n, dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        parent[s] = -1
        head, tail = 0, 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            if 2 * dist[u] + 1 >= best:
                break
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
                elif v != parent[u]:
                    c = dist[u] + dist[v] + 1
                    if c < best:
                        best = c
    return best if best <= n else -1


# -- packing-coloring search ------------------------------------------------

FOUND, EXHAUSTED, PAUSED = 0, 1, 2


def balls(dist, max_radius):
    """Vertices sorted by distance from each source, and ball sizes per radius.

    ``idx[v, :end[v, r]]`` lists every ``u != v`` with ``dist[v, u] <= r``.
    """
    n = dist.shape[0]
    d = dist.astype(np.int64)
    np.fill_diagonal(d, np.iinfo(np.int64).max)
    idx = np.argsort(d, axis=1, kind="stable")[:, : n - 1].astype(np.int32)
    end = np.empty((n, max_radius + 1), dtype=np.int32)
    for r in range(max_radius + 1):
        end[:, r] = (d <= r).sum(axis=1)
    return idx, end


@njit
def _apply(v, c, idx, end, blocked, delta):
    for t in range(end[v, c]):
        blocked[idx[v, t], c] += delta


@njit
def packing_dfs(order, posof, idx, end, K, cap, cur, blocked, cnt, state, floor, node_limit, forward, tight,
                sym):
    """Resumable depth-first search for a packing coloring with colors 1..K.

    ``cur[p]`` is the color at search position ``p`` (0 = none yet) and
    ``blocked[u, c]`` counts colored vertices of color ``c`` within distance
    ``c`` of ``u``.  ``state[0]`` holds the current position and is updated on
    return.  Positions below ``floor`` are treated as fixed.  Returns
    ``(status, nodes)`` with status FOUND, EXHAUSTED or PAUSED.

    ``forward`` rejects a color that leaves a nearby uncolored vertex with no
    option; ``tight`` also requires that the remaining vertices fit into
    min(free capacity, unblocked uncolored vertices) summed over colors.
    Colors ``sym..K`` are treated as interchangeable singletons: only the
    least unused one is tried, which keeps the lexicographically first
    solution (pass ``K + 1`` to disable).
    """
    n = order.shape[0]
    pos = state[0]
    nodes = 0
    left = 0
    for c in range(1, K + 1):
        left += cap[c] - cnt[c]
    while True:
        if pos >= n:
            state[0] = pos
            return FOUND, nodes
        if pos < floor:
            state[0] = pos
            return EXHAUSTED, nodes
        v = order[pos]
        c = cur[pos] + 1
        placed = False
        while c <= K:
            if c > sym and cnt[c - 1] == 0:
                break
            if blocked[v, c] == 0 and cnt[c] < cap[c]:
                _apply(v, c, idx, end, blocked, 1)
                cnt[c] += 1
                left -= 1
                nodes += 1
                ok = left >= n - pos - 1
                if ok and forward:
                    for t in range(end[v, c]):
                        u = idx[v, t]
                        if posof[u] > pos:
                            dead = True
                            for cc in range(1, K + 1):
                                if blocked[u, cc] == 0 and cnt[cc] < cap[cc]:
                                    dead = False
                                    break
                            if dead:
                                ok = False
                                break
                if ok and tight:
                    room = 0
                    for cc in range(1, K + 1):
                        free = cap[cc] - cnt[cc]
                        if free <= 0:
                            continue
                        avail = 0
                        for p2 in range(pos + 1, n):
                            if blocked[order[p2], cc] == 0:
                                avail += 1
                                if avail >= free:
                                    break
                        room += min(free, avail)
                    ok = room >= n - pos - 1
                if ok:
                    cur[pos] = c
                    placed = True
                    break
                _apply(v, c, idx, end, blocked, -1)
                cnt[c] -= 1
                left += 1
            c += 1
        if placed:
            pos += 1
            if pos < n:
                cur[pos] = 0
            if nodes >= node_limit:
                state[0] = pos
                return PAUSED, nodes
        else:
            cur[pos] = 0
            pos -= 1
            if pos >= floor:
                w = order[pos]
                cw = cur[pos]
                _apply(w, cw, idx, end, blocked, -1)
                cnt[cw] -= 1
                left += 1
            if nodes >= node_limit:
                state[0] = pos
                return PAUSED, nodes
