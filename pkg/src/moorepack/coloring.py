"""Packing colorings: data model, verifier and the constructive colorings.

A packing coloring assigns each vertex a positive color so that two vertices
sharing color ``i`` are at distance at least ``i + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bounds import moore_bound
from .errors import NotMoore, OvoidInvalid, QTooSmall
from .geometry import Ovoid, construct_gq_ovoid, verify_ovoid
from .graph import Graph, diameter, girth, regularity
from .report import Report


@dataclass(frozen=True)
class PackingColoring:
    colors: tuple[int, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def k(self) -> int:
        return max(self.colors, default=0)

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return dict(sorted(out.items()))

    def class_sizes(self) -> dict[int, int]:
        return {c: len(vs) for c, vs in self.classes().items()}

    def class_stats(self, g: Graph | None = None) -> dict[int, dict[str, int]]:
        """Per color: total size and, when the graph has sides, the split into side 0 / side 1."""
        sides = g.bipartition() if g is not None else None
        out = {}
        for c, vs in self.classes().items():
            row = {"size": len(vs)}
            if sides is not None:
                row["side0"] = sum(1 for v in vs if sides[v] == 0)
                row["side1"] = len(vs) - row["side0"]
            out[c] = row
        return out

    def gaps(self) -> list[int]:
        used = set(self.colors)
        return [c for c in range(1, self.k + 1) if c not in used]

    def singular_classes(self) -> list[int]:
        return [c for c, s in self.class_sizes().items() if s == 1]


def verify_coloring(g: Graph, c: PackingColoring | Sequence[int]) -> Report:
    """Check the packing condition; on failure ``details['violation']`` is ``(u, v, color, distance)``."""
    if not isinstance(c, PackingColoring):
        c = PackingColoring(tuple(c))
    rep = Report("packing coloring")
    rep.checks["length"] = c.n == g.n
    rep.checks["positive colors"] = all(x >= 1 for x in c.colors)
    if not (rep.checks["length"] and rep.checks["positive colors"]):
        return rep
    D = g.distances
    first = None
    for color, vs in c.classes().items():
        if len(vs) < 2:
            continue
        idx = np.asarray(vs, dtype=np.int64)
        sub = D[np.ix_(idx, idx)]
        bad = np.argwhere(np.triu(sub <= color, k=1))
        if bad.size:
            i, j = bad[0]
            cand = (vs[i], vs[j], color, int(sub[i, j]))
            if first is None or cand[:2] < first[:2]:
                first = cand
    rep.checks["distance condition"] = first is None
    if first is not None:
        rep.details["violation"] = first
    rep.details["k"] = c.k
    rep.details["num_colors"] = c.num_colors
    rep.details["gaps"] = c.gaps()
    rep.details["class_stats"] = c.class_stats(g)
    return rep


def _sequential_singletons(colors: list[int], start: int) -> int:
    nxt = start
    for v, col in enumerate(colors):
        if col == 0:
            colors[v] = nxt
            nxt += 1
    return nxt - 1


def _moore_params(g: Graph, want_g: int) -> int:
    k = regularity(g)
    sides = g.bipartition()
    if k is None or k < 3 or sides is None:
        raise NotMoore("not a regular bipartite graph of degree >= 3")
    q = k - 1
    if g.n != moore_bound(k, want_g) or girth(g) != want_g:
        raise NotMoore(f"not a ({k},{want_g})-Moore graph")
    return q


def color_moore6(g: Graph) -> PackingColoring:
    """Color 1 on the line side, a fresh color for every point: q^2 + q + 2 colors."""
    try:
        _moore_params(g, 6)
    except NotMoore as exc:
        raise NotMoore(f"color_moore6: {exc}") from None
    sides = g.bipartition()
    colors = [1 if sides[v] == 1 else 0 for v in range(g.n)]
    _sequential_singletons(colors, 2)
    return PackingColoring(tuple(colors), meta={"construction": "moore6"})


def color_moore8(g: Graph) -> PackingColoring:
    """Lines get 1, ovoid O(0) gets 2, O(1) minus (ρ,ρ,ρ)_0 gets 3, singletons elsewhere."""
    q = _moore_params(g, 8)
    O = construct_gq_ovoid(g, 0)
    O2 = construct_gq_ovoid(g, 1)
    sides = g.bipartition()
    colors = [1 if sides[v] == 1 else 0 for v in range(g.n)]
    for v in O:
        colors[v] = 2
    for v in O2:
        if colors[v] == 0:
            colors[v] = 3
    _sequential_singletons(colors, 4)
    return PackingColoring(tuple(colors), meta={"construction": "moore8", "q": q})


# -- girth 12 --------------------------------------------------------------

@dataclass
class TreeLabeling:
    """Labels ``(i, j, k)`` of a spanning tree hanging from the edge ``x``-``y``.

    ``j`` is the distance to the edge, ``k`` the side tag of the label
    (``x = (0,0,0)``, ``y = (0,0,1)``), and the children of ``(i, j, k)`` are
    ``(i*q + r, j+1, 1-k)`` for ``0 <= r < q``, ordered by vertex index.
    """

    q: int
    x: int
    y: int
    label_of: dict[int, tuple[int, int, int]]
    vertex_of: dict[tuple[int, int, int], int]

    def block(self, alpha: int, i: int) -> list[tuple[int, int, int]]:
        """B^alpha_i: the labels (i*q + r, alpha)_0 for 0 <= r < q."""
        return [(i * self.q + r, alpha, 0) for r in range(self.q)]

    def blocks(self, alpha: int) -> list[list[tuple[int, int, int]]]:
        return [self.block(alpha, i) for i in range(self.q ** (alpha - 1))]

    def level_counts(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (_, j, k) in self.label_of.values():
            out[(j, k)] = out.get((j, k), 0) + 1
        return dict(sorted(out.items()))

    def parent(self, label):
        return tree_parent(self.q, label)

    def tree_distance(self, a, b) -> int:
        return tree_distance(self.q, a, b)


def tree_parent(q: int, label):
    i, j, k = label
    if j == 0:
        return (0, 0, 1 - k)
    return (i // q, j - 1, 1 - k)


def _root_side(label) -> int:
    _, j, k = label
    return (k - j) % 2


def tree_distance(q: int, a, b) -> int:
    """Distance between two labels inside the labeled tree."""
    ra, rb = _root_side(a), _root_side(b)
    if ra != rb:
        return a[1] + b[1] + 1
    (ia, ja, _), (ib, jb, _) = a, b
    # climb to a common level, then together until the indices agree
    while ja > jb:
        ia //= q
        ja -= 1
    while jb > ja:
        ib //= q
        jb -= 1
    lca = ja
    while ia != ib:
        ia //= q
        ib //= q
        lca -= 1
    return (a[1] - lca) + (b[1] - lca)


def build_labeled_tree(g: Graph, x: int, y: int) -> TreeLabeling:
    try:
        q = _moore_params(g, 12)
    except NotMoore as exc:
        raise NotMoore(f"build_labeled_tree: {exc}") from None
    if not g.has_edge(x, y):
        raise ValueError(f"{x}-{y} is not an edge")
    D = g.distances
    to_edge = np.minimum(D[x], D[y])
    label_of = {x: (0, 0, 0), y: (0, 0, 1)}
    frontier = [x, y]
    while frontier:
        nxt = []
        for v in frontier:
            i, j, k = label_of[v]
            kids = [u for u in g.adj[v] if to_edge[u] == j + 1]
            if kids and len(kids) != q:
                raise NotMoore(f"vertex {v} has {len(kids)} children, expected {q}")
            for r, u in enumerate(kids):
                label_of[u] = (i * q + r, j + 1, 1 - k)
                nxt.append(u)
        frontier = nxt
    if len(label_of) != g.n:
        raise NotMoore("tree does not span the graph")
    vertex_of = {lab: v for v, lab in label_of.items()}
    return TreeLabeling(q, x, y, label_of, vertex_of)


def moore12_assignment(q: int, ovoid_level5: Iterable[int]) -> dict[int, list[tuple[int, int, int]]]:
    """Label sets for colors 2, 3 and 4 of the girth-12 construction.

    ``ovoid_level5`` are the indices ``a`` of the ovoid members ``(a,5)_0``
    (the ovoid's other member is ``x = (0,0)_0``).  Within a block the
    smallest labels outside the ovoid are taken.

    * color 2: ``(0,1)_0``; two per block for ``B^5_i`` (i < q^3),
      ``B^3_i`` (q <= i < q^2) and ``B^2_i`` (i < q), the first of each pair
    * color 3: the second of each pair
    * color 4: the next free label of ``B^5_{iq}`` for ``i < q``
    """
    if q < 4:
        raise QTooSmall(f"q={q}: each level-5 block must keep at least 3 labels outside the ovoid")
    in_O = set(ovoid_level5)
    two: list[tuple[int, int, int]] = [(0, 1, 0)]
    three: list[tuple[int, int, int]] = []
    four: list[tuple[int, int, int]] = []
    used: set[tuple[int, int, int]] = set()

    def free(alpha, i):
        blk = [(i * q + r, alpha, 0) for r in range(q)]
        if alpha == 5:
            blk = [lab for lab in blk if lab[0] not in in_O]
        return [lab for lab in blk if lab not in used]

    groups = [(5, range(q ** 3)), (3, range(q, q * q)), (2, range(q))]
    for alpha, rng in groups:
        for i in rng:
            avail = free(alpha, i)
            a, b = avail[0], avail[1]
            two.append(a)
            three.append(b)
            used.update((a, b))
    for i in range(q):
        four.append(free(5, i * q)[0])
    return {2: two, 3: three, 4: four}


def color_moore12(g: Graph, O: Ovoid | Iterable[int], x: int, y: int) -> PackingColoring:
    """Girth-12 constructive coloring with q^5 + q^4 - 2q^3 - q^2 + 4 colors.

    Needs q >= 4.  The result is checked with :func:`verify_coloring`; the
    report sits in ``meta['verification']`` and a failure is returned, not
    raised.
    """
    k = regularity(g)
    if k is not None and k - 1 < 4:
        raise QTooSmall(f"q={k - 1}; the construction needs q >= 4")
    q = _moore_params(g, 12)
    members = tuple(O.vertices if isinstance(O, Ovoid) else sorted(set(O)))
    rep = verify_ovoid(g, members, girth_value=12)
    if not rep.ok:
        raise OvoidInvalid(f"not an ovoid: {rep.failures()}")
    if x not in members:
        raise OvoidInvalid(f"x={x} is not in the ovoid")
    T = build_labeled_tree(g, x, y)
    level5 = []
    for v in members:
        if v == x:
            continue
        i, j, kk = T.label_of[v]
        if (j, kk) != (5, 0):
            raise OvoidInvalid(f"ovoid member {v} has label {(i, j, kk)}, expected level 5 on side 0")
        level5.append(i)
    picks = moore12_assignment(q, level5)
    colors = [0] * g.n
    for v in members:
        colors[v] = 5
    for v, (_, _, kk) in T.label_of.items():
        if kk == 1:
            colors[v] = 1
    for col, labs in picks.items():
        for lab in labs:
            v = T.vertex_of[lab]
            if colors[v]:
                raise AssertionError(f"label {lab} already colored {colors[v]}")
            colors[v] = col
    _sequential_singletons(colors, 6)
    out = PackingColoring(tuple(colors), meta={"construction": "moore12", "q": q, "x": x, "y": y})
    out.meta["verification"] = verify_coloring(g, out)
    return out


def diameter_singleton_check(g: Graph, c: PackingColoring) -> bool:
    """In a valid coloring every class with color >= diameter has one vertex."""
    d = diameter(g)
    return all(size == 1 for col, size in c.class_sizes().items() if col >= d)
