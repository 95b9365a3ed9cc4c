"""Ovoids, spreads and distance-2 ovoids in Moore-graph incidence geometries.

Two same-side vertices of a (q+1, g)-Moore graph are *opposite* when they are
at distance g/2.  An ovoid is a set of q^(g/4) + 1 pairwise opposite points
such that every vertex lies within distance g/4 of one of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .clique import enumerate_cliques_of_size, max_clique
from .errors import BudgetExceeded, EvenCharacteristic, NotAnOvoid, NotApplicable
from .ffield import factor_prime_power
from .generators import POINT, RHO, CoordLabel
from .graph import Graph, girth, regularity
from .report import Report


def moore_parameters(g: Graph) -> tuple[int, int]:
    """``(q, girth)`` of a regular incidence graph, preferring ``meta`` when present."""
    k = regularity(g)
    if k is None:
        raise NotApplicable("host graph is not regular")
    q = g.meta.get("q", k - 1)
    gi = g.meta.get("g") or girth(g)
    return int(q), int(gi)


@dataclass(frozen=True)
class Ovoid:
    vertices: tuple[int, ...]
    host: Graph
    g: int

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def labels(self) -> list:
        if self.host.labels is None:
            return list(self.vertices)
        return [self.host.labels[v] for v in self.vertices]


def expected_ovoid_size(q: int, g: int) -> int | None:
    """q^(g/4) + 1, or None when g/4 is not an integer (g = 6: no same-side pair is opposite)."""
    if g % 4:
        return None
    return q ** (g // 4) + 1


def verify_ovoid(g: Graph, S: Iterable[int], girth_value: int | None = None) -> Report:
    """Check cardinality, pairwise opposition, covering radius g/4 and one-sidedness."""
    S = sorted(set(int(v) for v in S))
    q, gi = moore_parameters(g)
    if girth_value is not None:
        gi = girth_value
    rep = Report("ovoid")
    want = expected_ovoid_size(q, gi)
    rep.details.update(size=len(S), expected=want, q=q, g=gi)
    rep.checks["cardinality"] = want is not None and len(S) == want
    sides = g.bipartition()
    rep.checks["one side"] = bool(S) and sides is not None and len({sides[v] for v in S}) == 1
    D = g.distances
    half = gi // 2
    idx = np.asarray(S, dtype=np.int64)
    sub = D[np.ix_(idx, idx)] if len(S) else np.zeros((0, 0), dtype=np.int16)
    off = ~np.eye(len(S), dtype=bool)
    bad = np.argwhere(off & (sub != half))
    rep.checks["mutually opposite"] = bad.size == 0
    if bad.size:
        i, j = bad[0]
        rep.details["first non-opposite pair"] = (S[i], S[j], int(sub[i, j]))
    if len(S):
        reach = D[idx].min(axis=0)
        radius = gi // 4
        uncovered = np.flatnonzero(reach > radius)
    else:
        uncovered = np.arange(g.n)
    rep.checks["covering"] = uncovered.size == 0
    if uncovered.size:
        rep.details["uncovered"] = int(uncovered.size)
    return rep


def partitions_opposite_side(g: Graph, S: Iterable[int]) -> bool:
    """True iff every vertex on the other side has exactly one neighbor in S."""
    S = set(S)
    sides = g.bipartition()
    s0 = {sides[v] for v in S}
    if len(s0) != 1:
        return False
    other = 1 - s0.pop()
    return all(len(S.intersection(g.adj[v])) == 1 for v in range(g.n) if sides[v] == other)


def least_nonsquare(q: int) -> int:
    from .ffield import make_field
    F = make_field(q)
    squares = {F.mul(x, x) for x in range(q)}
    return next(a for a in range(1, q) if a not in squares)


def gq_section(g: Graph, t: int, twist: tuple[int, int] = (0, 0)) -> list[int]:
    """Vertices {(ρ,ρ,ρ)_0} ∪ {(i, j, α·i + β·j + t)_0 : i, j} of a coordinatized GQ, unverified.

    ``twist`` is ``(α, β)``.  Two field points ``(i,j,k)``, ``(i',j',k')`` with
    ``i != i'`` are collinear iff ``(k-k')(i-i') = (j-j')**2``; the set is
    therefore an ovoid exactly when ``x**2 - β x - α`` has no root in GF(q).
    The untwisted section ``(0, 0)`` never is: the line ``(0,b,t)_1``
    carries all ``q`` points ``(w,b,t)_0``.
    """
    from .ffield import make_field
    q = g.meta.get("q")
    if g.meta.get("family") != "gq" or q is None:
        raise NotApplicable("needs a graph built by gen_gq_incidence")
    F = make_field(q)
    alpha, beta = twist
    idx = g.index_of
    out = [idx[CoordLabel(POINT, (RHO, RHO, RHO))]]
    for i in range(q):
        for j in range(q):
            k = F.add(F.add(F.mul(alpha, i), F.mul(beta, j)), t)
            out.append(idx[CoordLabel(POINT, (i, j, k))])
    return sorted(out)


def construct_gq_ovoid(g: Graph, third_coord: int = 0, twist: tuple[int, int] | None = None) -> Ovoid:
    """The ovoid {(ρ,ρ,ρ)_0} ∪ {(i, j, ν·i + t)_0}, ν the least non-square of GF(q).

    Odd q only.  Different ``third_coord`` values give ovoids meeting exactly
    in (ρ,ρ,ρ)_0.  The result is verified; ``twist=(0, 0)`` (the plain
    coordinate plane k = t) always fails and raises NotAnOvoid.
    """
    q = g.meta.get("q")
    if q is None:
        raise NotApplicable("needs a graph built by gen_gq_incidence")
    p, _ = factor_prime_power(q)
    if p == 2:
        raise EvenCharacteristic(f"q={q} is even; the construction is defined for odd q")
    if not 0 <= third_coord < q:
        raise ValueError(f"third coordinate {third_coord} is not an element of GF({q})")
    if twist is None:
        twist = (least_nonsquare(q), 0)
    S = gq_section(g, third_coord, twist)
    rep = verify_ovoid(g, S, girth_value=8)
    if not rep.ok:
        raise NotAnOvoid(f"section t={third_coord}, twist={twist} failed: {rep.failures()}")
    return Ovoid(tuple(S), g, 8)


def opposite_masks(g: Graph, vertices: list[int], girth_value: int) -> list[int]:
    """Bitmasks (over positions in ``vertices``) of the same-side opposition graph."""
    D = g.distances
    idx = np.asarray(vertices, dtype=np.int64)
    sub = D[np.ix_(idx, idx)] == girth_value // 2
    out = []
    for row in sub:
        m = 0
        for j in np.flatnonzero(row):
            m |= 1 << int(j)
        out.append(m)
    return out


class OppositeSet(NamedTuple):
    vertices: list[int]
    proven_maximum: bool


def search_opposite_set(g: Graph, side: int, target: int | None = None, budget: int | None = None,
                        girth_value: int | None = None) -> OppositeSet:
    """Largest set of pairwise opposite vertices on ``side`` (max clique of the opposition graph).

    Stops early once ``target`` is reached.  ``budget`` caps search nodes;
    exhausting it raises BudgetExceeded with the best set in ``.best``.
    """
    gi = girth_value or moore_parameters(g)[1]
    cand = g.side_vertices(side) if g.side is not None else [v for v, s in enumerate(g.bipartition()) if s == side]
    masks = opposite_masks(g, cand, gi)
    try:
        found = max_clique(masks, target=target, node_budget=budget)
    except BudgetExceeded as exc:
        exc.best = [cand[i] for i in exc.best]
        raise
    verts = sorted(cand[i] for i in found)
    proven = target is None or len(verts) < target
    return OppositeSet(verts, proven)


def verify_distance2_ovoid(g: Graph, S: Iterable[int]) -> Report:
    """Every line meets S exactly once; S lies on the point side.

    On a (q+1,12)-Moore host the size must also be q^4 + q^2 + 1.
    """
    S = set(int(v) for v in S)
    sides = g.bipartition()
    rep = Report("distance-2 ovoid")
    if sides is None:
        rep.checks["bipartite"] = False
        return rep
    rep.checks["points only"] = bool(S) and all(sides[v] == POINT for v in S)
    lines = [v for v in range(g.n) if sides[v] != POINT]
    counts = [len(S.intersection(g.adj[v])) for v in lines]
    rep.checks["each line meets S once"] = bool(lines) and all(c == 1 for c in counts)
    k = regularity(g)
    if k is not None and k >= 3 and girth(g) == 12:
        q = k - 1
        rep.details["expected"] = q ** 4 + q ** 2 + 1
        rep.checks["cardinality"] = len(S) == q ** 4 + q ** 2 + 1
    rep.details["size"] = len(S)
    return rep


def enumerate_ovoids(g: Graph, side: int, *, budget: int | None = None, girth_value: int | None = None) -> list[list[int]]:
    """All ovoids (side 0) or spreads (side 1) as sorted vertex lists."""
    q, gi = moore_parameters(g)
    if girth_value:
        gi = girth_value
    size = expected_ovoid_size(q, gi)
    if size is None:
        return []
    cand = g.side_vertices(side)
    masks = opposite_masks(g, cand, gi)
    # with girth 8 opposition plus the right size already forces covering
    cliques = enumerate_cliques_of_size(masks, size, node_budget=budget)
    out = [[cand[i] for i in c] for c in cliques]
    if gi != 8:
        out = [c for c in out if verify_ovoid(g, c, gi).ok]
    return out


def disjoint_ovoid_pair_exists(g: Graph, budget: int | None = None) -> bool | None:
    """Two disjoint ovoids, or two disjoint spreads?  None when the budget runs out."""
    q, gi = moore_parameters(g)
    if gi != 8:
        raise NotApplicable("defined for girth-8 Moore graphs")
    for side in (0, 1):
        try:
            ovoids = enumerate_ovoids(g, side, budget=budget, girth_value=gi)
        except BudgetExceeded:
            return None
        masks = []
        for o in ovoids:
            m = 0
            for v in o:
                m |= 1 << v
            masks.append(m)
        for i in range(len(masks)):
            for j in range(i + 1, len(masks)):
                if not masks[i] & masks[j]:
                    return True
    return False
