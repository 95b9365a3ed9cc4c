"""Graph families: coordinatized Moore graphs, the embedded (3,12)-cage and small classics.

Vertex order is canonical: points (side 0) before lines (side 1), and within
a side labels sort with every field coordinate below the symbol ρ, so
all-field triples come first, then ``(ρ,b,c)``, ``(ρ,ρ,c)``, ``(ρ,ρ,ρ)``.
"""
from __future__ import annotations

import hashlib
import json
import os
import re
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import NamedTuple

from .bounds import moore_bound
from .errors import DualMismatch, UnknownName
from .ffield import FieldTable, factor_prime_power, make_field
from .graph import Graph, diameter, girth, regularity
from .report import Report

RHO = None
"""The non-field coordinate symbol ρ."""

POINT, LINE = 0, 1


def _coord_key(x):
    return (1, 0) if x is RHO else (0, x)


def _coord_str(x):
    return "ρ" if x is RHO else str(x)


class CoordLabel(NamedTuple):
    """A vertex ``(a, b, c)_side`` of the coordinatized generalized quadrangle."""

    side: int
    coords: tuple

    def sort_key(self):
        return (self.side, tuple(_coord_key(x) for x in self.coords))

    def __str__(self):
        return "(" + ",".join(_coord_str(x) for x in self.coords) + f")_{self.side}"


class PGLabel(NamedTuple):
    """A point or line ``[x:y:z]_side`` of PG(2,q); first nonzero coordinate is 1."""

    side: int
    coords: tuple

    def sort_key(self):
        return (self.side, self.coords)

    def __str__(self):
        return "[" + ":".join(str(x) for x in self.coords) + f"]_{self.side}"


_COORD_RE = re.compile(r"^\(([^)]*)\)_([01])$")
_PG_RE = re.compile(r"^\[([^\]]*)\]_([01])$")


def parse_label(text: str):
    """Inverse of ``str()`` for coordinate labels; other strings come back unchanged."""
    m = _COORD_RE.match(text)
    if m:
        parts = m.group(1).split(",")
        if len(parts) == 3:
            return CoordLabel(int(m.group(2)), tuple(RHO if p in ("ρ", "r", "rho") else int(p) for p in parts))
    m = _PG_RE.match(text)
    if m:
        parts = m.group(1).split(":")
        if len(parts) == 3:
            return PGLabel(int(m.group(2)), tuple(int(p) for p in parts))
    return text


def _from_labeled_edges(labels, edges, meta) -> Graph:
    labels = sorted(labels, key=lambda lab: lab.sort_key())
    index = {lab: i for i, lab in enumerate(labels)}
    adj = [set() for _ in labels]
    for a, b in edges:
        i, j = index[a], index[b]
        adj[i].add(j)
        adj[j].add(i)
    return Graph(adj, labels=labels, side=[lab.side for lab in labels], meta=meta)


# -- projective planes -----------------------------------------------------

def _pg_points(F: FieldTable):
    out = []
    for v in product(range(F.q), repeat=3):
        nz = next((x for x in v if x), None)
        if nz == 1:
            out.append(v)
    return out


def gen_pg_incidence(q: int) -> Graph:
    """Point-line incidence graph of PG(2,q): the (q+1,6)-Moore graph of order 2(q²+q+1)."""
    F = make_field(q)
    pts = _pg_points(F)
    mul, add = F.mul_table, F.add_table
    edges = []
    for p in pts:
        for l in pts:
            s = add[add[mul[p[0], l[0]], mul[p[1], l[1]]], mul[p[2], l[2]]]
            if s == 0:
                edges.append((PGLabel(POINT, p), PGLabel(LINE, l)))
    labels = [PGLabel(POINT, p) for p in pts] + [PGLabel(LINE, l) for l in pts]
    return _from_labeled_edges(labels, edges, {"family": "pg", "q": q, "g": 6})


# -- generalized quadrangle ------------------------------------------------

def gq_labels(q: int, side: int) -> list[CoordLabel]:
    F = range(q)
    out = [CoordLabel(side, (a, b, c)) for a in F for b in F for c in F]
    out += [CoordLabel(side, (RHO, b, c)) for b in F for c in F]
    out += [CoordLabel(side, (RHO, RHO, c)) for c in F]
    out.append(CoordLabel(side, (RHO, RHO, RHO)))
    return out


def gq_line_neighbors(F: FieldTable, line: CoordLabel) -> list[CoordLabel]:
    """Points on ``line``, from the line-side incidence rules."""
    a, b, c = line.coords
    q = F.q
    P = POINT
    if a is not RHO:
        # (w, aw + b, a^2 w + 2ab + c)_0 and (ρ, a, c)_0
        ab = F.mul(a, b)
        two_ab = F.add(ab, ab)
        pts = []
        for w in range(q):
            aw = F.mul(a, w)
            pts.append(CoordLabel(P, (w, F.add(aw, b), F.add(F.add(F.mul(a, aw), two_ab), c))))
        pts.append(CoordLabel(P, (RHO, a, c)))
        return pts
    if b is not RHO:
        # (ρ,b,c)_1: (c, b, w)_0 and (ρ, ρ, c)_0
        return [CoordLabel(P, (c, b, w)) for w in range(q)] + [CoordLabel(P, (RHO, RHO, c))]
    if c is not RHO:
        return [CoordLabel(P, (RHO, c, w)) for w in range(q)] + [CoordLabel(P, (RHO, RHO, RHO))]
    return [CoordLabel(P, (RHO, RHO, w)) for w in range(q)] + [CoordLabel(P, (RHO, RHO, RHO))]


def gq_point_neighbors(F: FieldTable, point: CoordLabel) -> list[CoordLabel]:
    """Lines through ``point``, from the point-side incidence rules."""
    i, j, k = point.coords
    q = F.q
    L = LINE
    if i is not RHO:
        # (w, j - w i, w^2 i - 2 w j + k)_1 and (ρ, j, i)_1
        lines = []
        for w in range(q):
            wi = F.mul(w, i)
            wj = F.mul(w, j)
            third = F.add(F.sub(F.mul(w, wi), F.add(wj, wj)), k)
            lines.append(CoordLabel(L, (w, F.sub(j, wi), third)))
        lines.append(CoordLabel(L, (RHO, j, i)))
        return lines
    if j is not RHO:
        return [CoordLabel(L, (j, w, k)) for w in range(q)] + [CoordLabel(L, (RHO, RHO, j))]
    if k is not RHO:
        return [CoordLabel(L, (RHO, w, k)) for w in range(q)] + [CoordLabel(L, (RHO, RHO, RHO))]
    return [CoordLabel(L, (RHO, RHO, w)) for w in range(q)] + [CoordLabel(L, (RHO, RHO, RHO))]


def gq_dual_discrepancy(q: int) -> tuple[set, set]:
    """Edges produced only by the line-side rules, and only by the point-side rules."""
    F = make_field(q)
    from_lines = {(p, l) for l in gq_labels(q, LINE) for p in gq_line_neighbors(F, l)}
    from_points = {(p, l) for p in gq_labels(q, POINT) for l in gq_point_neighbors(F, p)}
    return from_lines - from_points, from_points - from_lines


def gen_gq_incidence(q: int, *, check_dual: bool = True) -> Graph:
    """Incidence graph of the coordinatized generalized quadrangle of order q.

    Edges come from the line-side rules.  With ``check_dual`` the point-side
    rules are evaluated as well and any disagreement raises DualMismatch.
    """
    factor_prime_power(q)
    F = make_field(q)
    labels = gq_labels(q, POINT) + gq_labels(q, LINE)
    edges = [(p, l) for l in gq_labels(q, LINE) for p in gq_line_neighbors(F, l)]
    if check_dual:
        only_lines, only_points = gq_dual_discrepancy(q)
        if only_lines or only_points:
            raise DualMismatch(
                f"q={q}: {len(only_lines)} edges only from line rules, {len(only_points)} only from point rules; "
                f"e.g. {sorted(map(str, map(tuple, only_lines)))[:3]} / {sorted(map(str, map(tuple, only_points)))[:3]}")
    return _from_labeled_edges(labels, edges, {"family": "gq", "q": q, "g": 8})


# -- the (3,12)-cage -------------------------------------------------------

CAGE312_ADJ_SHA256 = "4935ecb1617ce59febfb2985639878d4796581b85457187fd0c4fac083775a5b"
CAGE312_COLORING_SHA256 = "06f1b49ba4d500af0dca1e7b4f215fa2bd90f9943f14adad9f8ea9fc8a8ab5a8"


def fixture_path(name: str) -> Path:
    """Location of a shipped fixture; ``MOOREPACK_FIXTURES`` points at an alternative directory."""
    override = os.environ.get("MOOREPACK_FIXTURES")
    if override:
        return Path(override) / name
    return Path(str(resources.files("moorepack") / "data" / name))


def _sha(obj) -> str:
    return hashlib.sha256(json.dumps(obj, separators=(",", ":")).encode()).hexdigest()


@lru_cache(maxsize=None)
def _load_cage312_fixture(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if _sha(data["adjacency"]) != CAGE312_ADJ_SHA256:
        raise ValueError(f"{path}: adjacency list does not match the embedded (3,12)-cage")
    if _sha(data["coloring"]) != CAGE312_COLORING_SHA256:
        raise ValueError(f"{path}: coloring does not match the embedded 26-color vector")
    return data


def cage312_fixture() -> dict:
    return _load_cage312_fixture(str(fixture_path("cage312.json")))


def gen_cage_3_12() -> Graph:
    """The 126-vertex (3,12)-Moore graph.

    The fixture numbers vertices 1..126; vertex ``i`` there is index ``i - 1``
    here.  Vertices 1..63 form side 0 and 64..126 side 1.
    """
    adj1 = cage312_fixture()["adjacency"]
    adj = [[v - 1 for v in nb] for nb in adj1]
    side = [0 if i < 63 else 1 for i in range(126)]
    labels = [str(i + 1) for i in range(126)]
    return Graph(adj, labels=labels, side=side, meta={"family": "cage312", "q": 2, "g": 12})


def cage312_paper_coloring() -> list[int]:
    """The shipped 26-color packing coloring, indexed by 0-based vertex."""
    return list(cage312_fixture()["coloring"])


# -- classical graphs ------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph([[v for v in range(n) if v != u] for u in range(n)], meta={"family": "complete", "n": n})


def complete_bipartite(n: int, m: int | None = None) -> Graph:
    m = n if m is None else m
    adj = [list(range(n, n + m)) for _ in range(n)] + [list(range(n)) for _ in range(m)]
    return Graph(adj, side=[0] * n + [1] * m, meta={"family": "complete_bipartite", "n": n, "m": m})


def cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph([[(u - 1) % m, (u + 1) % m] for u in range(m)], meta={"family": "cycle", "n": m})


def path(n: int) -> Graph:
    return Graph([[v for v in (u - 1, u + 1) if 0 <= v < n] for u in range(n)], meta={"family": "path", "n": n})


def petersen() -> Graph:
    # outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges, meta={"family": "petersen", "k": 3, "g": 5})


def hoffman_singleton() -> Graph:
    """Five pentagons P_h and five pentagrams Q_i; P_h[j] ~ Q_i[h*i + j mod 5]."""
    def P(h, j):
        return 5 * h + j

    def Q(i, j):
        return 25 + 5 * i + j

    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((P(h, j), P(h, (j + 1) % 5)))
            edges.append((Q(h, j), Q(h, (j + 2) % 5)))
    for h in range(5):
        for j in range(5):
            for i in range(5):
                edges.append((P(h, j), Q(i, (h * i + j) % 5)))
    return Graph.from_edges(50, edges, meta={"family": "hoffman_singleton", "k": 7, "g": 5})


CLASSICAL = {
    "complete": complete,
    "k": complete,
    "complete_bipartite": complete_bipartite,
    "kbip": complete_bipartite,
    "cycle": cycle,
    "c": cycle,
    "path": path,
    "petersen": petersen,
    "hoffman_singleton": hoffman_singleton,
    "hs": hoffman_singleton,
    "heawood": lambda: gen_pg_incidence(2),
    "tutte_coxeter": lambda: gen_gq_incidence(2),
}


def gen_classical(name: str, *params: int) -> Graph:
    try:
        make = CLASSICAL[name.lower().replace("-", "_")]
    except KeyError:
        raise UnknownName(f"unknown classical graph {name!r}; known: {sorted(CLASSICAL)}") from None
    return make(*params)


# -- generalized polygon axioms --------------------------------------------

def verify_generalized_polygon(g: Graph, n_gon: int) -> Report:
    """Check the incidence graph against the symmetric generalized n-gon axioms."""
    rep = Report(f"generalized {n_gon}-gon")
    sides = g.bipartition()
    rep.checks["bipartite"] = sides is not None
    k = regularity(g)
    rep.details["degree"] = k
    # both sides (q+1)-regular, with q >= 1
    rep.checks["GP1 biregular q+1"] = k is not None and k >= 2
    gi = girth(g)
    dm = diameter(g)
    rep.details.update(girth=gi, diameter=dm, order=g.n)
    rep.checks["GP2 no 4-cycle"] = gi > 4
    rep.checks["GP3 diameter"] = dm == n_gon
    rep.checks["GP3 girth"] = gi == 2 * n_gon
    if k is not None and k >= 3:
        rep.checks["Moore order"] = g.n == moore_bound(k, 2 * n_gon)
    if sides is not None:
        rep.details["side_sizes"] = (sides.count(0), sides.count(1))
    return rep
