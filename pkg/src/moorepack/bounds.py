"""Closed-form bounds on packing chromatic numbers of Moore graphs.

All values are exact: integers or :class:`fractions.Fraction`.  Each entry
records the hypothesis under which it is a theorem and whether (q, g)
satisfies it, so a bound is never applied outside its range silently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotApplicable
from .ffield import factor_prime_power


def moore_bound(k: int, g: int) -> int:
    """Minimum order n0(k, g) of a k-regular graph of girth g."""
    if k < 2 or g < 3:
        raise ValueError("need k >= 2 and g >= 3")
    if k == 2:
        return g
    if g % 2 == 0:
        num = 2 * (k - 1) ** (g // 2) - 2
    else:
        num = k * (k - 1) ** ((g - 1) // 2) - 2
    n, r = divmod(num, k - 2)
    assert r == 0
    return n


@dataclass
class BoundEntry:
    name: str
    value: Fraction
    hypothesis: str
    applicable: bool
    anchor: str

    @property
    def ceil(self) -> int:
        return math.ceil(self.value)

    @property
    def floor(self) -> int:
        return math.floor(self.value)

    def to_dict(self) -> dict:
        v = Fraction(self.value)
        return {
            "name": self.name,
            "value": str(v),
            "ceil": math.ceil(v),
            "hypothesis": self.hypothesis,
            "applicable": self.applicable,
            "anchor": self.anchor,
        }


@dataclass
class BoundReport:
    context: dict
    entries: list[BoundEntry] = field(default_factory=list)

    def add(self, name, value, hypothesis, applicable, anchor):
        self.entries.append(BoundEntry(name, Fraction(value), hypothesis, bool(applicable), anchor))

    def __getitem__(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entries)

    def get(self, name: str, default=None):
        return self[name] if name in self else default

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def to_dict(self) -> dict:
        return {"context": dict(self.context), "entries": [e.to_dict() for e in self.entries]}


def _context(q: int, g: int) -> dict:
    n = moore_bound(q + 1, g)
    return {"q": q, "g": g, "n": n, "diameter": g // 2}


def girth12_lower(q: int) -> Fraction:
    return Fraction(q**5 - 2 * q**4 - 4 * q**2 + 9 * q - 18) + Fraction(42, q + 2)


def girth12_upper(q: int) -> int:
    return q**5 + q**4 - 2 * q**3 - q**2 + 4


def girth8_exact(q: int) -> int:
    return (q * q + 1) * (q - 1) + 4


def class4_tight(q: int) -> Fraction:
    """2q^3 - 2f(q) with f(q) = (q^4 + q^3 - q^2 - q - 1) / (q^2 + 2q + 2)."""
    f = Fraction(q**4 + q**3 - q**2 - q - 1, q**2 + 2 * q + 2)
    return 2 * q**3 - 2 * f


def bracket(q: int, g: int) -> BoundReport:
    """Lower/upper/exact values of the packing chromatic number of a (q+1, g)-Moore graph."""
    p, _ = factor_prime_power(q)
    if g not in (6, 8, 12):
        raise NotApplicable(f"girth {g} is not covered; use 6, 8 or 12")
    odd = p != 2
    rep = BoundReport(_context(q, g))
    if g == 6:
        v = q * q + q + 2
        rep.add("lower", v, "any (q+1,6)-Moore graph", True, "girth-6 exact value")
        rep.add("upper", v, "any (q+1,6)-Moore graph", True, "girth-6 exact value")
        rep.add("exact", v, "any (q+1,6)-Moore graph", True, "girth-6 exact value")
    elif g == 8:
        rep.add("lower", girth8_exact(q) - 1, "q odd", odd, "girth-8 bracket")
        rep.add("upper", girth8_exact(q), "q odd", odd, "girth-8 bracket")
        rep.add("exact", girth8_exact(q), "q odd, or q even and q <= 64", odd or q <= 64,
                "girth-8 exact value (pairwise-intersecting ovoids)")
        rep.add("two_disjoint_ovoids_value", girth8_exact(q) - 1,
                "attained iff the quadrangle has two disjoint ovoids or two disjoint spreads", True,
                "girth-8 disjoint-ovoid characterization")
    else:
        hyp = "q odd and q >= 9"
        ok = odd and q >= 9
        lo = girth12_lower(q)
        rep.add("lower", lo, hyp, ok, "girth-12 bracket")
        rep.add("lower_ceil", math.ceil(lo), hyp, ok, "girth-12 bracket, integer form")
        rep.add("upper", girth12_upper(q), hyp, ok, "girth-12 bracket")
    return rep


def class_caps(q: int, g: int) -> BoundReport:
    """Upper bounds on the size of each color class."""
    p, _ = factor_prime_power(q)
    odd = p != 2
    rep = BoundReport(_context(q, g))
    n = rep.context["n"]
    rep.add("class1", n // 2, "color 1 is independent; beta = n/2", True, "independence number")
    if g == 8:
        b4 = q * q + 1
        # the mixed points-and-lines case does not obey this cap: GQ(2) has 6
        # vertices with pairwise distance >= 3, three points and three lines
        rep.add("class2", b4, "colour-2 class inside one side of the bipartition", True, "girth-8 colour-2 bound")
        rep.add("class3", b4, "q prime power (beta_4 = q^2+1)", True, "mutually opposite set size")
        rep.add("beta4", b4, "q prime power", True, "mutually opposite set size")
        rep.add("singleton_from", 4, "diameter 4", True, "diameter")
    elif g == 12:
        hyp57 = "q odd, q not in {5, 7}"
        ok57 = odd and q not in (5, 7)
        rep.add("class2", Fraction(2 * (q + 1) * (q**4 + q**2 + 1), q + 2), "any (q+1,12)-Moore graph", True,
                "girth-12 colour-2 lemma")
        rep.add("class3", q**4 + q**2 + 1, "any (q+1,12)-Moore graph", True, "girth-12 colour-3 lemma")
        rep.add("class4", 2 * q**3 - 2 * q**2 + 2 * q, hyp57, ok57, "girth-12 colour-4 lemma")
        rep.add("class4_tight", class4_tight(q), hyp57, ok57, "girth-12 colour-4 lemma, before relaxing f(q)")
        rep.add("class5", q**3 + 1, hyp57, ok57, "mutually opposite set size")
        rep.add("singleton_from", 6, "diameter 6", True, "diameter")
    else:
        raise NotApplicable("class caps are tabulated for girth 8 and 12")
    return rep


def girth12_lower_from_caps(q: int) -> Fraction:
    """n - (sum of the five class caps) + 5, recomputed from :func:`class_caps`."""
    caps = class_caps(q, 12)
    n = caps.context["n"]
    total = sum(caps[f"class{i}"].value for i in range(1, 6))
    return n - total + 5


def girth12_class_sizes(q: int) -> dict[int, int]:
    """Class sizes of the girth-12 constructive coloring."""
    return {
        1: q**5 + q**4 + q**3 + q**2 + q + 1,
        2: q**3 + q**2 + 1,
        3: q**3 + q**2,
        4: q,
        5: q**3 + 1,
    }


def girth12_construction_colors(q: int) -> int:
    n = moore_bound(q + 1, 12)
    return n - sum(girth12_class_sizes(q).values()) + 5


def check_coloring_against_caps(g, c, q: int | None = None, girth_value: int | None = None):
    """Compare observed class sizes of coloring ``c`` on Moore graph ``g`` with every cap."""
    from .graph import diameter, girth, independence_number, regularity
    from .report import Report

    k = regularity(g)
    if q is None:
        q = g.meta.get("q", (k - 1) if k else None)
    gi = girth_value or g.meta.get("g") or girth(g)
    sizes = c.class_sizes()
    stats = c.class_stats(g)
    rep = Report(f"class caps q={q} g={gi}")
    rep.details["sizes"] = sizes
    skipped = []
    if gi in (8, 12):
        caps = class_caps(q, gi)
        for e in caps.entries:
            if not e.name.startswith("class") or e.name == "class4_tight":
                continue
            color = int(e.name[5:])
            if not e.applicable:
                skipped.append(e.name)
                continue
            if gi == 8 and color == 2:
                st = stats.get(2, {})
                if st.get("side0") and st.get("side1"):
                    skipped.append(e.name)
                    continue
            rep.checks[f"{e.name} <= {e.value}"] = sizes.get(color, 0) <= e.value
    beta = independence_number(g)
    rep.checks["class1 <= beta"] = sizes.get(1, 0) <= beta
    d = diameter(g)
    rep.checks["singular from diameter"] = all(s == 1 for col, s in sizes.items() if col >= d)
    rep.details["skipped (hypothesis not met)"] = skipped
    return rep


def bipartite_diam3_bracket(g) -> tuple[int, int]:
    """(n - beta, n - beta + 1) for a bipartite graph of diameter 3."""
    from .graph import diameter, independence_number

    if not g.is_bipartite() or diameter(g) != 3:
        raise NotApplicable("needs a bipartite graph of diameter 3")
    beta = independence_number(g)
    return g.n - beta, g.n - beta + 1
