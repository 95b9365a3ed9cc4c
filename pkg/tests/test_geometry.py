import itertools

import pytest

from moorepack.errors import BudgetExceeded, EvenCharacteristic, NotAnOvoid, NotApplicable
from moorepack.ffield import make_field
from moorepack.generators import POINT, RHO, CoordLabel, gen_cage_3_12, gen_gq_incidence, gen_pg_incidence
from moorepack.graph import Graph
from moorepack.geometry import (construct_gq_ovoid, disjoint_ovoid_pair_exists, enumerate_ovoids,
                                gq_section, least_nonsquare, partitions_opposite_side,
                                search_opposite_set, verify_distance2_ovoid, verify_ovoid)


@pytest.fixture(scope="module")
def gq3():
    return gen_gq_incidence(3)


@pytest.fixture(scope="module")
def gq5():
    return gen_gq_incidence(5)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_construct_all_t(q):
    g = gen_gq_incidence(q)
    for t in range(q):
        ov = construct_gq_ovoid(g, t)
        assert len(ov) == q * q + 1
        rep = verify_ovoid(g, ov.vertices)
        assert rep.ok, rep.failures()
        assert partitions_opposite_side(g, ov.vertices)
        assert all(lab.side == POINT for lab in ov.labels())


@pytest.mark.parametrize("q", [3, 5])
def test_pairwise_intersection(q):
    g = gen_gq_incidence(q)
    apex = g.index_of[CoordLabel(POINT, (RHO, RHO, RHO))]
    ovs = [set(construct_gq_ovoid(g, t).vertices) for t in range(q)]
    for a, b in itertools.combinations(ovs, 2):
        assert a & b == {apex}


def test_mutual_distance_four(gq3):
    ov = construct_gq_ovoid(gq3, 0)
    D = gq3.distances
    assert all(D[u, v] == 4 for u, v in itertools.combinations(ov.vertices, 2))


def test_collinearity_criterion_brute_force():
    # field points (i,j,k), (i',j',k') with i != i' are collinear iff (k-k')(i-i') = (j-j')^2
    q = 3
    g = gen_gq_incidence(q)
    F = make_field(q)
    pts = [(i, j, k) for i in range(q) for j in range(q) for k in range(q)]
    for a, b in itertools.combinations(pts, 2):
        if a[0] == b[0]:
            continue
        lhs = F.mul(F.sub(a[2], b[2]), F.sub(a[0], b[0]))
        rhs = F.mul(F.sub(a[1], b[1]), F.sub(a[1], b[1]))
        u, v = g.index_of[CoordLabel(POINT, a)], g.index_of[CoordLabel(POINT, b)]
        assert (g.distances[u, v] == 2) == (lhs == rhs)


def test_untwisted_section_is_not_an_ovoid(gq3):
    with pytest.raises(NotAnOvoid):
        construct_gq_ovoid(gq3, 0, twist=(0, 0))
    rep = verify_ovoid(gq3, gq_section(gq3, 0))
    assert not rep.checks["mutually opposite"] and not rep.checks["covering"]


def test_even_q_refused():
    with pytest.raises(EvenCharacteristic):
        construct_gq_ovoid(gen_gq_incidence(2), 0)
    with pytest.raises(EvenCharacteristic):
        construct_gq_ovoid(gen_gq_incidence(4), 1)


def test_even_q_sections():
    # q = 2: x^2 + x + 1 is irreducible, the twisted section is an ovoid
    g = gen_gq_incidence(2)
    for t in range(2):
        assert not verify_ovoid(g, gq_section(g, t), 8).ok
        assert verify_ovoid(g, gq_section(g, t, (1, 1)), 8).ok


def test_bad_third_coord(gq3):
    with pytest.raises(ValueError):
        construct_gq_ovoid(gq3, 3)
    with pytest.raises(NotApplicable):
        construct_gq_ovoid(gen_pg_incidence(3), 0)


def test_least_nonsquare():
    assert least_nonsquare(3) == 2
    assert least_nonsquare(5) == 2
    assert least_nonsquare(7) == 3


def test_verify_ovoid_failures(gq3):
    u = 0
    v = gq3.adj[0][0]
    rep = verify_ovoid(gq3, [u, v])
    assert not rep.checks["mutually opposite"] and not rep.checks["one side"]
    assert not verify_ovoid(gq3, []).ok


def test_pg_sides_are_not_ovoids():
    g = gen_pg_incidence(2)
    for side in (0, 1):
        rep = verify_ovoid(g, g.side_vertices(side))
        assert not rep.checks["cardinality"]


def test_search_gq2_gq3(gq3):
    r = search_opposite_set(gen_gq_incidence(2), 0, target=5)
    assert len(r.vertices) == 5
    best = search_opposite_set(gq3, 0)
    assert len(best.vertices) == 10 and best.proven_maximum
    assert verify_ovoid(gq3, best.vertices).ok


def test_search_never_exceeds_bound(gq3):
    for side in (0, 1):
        assert len(search_opposite_set(gq3, side).vertices) <= 10
    r = search_opposite_set(gq3, 0, target=11)
    assert len(r.vertices) == 10 and r.proven_maximum


def test_search_budget(gq5):
    with pytest.raises(BudgetExceeded) as info:
        search_opposite_set(gq5, 0, budget=5)
    assert isinstance(info.value.best, list)


def test_cage_has_nine_opposite_points():
    g = gen_cage_3_12()
    r = search_opposite_set(g, 0, target=9)
    assert r.vertices == [1, 9, 12, 15, 30, 41, 45, 55, 61]
    rep = verify_ovoid(g, r.vertices, girth_value=12)
    assert rep.ok, rep.failures()


def _mock_incidence():
    # points 0..3, lines 4..7; line 4={0,1}, 5={2,3}, 6={0,3}, 7={1,2}
    lines = [(0, 1), (2, 3), (0, 3), (1, 2)]
    edges = [(p, 4 + i) for i, ln in enumerate(lines) for p in ln]
    return Graph.from_edges(8, edges, side=[0] * 4 + [1] * 4)


def test_distance2_ovoid_mock():
    g = _mock_incidence()
    assert verify_distance2_ovoid(g, [0, 2]).ok
    assert not verify_distance2_ovoid(g, [0, 1]).ok
    assert not verify_distance2_ovoid(g, []).ok


def test_distance2_ovoid_heawood():
    g = gen_pg_incidence(2)
    assert not verify_distance2_ovoid(g, g.side_vertices(0)).ok


def test_distance2_ovoid_cage_cardinality():
    g = gen_cage_3_12()
    rep = verify_distance2_ovoid(g, g.side_vertices(0))
    assert rep.details["expected"] == 21
    assert not rep.checks["cardinality"]


def test_no_disjoint_pairs(gq3):
    assert disjoint_ovoid_pair_exists(gq3) is False
    assert disjoint_ovoid_pair_exists(gen_gq_incidence(2)) is False
    with pytest.raises(NotApplicable):
        disjoint_ovoid_pair_exists(gen_cage_3_12())


def test_enumerated_ovoids_are_valid(gq3):
    ovs = enumerate_ovoids(gq3, 0)
    assert ovs and all(verify_ovoid(gq3, o).ok for o in ovs)
    # every pair meets, and identical copies are never disjoint
    sets = [set(o) for o in ovs]
    assert all(a & b for a, b in itertools.combinations(sets, 2))
    assert all(a & a for a in sets)
