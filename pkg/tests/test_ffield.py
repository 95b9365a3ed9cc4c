import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moorepack.errors import NotPrimePower, TooLarge
from moorepack.ffield import (factor_prime_power, field_eval_quad, is_prime_power, least_irreducible,
                              make_field)

SMALL = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
LARGER = [25, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256, 343, 729, 1024, 3125]


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def test_prime_power_oracle():
    for q in range(1, 400):
        oracle = any(_is_prime(p) and any(p ** k == q for k in range(1, 10)) for p in range(2, q + 1))
        assert is_prime_power(q) == oracle, q


@pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 36, 100])
def test_not_prime_power(q):
    with pytest.raises(NotPrimePower):
        make_field(q)


def test_too_large():
    with pytest.raises(NotPrimePower):
        make_field((1 << 16) + 2)
    with pytest.raises(TooLarge):
        make_field(65537)


def test_characteristic_two():
    F = make_field(2)
    assert F.add(1, 1) == 0


def test_z3_inverse():
    F = make_field(3)
    assert F.mul(2, 2) == 1 and F.inv(2) == 2


def test_gf4_unit_group():
    F = make_field(4)
    units = [1, 2, 3]
    assert {F.mul(a, b) for a in units for b in units} == set(units)
    for x in (2, 3):
        assert F.mul(x, x) != 1
        assert F.mul(F.mul(x, x), x) == 1


def test_least_irreducible_examples():
    # coefficients lowest degree first
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)


def test_least_irreducible_is_least():
    # brute-force oracle: no smaller monic polynomial of that degree is irreducible
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        f = least_irreducible(p, k)

        def rootless_and_unfactorable(g):
            # irreducible iff no monic factor of degree 1..k//2
            for d in range(1, k // 2 + 1):
                for tail in itertools.product(range(p), repeat=d):
                    h = list(tail) + [1]
                    r = list(g)
                    while len(r) >= len(h):
                        c = r[-1]
                        if c:
                            for i in range(len(h)):
                                r[len(r) - len(h) + i] = (r[len(r) - len(h) + i] - c * h[i]) % p
                        r.pop()
                    if not any(r):
                        return False
            return True

        # coefficients compared from degree k-1 down to the constant term
        key = tuple(reversed(f[:k]))
        better = [t for t in itertools.product(range(p), repeat=k)
                  if t < key and rootless_and_unfactorable(list(reversed(t)) + [1])]
        assert rootless_and_unfactorable(list(f))
        assert not better


@pytest.mark.parametrize("q", SMALL)
def test_axioms_exhaustive(q):
    F = make_field(q)
    A, M = F.add_table, F.mul_table
    E = np.arange(q)
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[0] == E).all() and (M[1] == E).all() and (M[0] == 0).all()
    for a in range(q):
        assert (A[A[a]] == A[a][A]).all()  # (a+b)+c == a+(b+c) as composed maps
        assert A[a, F.neg(a)] == 0
        if a:
            assert M[a, F.inv(a)] == 1
        for b in range(q):
            assert (M[a, A[b]] == A[M[a, b], M[a]]).all()  # a(b+c) = ab + ac
            assert M[M[a, b]].tolist() == [M[a, M[b, c]] for c in range(q)]
    # characteristic
    for x in range(q):
        s = 0
        for _ in range(F.p):
            s = F.add(s, x)
        assert s == 0


@pytest.mark.parametrize("q", LARGER)
def test_axioms_randomized(q):
    F = make_field(q)
    rng = np.random.default_rng(q)
    for a, b, c in rng.integers(0, q, size=(300, 3)):
        a, b, c = int(a), int(b), int(c)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL + LARGER), st.data())
def test_axioms_property(q, data):
    F = make_field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.sub(F.add(a, b), b) == a
    assert F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c))
    if b:
        assert F.mul(F.mul(a, F.inv(b)), b) == a


def test_deterministic():
    from moorepack import ffield

    a = make_field(27)
    ffield.make_field.cache_clear()
    b = make_field(27)
    assert a is not b
    assert (a.add_table == b.add_table).all() and (a.mul_table == b.mul_table).all()
    assert a.modulus == b.modulus


def test_zero_one_indices():
    for q in SMALL:
        F = make_field(q)
        assert all(F.add(0, x) == x and F.mul(1, x) == x for x in range(q))


def test_factor():
    assert factor_prime_power(64) == (2, 6)
    assert factor_prime_power(343) == (7, 3)


def test_eval_quad_examples():
    F3 = make_field(3)
    assert field_eval_quad(F3, 1, 1, 0, 1) == (2, 0)
    for q in (2, 4, 5, 9):
        F = make_field(q)
        for b in range(q):
            for c in range(q):
                for w in range(q):
                    assert field_eval_quad(F, 0, b, c, w) == (b, c)


def test_eval_quad_char2_vanishing_term():
    for q in (2, 4, 8):
        F = make_field(q)
        for a in range(q):
            for b in range(q):
                ab = F.mul(a, b)
                assert F.add(ab, ab) == 0
                # second coordinate is a^2 w + c exactly
                for w in range(q):
                    assert field_eval_quad(F, a, b, 0, w)[1] == F.mul(F.mul(a, a), w)


def test_eval_quad_brute_force_mod_p():
    for p in (3, 5, 7):
        F = make_field(p)
        for a, b, c, w in itertools.product(range(p), repeat=4):
            assert field_eval_quad(F, a, b, c, w) == ((a * w + b) % p, (a * a * w + 2 * a * b + c) % p)


def test_dense_limit():
    F = make_field(8192)
    assert F.mul(F.inv(1234), 1234) == 1
    with pytest.raises(TooLarge):
        F.add_table
