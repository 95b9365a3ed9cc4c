"""Finite fields GF(q) as lookup tables.

Elements are the integers ``0..q-1``.  For ``q = p`` they are residues mod p.
For ``q = p**k`` with ``k > 1`` the element with index ``sum(c_i * p**i)`` is
the residue class of ``c_0 + c_1 x + ... + c_{k-1} x**(k-1)`` modulo the
lexicographically least monic irreducible polynomial of degree ``k`` over
``Z_p`` (coefficients compared from ``x**(k-1)`` down to ``x**0``).
Index 0 is zero and index 1 is one in every field.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .errors import NotPrimePower, TooLarge

MAX_ORDER = 1 << 16
DENSE_LIMIT = 4096


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise NotPrimePower otherwise."""
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    q = int(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise NotPrimePower(f"{q} has at least two distinct prime factors")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotPrimePower:
        return False
    return True


# Polynomials over Z_p are coefficient tuples, lowest degree first.

def _poly_mod(a: list[int], f: tuple[int, ...], p: int) -> list[int]:
    # f is monic
    a = list(a)
    k = len(f) - 1
    for d in range(len(a) - 1, k - 1, -1):
        c = a[d] % p
        if c:
            for i in range(k + 1):
                a[d - k + i] = (a[d - k + i] - c * f[i]) % p
    return [x % p for x in a[:k]] + [0] * max(0, k - len(a))


def _poly_mulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """True iff the monic polynomial ``f`` is irreducible over Z_p (brute-force trial division)."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            g = tuple(low) + (1,)
            if not any(_poly_mod(list(f), g, p)):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree ``k`` over Z_p.

    Coefficients are compared from degree k-1 down to the constant term, so
    x^3 + x + 1 precedes x^3 + x^2 + 1.  Returned lowest degree first, leading
    1 included.
    """
    for high_first in product(range(p), repeat=k):
        f = tuple(reversed(high_first)) + (1,)
        if _is_irreducible(f, p):
            return f
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True, eq=False)
class FieldTable:
    q: int
    p: int
    k: int
    modulus: tuple[int, ...]
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    # --- scalar arithmetic -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return int(_digit_add(np.int64(a), np.int64(b), self.p, self.k))

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(q)")
        return int(self.exp[(-int(self.log[a])) % (self.q - 1)])

    def elements(self) -> range:
        return range(self.q)

    # --- dense tables -----------------------------------------------------
    @cached_property
    def neg_table(self) -> np.ndarray:
        x = np.arange(self.q, dtype=np.int64)
        if self.k == 1:
            return ((-x) % self.p).astype(np.int32)
        digits = _digits(x, self.p, self.k)
        return _undigits((-digits) % self.p, self.p).astype(np.int32)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Multiplicative inverses; entry 0 is set to 0 as a placeholder."""
        out = np.zeros(self.q, dtype=np.int32)
        lg = self.log[1:].astype(np.int64)
        out[1:] = self.exp[(-lg) % (self.q - 1)]
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        self._check_dense()
        x = np.arange(self.q, dtype=np.int64)
        if self.k == 1:
            return ((x[:, None] + x[None, :]) % self.p).astype(np.int32)
        d = _digits(x, self.p, self.k)
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return _undigits(s, self.p).astype(np.int32)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._check_dense()
        lg = self.log.astype(np.int64)
        t = self.exp[(lg[:, None] + lg[None, :]) % (self.q - 1)].astype(np.int32)
        t[0, :] = 0
        t[:, 0] = 0
        return t

    def _check_dense(self):
        if self.q > DENSE_LIMIT:
            raise TooLarge(f"dense tables are only built for q <= {DENSE_LIMIT}")


def _digits(x: np.ndarray, p: int, k: int) -> np.ndarray:
    return np.stack([(x // p**i) % p for i in range(k)], axis=-1)


def _undigits(d: np.ndarray, p: int) -> np.ndarray:
    w = p ** np.arange(d.shape[-1], dtype=np.int64)
    return (d * w).sum(axis=-1)


def _digit_add(a, b, p, k):
    out, w = 0, 1
    for _ in range(k):
        out += ((a % p + b % p) % p) * w
        a //= p
        b //= p
        w *= p
    return out


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldTable:
    """Build GF(q).  Deterministic; cached per order."""
    p, k = factor_prime_power(q)
    if q > MAX_ORDER:
        raise TooLarge(f"q={q} exceeds the supported maximum {MAX_ORDER}")
    f = least_irreducible(p, k) if k > 1 else (0, 1)

    def to_poly(i):
        return [(i // p**j) % p for j in range(k)]

    def from_poly(c):
        return sum(int(x) * p**j for j, x in enumerate(c))

    def mul(a, b):
        if k == 1:
            return (a * b) % p
        return from_poly(_poly_mulmod(to_poly(a), to_poly(b), f, p))

    # smallest primitive element; its powers give exp/log
    exp = np.zeros(q - 1, dtype=np.int32)
    for g in range(2 if q > 2 else 1, q):
        x, seen = 1, 0
        for e in range(q - 1):
            exp[e] = x
            x = mul(x, g)
            seen += 1
            if x == 1:
                break
        if seen == q - 1:
            break
    else:  # pragma: no cover
        raise AssertionError("GF(q)* is cyclic")
    log = np.zeros(q, dtype=np.int32)
    log[exp] = np.arange(q - 1, dtype=np.int32)
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldTable(q=q, p=p, k=k, modulus=f, exp=exp, log=log)


def field_eval_quad(tbl: FieldTable, a: int, b: int, c: int, w: int) -> tuple[int, int]:
    """Return ``(a*w + b, a*a*w + 2*a*b + c)``; the ``2ab`` term is ``ab + ab``."""
    aw = tbl.mul(a, w)
    ab = tbl.mul(a, b)
    first = tbl.add(aw, b)
    second = tbl.add(tbl.add(tbl.mul(a, aw), tbl.add(ab, ab)), c)
    return first, second
