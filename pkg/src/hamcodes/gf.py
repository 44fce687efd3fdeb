"""Small finite fields GF(p^k) with table-driven arithmetic.

Elements are the integers ``0..q-1``. An element's base-``p`` digits
(little-endian) are the coefficients of its polynomial representative
modulo a fixed monic irreducible polynomial. The same integers serve as
the alphabet of the Hamming graphs built over the field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DivisionByZero, IndexOutOfRange, NonPrime, UnsupportedOrder

DEFAULT_MAX_ORDER = 32

# (p, k) -> coefficients c0..ck of a monic irreducible polynomial
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (5, 2): (2, 1, 1),  # x^2 + x + 2
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a: list[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo monic b over GF(p); little-endian coefficients."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - db
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    while a and a[-1] % p == 0:
        a.pop()
    return a


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..k//2."""
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] % p != 1:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not _poly_mod(list(coeffs), divisor, p):
                return False
    return True


def load_modulus_table(path: str | Path) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read override lines ``p k c0 c1 ... ck``; '#' starts a comment."""
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        nums = [int(t) for t in line.split()]
        p, k, coeffs = nums[0], nums[1], tuple(nums[2:])
        if len(coeffs) != k + 1:
            raise ValueError(f"expected {k + 1} coefficients for p={p} k={k}: {raw!r}")
        if not is_irreducible(coeffs, p):
            raise ValueError(f"modulus {coeffs} is not irreducible over GF({p})")
        table[(p, k)] = coeffs
    return table


def _validate_table() -> None:
    for (p, k), coeffs in MODULUS_TABLE.items():
        assert len(coeffs) == k + 1 and is_irreducible(coeffs, p), (p, k, coeffs)


_validate_table()


@dataclass(frozen=True, eq=False)
class Field:
    """GF(p^k) with precomputed addition, multiplication and inverse tables."""

    p: int
    k: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def elements(self) -> range:
        return range(self.q)

    def primitive_element(self) -> int:
        """Smallest element generating the multiplicative group."""
        for g in range(1, self.q):
            x, order = g, 1
            while x != 1:
                x = self.mul(x, g)
                order += 1
            if order == self.q - 1:
                return g
        raise AssertionError("multiplicative group is cyclic")

    def prime_basis(self) -> list[int]:
        """The elements 1, x, ..., x^(k-1), a basis over GF(p)."""
        return [self.p**i for i in range(self.k)]


def _digits(n: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        n, r = divmod(n, base)
        out.append(r)
    return out


def _build(p: int, k: int, modulus: tuple[int, ...]) -> Field:
    q = p**k
    polys = [_digits(a, p, k) for a in range(q)]

    def to_int(coeffs: Sequence[int]) -> int:
        return sum(c * p**i for i, c in enumerate(coeffs))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = to_int([(x + y) % p for x, y in zip(polys[a], polys[b])])
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(polys[a]):
                for j, y in enumerate(polys[b]):
                    prod[i + j] = (prod[i + j] + x * y) % p
            rem = _poly_mod(prod, modulus, p) if k > 1 else [prod[0] % p]
            mul[a, b] = to_int(rem)
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return Field(p, k, modulus, add, mul, neg, inv)


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus: tuple[int, ...]) -> Field:
    return _build(p, k, modulus)


def field_make(
    p: int,
    k: int = 1,
    *,
    max_order: int = DEFAULT_MAX_ORDER,
    table: dict[tuple[int, int], tuple[int, ...]] | None = None,
) -> Field:
    """Construct GF(p^k) using the built-in (or supplied) modulus table."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1:
        raise UnsupportedOrder(f"extension degree must be >= 1, got {k}")
    q = p**k
    if q > max_order:
        raise UnsupportedOrder(f"GF({q}) exceeds the configured bound {max_order}")
    if k == 1:
        modulus: tuple[int, ...] = (0, 1)
    else:
        lookup = {**MODULUS_TABLE, **(table or {})}
        if (p, k) not in lookup:
            raise UnsupportedOrder(f"no modulus for GF({p}^{k}) in the table")
        modulus = tuple(lookup[(p, k)])
        if not is_irreducible(modulus, p):
            raise UnsupportedOrder(f"table modulus for GF({q}) is reducible")
    return _cached_field(p, k, modulus)


def prime_power_parts(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p^k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


def field_of_order(q: int, **kwargs) -> Field:
    """GF(q) for a prime power q."""
    parts = prime_power_parts(q)
    if parts is None:
        raise NonPrime(f"{q} is not a prime power")
    return field_make(*parts, **kwargs)


def vector_index(v: Sequence[int], q: int) -> int:
    """Index of a vector of F_q^d: base-q little-endian over element indices."""
    idx = 0
    for c in reversed(v):
        if not 0 <= c < q:
            raise IndexOutOfRange(f"coordinate {c} not in 0..{q - 1}")
        idx = idx * q + c
    return idx


def index_vector(i: int, d: int, q: int) -> tuple[int, ...]:
    if not 0 <= i < q**d:
        raise IndexOutOfRange(f"index {i} not in 0..{q**d - 1}")
    return tuple(_digits(i, q, d))
