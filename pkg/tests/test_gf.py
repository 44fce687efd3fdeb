from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamcodes.errors import DivisionByZero, IndexOutOfRange, NonPrime, UnsupportedOrder
from hamcodes.gf import (
    MODULUS_TABLE,
    field_make,
    field_of_order,
    index_vector,
    is_irreducible,
    load_modulus_table,
    prime_power_parts,
    vector_index,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32]


def clmul_mod(a: int, b: int, poly: int, k: int) -> int:
    """Carry-less product modulo a binary polynomial given as a bitmask."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= poly
    return r


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    f = field_of_order(q)
    els = list(f.elements())
    for a in els:
        assert f.add(a, 0) == a and f.mul(a, 1) == a and f.mul(a, 0) == 0
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(f.add(a, b), b) == a


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_distributive_and_associative(q):
    f = field_of_order(q)
    els = range(q)
    for a, b, c in itertools.product(els, repeat=3):
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_prime_field_is_integers_mod_p(p):
    f = field_make(p)
    for a, b in itertools.product(range(p), repeat=2):
        assert f.add(a, b) == (a + b) % p
        assert f.mul(a, b) == (a * b) % p


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_binary_extension_matches_carryless_oracle(k):
    f = field_make(2, k)
    poly = sum(c << i for i, c in enumerate(MODULUS_TABLE[(2, k)]))
    for a, b in itertools.product(range(2**k), repeat=2):
        assert f.add(a, b) == a ^ b
        assert f.mul(a, b) == clmul_mod(a, b, poly, k)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32])
def test_frobenius_is_additive_and_group_cyclic(q):
    f = field_of_order(q)

    def power(a, n):
        r = 1
        for _ in range(n):
            r = f.mul(r, a)
        return r

    for a, b in itertools.product(range(q), repeat=2):
        assert power(f.add(a, b), f.p) == f.add(power(a, f.p), power(b, f.p))
    g = f.primitive_element()
    assert len({power(g, n) for n in range(q - 1)}) == q - 1


def test_prime_basis_spans_over_prime_field():
    f = field_of_order(9)
    basis = f.prime_basis()
    combos = set()
    for coeffs in itertools.product(range(3), repeat=len(basis)):
        acc = 0
        for c, b in zip(coeffs, basis):
            acc = f.add(acc, f.mul(c, b))
        combos.add(acc)
    assert combos == set(range(9))


def test_errors():
    with pytest.raises(NonPrime):
        field_make(4)
    with pytest.raises(NonPrime):
        field_of_order(6)
    with pytest.raises(UnsupportedOrder):
        field_make(7, 2)
    with pytest.raises(UnsupportedOrder):
        field_make(3, 4, max_order=100)
    with pytest.raises(DivisionByZero):
        field_of_order(5).inv(0)


def test_tables_are_read_only():
    f = field_of_order(4)
    with pytest.raises(ValueError):
        f.mul_table[1, 1] = 0


def test_irreducibility_oracle():
    assert not is_irreducible((1, 0, 1), 2)  # x^2 + 1 = (x + 1)^2
    assert not is_irreducible((2, 0, 1), 3)  # x^2 + 2 = (x + 1)(x + 2)
    for (p, k), coeffs in MODULUS_TABLE.items():
        assert is_irreducible(coeffs, p)


def test_load_modulus_table(tmp_path):
    path = tmp_path / "mods.txt"
    path.write_text("# override\n3 4 2 0 0 1 1\n")
    table = load_modulus_table(path)
    assert table == {(3, 4): (2, 0, 0, 1, 1)}
    f = field_make(3, 4, max_order=81, table=table)
    assert f.q == 81 and f.mul(f.inv(5), 5) == 1
    path.write_text("2 2 1 0 1\n")
    with pytest.raises(ValueError):
        load_modulus_table(path)


def test_equality_and_cache():
    assert field_make(2, 3) is field_make(2, 3)
    assert field_make(2, 3) == field_of_order(8)
    assert field_of_order(8) != field_of_order(9)


def test_prime_power_parts():
    assert prime_power_parts(49) == (7, 2)
    assert prime_power_parts(12) is None
    assert prime_power_parts(1) is None


@given(st.integers(1, 5), st.integers(2, 7), st.data())
def test_vector_index_round_trip(d, q, data):
    i = data.draw(st.integers(0, q**d - 1))
    v = index_vector(i, d, q)
    assert len(v) == d and vector_index(v, q) == i


def test_vector_index_is_little_endian_and_checked():
    assert vector_index((1, 0, 0), 3) == 1
    assert vector_index((0, 0, 1), 3) == 9
    with pytest.raises(IndexOutOfRange):
        vector_index((0, 3), 3)
    with pytest.raises(IndexOutOfRange):
        index_vector(27, 3, 3)
