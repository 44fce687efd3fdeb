from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import automorphisms, vertices
from hamcodes.autgrp import (
    Automorphism,
    entry_perm_from_affine,
    enumerate_full_aut,
    full_aut_order,
    generated_group,
    image,
    is_single_orbit,
    matrix_rank,
    orbit,
    parse_automorphism,
    parse_vertex,
    perm_compose,
    perm_from_cycles,
    perm_inverse,
    perm_sign,
    perm_to_cycles,
    scalar_multiplication,
    stabilises,
    translation,
)
from hamcodes.errors import (
    AlphabetNotField,
    AmbientMismatch,
    GroupTooLarge,
    NotBijection,
    ParseError,
    SingularMatrix,
)
from hamcodes.gf import field_of_order
from hamcodes.hamming import Code, distance


@given(automorphisms(4, 3), automorphisms(4, 3), vertices(4, 3))
def test_product_acts_as_composition(x, y, a):
    assert (x * y).apply(a) == y.apply(x.apply(a))


@given(automorphisms(4, 3), automorphisms(4, 3), automorphisms(4, 3))
def test_group_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert (x * x.inverse()).is_identity()
    assert (x.inverse() * x).is_identity()
    assert x.conjugate(y) == y.inverse() * x * y


@given(automorphisms(5, 3), vertices(5, 3), vertices(5, 3))
def test_automorphisms_preserve_distance(x, a, b):
    assert distance(x.apply(a), x.apply(b)) == distance(a, b)


@given(automorphisms(3, 4), st.lists(vertices(3, 4), min_size=1, max_size=10))
def test_vectorised_action_matches_scalar(x, vs):
    code = Code(vs, 3, 4)
    assert image(code, x) == Code([x.apply(v) for v in vs], 3, 4)


def test_entry_permutation_convention():
    x = Automorphism.build(3, 2, sigma=(1, 2, 0))
    # the symbol at entry u moves to entry sigma[u]
    assert x.apply((1, 0, 0)) == (0, 1, 0)


def test_validation():
    with pytest.raises(NotBijection):
        Automorphism(((0, 0), (0, 1)), (0, 1))
    with pytest.raises(NotBijection):
        Automorphism(((0, 1), (0, 1)), (0, 0))
    x = Automorphism.identity(3, 3)
    with pytest.raises(AmbientMismatch):
        x.apply((0, 1))


def test_permutation_helpers():
    p = perm_from_cycles("(0 1 2)(3 4)", 5)
    assert p == (1, 2, 0, 4, 3)
    assert perm_from_cycles(perm_to_cycles(p), 5) == p
    assert perm_compose(p, perm_inverse(p)) == tuple(range(5))
    assert perm_sign(p) == -1
    assert perm_compose((1, 0, 2), (0, 2, 1)) == (2, 0, 1)  # left then right
    for bad in ("(0 0)", "(0 5)", "(0 x)"):
        with pytest.raises(ParseError):
            perm_from_cycles(bad, 5)


def test_script_parsing():
    f = field_of_order(3)
    x = parse_automorphism("DIAG 1: (0 1 2) | DIAG 2: (0 2 1)", 3, 3)
    assert x.apply((0, 1, 2)) == (0, 2, 1)
    assert parse_automorphism(x.to_script(), 3, 3) == x
    assert parse_automorphism("ID", 3, 3).is_identity()
    t = parse_automorphism("TRANSLATE 1 2 0", 3, 3, f)
    assert t == parse_automorphism("TRANSLATE: 120", 3, 3, f) == translation((1, 2, 0), f)
    assert t.apply((2, 2, 2)) == (0, 1, 2)
    s = parse_automorphism("SCALE 2", 3, 3, f)
    assert s == scalar_multiplication(2, 3, f) and s.apply((0, 1, 2)) == (0, 2, 1)
    two = parse_automorphism("PERM (0 1)\nDIAG 0 (0 1)  # comment", 3, 3)
    assert two.apply((0, 1, 2)) == (0, 0, 2)
    with pytest.raises(AlphabetNotField):
        parse_automorphism("TRANSLATE 000", 3, 3)
    for bad in ("ROTATE 1", "DIAG (0 1)", "DIAG 4 (0 1)", "TRANSLATE 00"):
        with pytest.raises(ParseError):
            parse_automorphism(bad, 3, 3, f)


def test_parse_vertex():
    assert parse_vertex("012", 3, 3) == (0, 1, 2)
    assert parse_vertex("0, 1, 2", 3, 3) == (0, 1, 2)
    with pytest.raises(ParseError):
        parse_vertex("013", 3, 3)


def test_affine_entry_permutation():
    f = field_of_order(3)
    A = [[1, 1], [0, 1]]
    x = entry_perm_from_affine(A, [1, 0], f)
    assert sorted(x.sigma) == list(range(9))
    assert matrix_rank(A, f) == 2 and matrix_rank([[1, 2], [2, 1]], f) == 1
    with pytest.raises(SingularMatrix):
        entry_perm_from_affine([[1, 2], [2, 1]], [0, 0], f)


def test_full_group_enumeration():
    els = list(enumerate_full_aut(2, 2))
    assert len(els) == len(set(els)) == full_aut_order(2, 2) == 8
    assert len(list(enumerate_full_aut(3, 3))) == 1296
    with pytest.raises(GroupTooLarge):
        next(enumerate_full_aut(4, 4, limit=1000))


def test_generated_group_against_enumeration():
    gens = [Automorphism.build(2, 2, sigma=(1, 0)), Automorphism.build(2, 2, g=[(1, 0), (0, 1)])]
    assert generated_group(gens) == set(enumerate_full_aut(2, 2))


def test_orbits():
    rot = Automorphism.build(3, 2, sigma=(1, 2, 0))
    assert orbit((1, 0, 0), [rot], 2).vertices() == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    weight1 = Code([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3, 2)
    assert is_single_orbit(weight1, [rot])
    assert stabilises(weight1, rot)
    assert not is_single_orbit(weight1, [Automorphism.identity(3, 2)])
    assert not stabilises(weight1, Automorphism.build(3, 2, g=[(1, 0), (0, 1), (0, 1)]))
