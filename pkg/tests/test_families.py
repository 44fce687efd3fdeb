from __future__ import annotations

import itertools
from math import factorial

import pytest

from conftest import all_vertices
from hamcodes.autgrp import enumerate_full_aut, generated_group, stabilises
from hamcodes.errors import ParseError
from hamcodes.families import (
    a_elem,
    agl_generators,
    alpha_of_perm,
    aut_gens_perm_code,
    aut_gens_rm,
    parse_code_selector,
    perm_code,
    repetition_code,
    rm_codes,
    rm_default_witness,
    rm_spec,
)
from hamcodes.gf import index_vector
from hamcodes.hamming import Code, code_stats, neighbour_set


@pytest.mark.parametrize("q,l", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1)])
def test_perm_code_sizes(q, l):
    s, a = perm_code(q, l, "S"), perm_code(q, l, "A")
    odd = perm_code(q, l, "odd")
    assert len(s) == factorial(q) ** l
    assert len(a) == len(odd) == len(s) // 2
    assert a.union(odd) == s and a.isdisjoint(odd)


def test_small_perm_codes():
    assert perm_code(3, 1, "A").vertices() == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    assert perm_code(2, 2, "A").vertices() == [(0, 1, 0, 1), (1, 0, 1, 0)]
    assert alpha_of_perm((1, 2, 0)) == (1, 2, 0)
    assert perm_code(3, 1, [(0, 2, 1)]).vertices() == [(0, 2, 1)]


@pytest.mark.parametrize("q", [3, 4, 5])
def test_alternating_codes_have_distance_three(q):
    assert perm_code(q, 1, "A").min_distance == 3
    assert perm_code(q, 1, "S").min_distance == 2


def test_h33_decomposition():
    parts = [perm_code(3, 1, "A"), perm_code(3, 1, "odd"), repetition_code(3, 3)]
    c1 = neighbour_set(parts[0])
    assert len(c1) == 18
    assert all(neighbour_set(p) == c1 for p in parts)
    everything = Code([], 3, 3)
    for p in parts + [c1]:
        assert everything.isdisjoint(p)
        everything = everything.union(p)
    assert len(everything) == 27


def brute_rm(q: int, d: int):
    """Filter all of H(q^d, q) by the defining sums, using plain field arithmetic."""
    spec = rm_spec(q, d)
    f = spec.field
    vecs = [index_vector(i, d, q) for i in range(q**d)]
    top, code = [], []
    for word in itertools.product(range(q), repeat=q**d):
        s = 0
        for a in word:
            s = f.add(s, a)
        if s:
            continue
        top.append(word)
        acc = [0] * d
        for a, v in zip(word, vecs):
            acc = [f.add(x, f.mul(a, c)) for x, c in zip(acc, v)]
        if not any(acc):
            code.append(word)
    return Code(top, q**d, q), Code(code, q**d, q)


@pytest.mark.parametrize("q,d", [(2, 2), (2, 3), (3, 1), (4, 1), (5, 1), (3, 2)])
def test_rm_codes_match_brute_filter(q, d):
    top, code = rm_codes(rm_spec(q, d))
    btop, bcode = brute_rm(q, d)
    assert top == btop and code == bcode
    m = q**d
    assert len(code) == q ** (m - d - 1) and len(top) == q ** (m - 1)


@pytest.mark.parametrize("q,d,delta", [(2, 3, 4), (3, 1, 3), (3, 2, 3), (4, 1, 3), (5, 1, 3)])
def test_rm_minimum_distance(q, d, delta):
    top, code = rm_codes(rm_spec(q, d))
    assert code.min_distance == delta
    assert top.min_distance == 2


def test_rm_3_1_is_repetition_code():
    _, code = rm_codes(rm_spec(3, 1))
    assert code == repetition_code(3, 3)


def test_rm_2_3_stats():
    _, code = rm_codes(rm_spec(2, 3))
    st = code_stats(code)
    assert (len(code), st.delta, st.rho, st.sizes) == (16, 4, 2, [16, 128, 112])


@pytest.mark.parametrize("q,d", [(2, 3), (3, 2), (4, 1), (5, 1)])
def test_rm_generators_fix_the_codes(q, d):
    spec = rm_spec(q, d)
    top, code = rm_codes(spec)
    x_gens, x1_gens = aut_gens_rm(spec)
    assert all(stabilises(code, x) for x in x_gens)
    assert all(stabilises(top, x) for x in x1_gens)
    for g in agl_generators(spec):
        assert stabilises(code, g)
    w = rm_default_witness(spec)
    assert stabilises(top, w) and not stabilises(code, w)


def test_agl_generators_act_two_transitively_on_labels():
    spec = rm_spec(3, 2)
    gens = agl_generators(spec)
    pairs = {(0, 1)}
    frontier = [(0, 1)]
    while frontier:
        nxt = []
        for a, b in frontier:
            for g in gens:
                img = (g.sigma[a], g.sigma[b])
                if img not in pairs:
                    pairs.add(img)
                    nxt.append(img)
        frontier = nxt
    assert len(pairs) == 9 * 8


def test_perm_code_generators_against_brute_stabiliser():
    brute = {}
    for which in ("S", "A"):
        code = perm_code(3, 1, which)
        brute[which] = {x for x in enumerate_full_aut(3, 3) if stabilises(code, x)}
    assert len(brute["S"]) == len(brute["A"]) == 36
    assert generated_group(aut_gens_perm_code(3, 1, "S")) == brute["S"]
    # the A list generates the index-two subgroup of Aut(C(S_3)) fixing C(A_3);
    # the 18 further stabilisers of C(A_3) do not preserve C(S_3)
    assert generated_group(aut_gens_perm_code(3, 1, "A")) == brute["S"] & brute["A"]


@pytest.mark.parametrize("q,l", [(4, 1), (3, 2)])
def test_alternating_generators_give_index_two(q, l):
    s_group = generated_group(aut_gens_perm_code(q, l, "S"))
    a_group = generated_group(aut_gens_perm_code(q, l, "A"))
    assert len(s_group) == 2 * len(a_group)
    assert a_group < s_group


def test_a_elem_is_conjugation():
    y = (1, 2, 0)
    x = a_elem(y, 1, 0)
    g = (0, 2, 1)
    inv = (2, 0, 1)
    expected = tuple(y[g[inv[i]]] for i in range(3))  # y^-1 g y in left-to-right composition
    assert x.apply(g) == expected


def test_selectors():
    assert len(parse_code_selector("perm:A,4").code) == 12
    assert len(parse_code_selector("perm:S,3,2").code) == 36
    assert parse_code_selector("rep:3,4").code.vertices()[1] == (1, 1, 1, 1)
    named = parse_code_selector("rm:3,1")
    assert named.rm is not None and named.rm.m == 3
    assert len(parse_code_selector("rmtop:2,2").code) == 8
    for bad in ("perm:B,3", "rm:6,1", "nope:1", "rep:3"):
        with pytest.raises(ParseError):
            parse_code_selector(bad)


def test_file_selector(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("2 3\n0 1\n1 2\n")
    named = parse_code_selector(f"file:{path}")
    assert named.code.vertices() == [(0, 1), (1, 2)]
    assert all_vertices(1, 2) == [(0,), (1,)]
