from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_vertices, brute_distance_to_code, vertices
from hamcodes.errors import AmbientMismatch, SymbolOutOfRange, UnsupportedDistance
from hamcodes.hamming import (
    Code,
    _voronoi_min_distance,
    brute_sphere2_intersection,
    code_stats,
    decode,
    diff,
    distance,
    distance_partition,
    encode,
    gamma,
    neighbour_set,
    pack,
    read_code,
    sphere,
    sphere2_intersection,
    sphere_size,
    unique_4cycle,
    unpack,
    write_code,
)


@given(st.integers(1, 6), st.integers(2, 6), st.data())
def test_pack_round_trip(m, q, data):
    v = data.draw(vertices(m, q))
    assert unpack(pack(v, q), m, q) == v
    rows = np.array([v])
    assert decode(encode(rows, q), m, q).tolist() == [list(v)]


def test_vertices_come_out_lexicographic():
    code = Code(all_vertices(3, 3), 3, 3)
    assert code.vertices() == sorted(all_vertices(3, 3))


@given(st.data())
def test_distance_is_a_metric(data):
    m, q = 5, 4
    a, b, c = (data.draw(vertices(m, q)) for _ in range(3))
    assert distance(a, b) == distance(b, a) == len(diff(a, b))
    assert distance(a, c) <= distance(a, b) + distance(b, c)
    assert (distance(a, b) == 0) == (a == b)


def test_gamma_and_errors():
    assert gamma((0, 1, 2), [0, 2], [2, 0]) == (2, 1, 0)
    with pytest.raises(AmbientMismatch):
        distance((0, 1), (0, 1, 2))


@pytest.mark.parametrize("m,q", [(3, 3), (4, 2), (4, 4), (5, 3)])
def test_sphere_sizes_match_brute_force(m, q):
    alpha = tuple(range(m)) if q > m - 1 else (0,) * m
    space = all_vertices(m, q)
    for r in range(m + 1):
        s = sphere(alpha, r, q)
        assert s == {v for v in space if distance(v, alpha) == r}
        assert len(s) == sphere_size(m, q, r) == comb(m, r) * (q - 1) ** r


@given(st.sampled_from([3, 4, 5]), st.integers(4, 7), st.sampled_from([3, 4]), st.data())
def test_sphere2_intersection_closed_forms(q, m, d, data):
    a = data.draw(vertices(m, q))
    pos = data.draw(st.lists(st.integers(0, m - 1), min_size=d, max_size=d, unique=True))
    b = list(a)
    for i in pos:
        b[i] = (a[i] + data.draw(st.integers(1, q - 1))) % q
    b = tuple(b)
    fast = sphere2_intersection(a, b, q)
    assert fast == brute_sphere2_intersection(a, b, q)
    assert len(fast) == (6 if d == 4 else 6 * (q - 2))


def test_sphere2_intersection_other_distances():
    with pytest.raises(UnsupportedDistance):
        sphere2_intersection((0, 0, 0), (1, 1, 0), 3)
    a, b = (0, 0, 0), (1, 1, 0)
    assert sphere2_intersection(a, b, 3, fallback=True) == brute_sphere2_intersection(a, b, 3)


def test_unique_4cycle():
    a, b = (0, 0, 0), (1, 2, 0)
    cyc = unique_4cycle(a, b)
    assert set(cyc) == {a, b, (1, 0, 0), (0, 2, 0)}
    mids = {v for v in sphere(a, 1, 3) if distance(v, b) == 1}
    assert mids == {(1, 0, 0), (0, 2, 0)}


def test_code_validation():
    with pytest.raises(AmbientMismatch):
        Code([(0, 1)], 3, 2)
    with pytest.raises(SymbolOutOfRange):
        Code([(0, 2)], 2, 2)


def test_set_operations():
    a = Code([(0, 0), (1, 1)], 2, 2)
    b = Code([(1, 1), (0, 1)], 2, 2)
    assert a.union(b) == Code([(0, 0), (1, 1), (0, 1)], 2, 2)
    assert a.intersection(b).vertices() == [(1, 1)]
    assert a.difference(b).vertices() == [(0, 0)]
    assert not a.isdisjoint(b)
    assert Code([(1, 1)], 2, 2).issubset(a)
    assert (1, 1) in a and (1, 0) not in a and (1,) not in a


def brute_min_distance(vs):
    return min(distance(a, b) for a, b in itertools.combinations(vs, 2))


@given(st.sampled_from([(3, 3), (4, 3), (5, 2), (3, 4)]), st.data())
def test_min_distance_and_partition_against_brute_force(mq, data):
    m, q = mq
    space = all_vertices(m, q)
    chosen = data.draw(st.lists(st.sampled_from(space), min_size=2, max_size=12, unique=True))
    code = Code(chosen, m, q)
    assert code.min_distance == brute_min_distance(chosen)
    part = distance_partition(code)
    for i, cell in enumerate(part):
        assert all(brute_distance_to_code(v, chosen) == i for v in cell)
    assert sum(len(c) for c in part) == q**m
    assert neighbour_set(code) == neighbour_set(code, bound=1)  # sphere-union path


def test_voronoi_agrees_with_pairwise():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m, q = 6, 3
        keys = rng.choice(q**m, size=int(rng.integers(2, 60)), replace=False)
        code = Code.from_keys(keys, m, q)
        assert _voronoi_min_distance(code) == brute_min_distance(code.vertices())


def test_large_code_uses_voronoi_path():
    # even-weight binary words of length 12: 2048 < |C| triggers the BFS method
    code = Code([v for v in all_vertices(12, 2) if sum(v) % 2 == 0], 12, 2)
    assert len(code) == 2048
    code2 = code.union(Code([(1,) + (0,) * 11], 12, 2))
    assert code2.min_distance == 1
    assert Code.from_keys(code.keys, 12, 2).min_distance == 2


def test_stats_of_trivial_codes():
    st_ = code_stats(Code([(0, 0, 0)], 3, 3))
    assert st_.delta is None and st_.rho == 3
    whole = Code.whole_space(2, 2)
    assert len(neighbour_set(whole)) == 0
    assert code_stats(whole).rho == 0


def test_code_file_round_trip(tmp_path):
    code = Code([(0, 1, 2), (2, 1, 0)], 3, 3)
    path = tmp_path / "c.txt"
    write_code(code, path)
    assert read_code(path) == code
    assert path.read_text().splitlines()[0] == "3 3"
