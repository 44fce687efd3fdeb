from __future__ import annotations

import itertools

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hamcodes.autgrp import Automorphism

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def brute_distance_to_code(v, code_vertices):
    return min(sum(a != b for a, b in zip(v, c)) for c in code_vertices)


def all_vertices(m: int, q: int):
    return list(itertools.product(range(q), repeat=m))


@st.composite
def automorphisms(draw, m: int, q: int) -> Automorphism:
    g = tuple(tuple(draw(st.permutations(range(q)))) for _ in range(m))
    sigma = tuple(draw(st.permutations(range(m))))
    return Automorphism(g, sigma)


@st.composite
def vertices(draw, m: int, q: int):
    return tuple(draw(st.lists(st.integers(0, q - 1), min_size=m, max_size=m)))


@pytest.fixture
def h33():
    return all_vertices(3, 3)
