"""Codes in Hamming graphs: neighbour sets, elusive triples and transitivity."""

from __future__ import annotations

from .autgrp import Automorphism, parse_automorphism, parse_vertex
from .elusive import Triple, associates, c2_depth_check, find_witness, mc_count, verify_triple
from .families import parse_code_selector, perm_code, repetition_code, rm_codes, rm_spec
from .gf import Field, field_make, field_of_order
from .hamming import Code, code_stats, distance_partition, neighbour_set
from .transitivity import code_images_under, is_completely_transitive, is_neighbour_transitive

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "Code",
    "Field",
    "Triple",
    "associates",
    "c2_depth_check",
    "code_images_under",
    "code_stats",
    "distance_partition",
    "field_make",
    "field_of_order",
    "find_witness",
    "is_completely_transitive",
    "is_neighbour_transitive",
    "mc_count",
    "neighbour_set",
    "parse_automorphism",
    "parse_code_selector",
    "parse_vertex",
    "perm_code",
    "repetition_code",
    "rm_codes",
    "rm_spec",
    "verify_triple",
]
