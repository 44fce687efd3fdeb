"""Orbit-based transitivity diagnostics and image censuses of codes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .autgrp import DEFAULT_ORBIT_BOUND, Automorphism, image, orbit_keys, stabilises
from .errors import GeneratorEscapesCode, ImageBoundExceeded
from .hamming import DEFAULT_VERTEX_BOUND, Code, distance_partition, unpack


@dataclass(frozen=True)
class CellVerdict:
    index: int
    size: int
    orbit_size: int
    seed: tuple[int, ...] | None

    @property
    def single_orbit(self) -> bool:
        return self.orbit_size == self.size

    def as_dict(self) -> dict:
        return {"i": self.index, "size": self.size, "orbit_size": self.orbit_size, "single_orbit": self.single_orbit}


@dataclass(frozen=True)
class TransitivityReport:
    cells: tuple[CellVerdict, ...]

    @property
    def completely_transitive(self) -> bool:
        return all(c.single_orbit for c in self.cells)

    @property
    def neighbour_transitive(self) -> bool:
        return all(c.single_orbit for c in self.cells[:2])

    def as_dict(self) -> dict:
        return {
            "cells": [c.as_dict() for c in self.cells],
            "completely_transitive": self.completely_transitive,
        }


def _check_gens(code: Code, gens: Sequence[Automorphism]) -> None:
    for n, x in enumerate(gens):
        x._check(code.m, code.q)
        if not stabilises(code, x):
            raise GeneratorEscapesCode(f"generator {n} ({x.to_script()}) does not fix the code")


def _cell_verdict(i: int, cell: Code, gens: Sequence[Automorphism], bound: int) -> CellVerdict:
    if len(cell) == 0:
        return CellVerdict(i, 0, 0, None)
    seed = cell.lex_keys()[:1]
    keys = orbit_keys(seed, gens, cell.m, cell.q, bound=bound, inside=cell)
    if keys is None:
        # a code automorphism preserves distance to the code, so this cannot happen
        raise AssertionError(f"orbit of a generator set fixing C leaves cell C_{i}")
    return CellVerdict(i, len(cell), len(keys), unpack(int(seed[0]), cell.m, cell.q))


def cell_report(
    code: Code,
    gens: Sequence[Automorphism],
    cells: int | None = None,
    *,
    bound: int = DEFAULT_VERTEX_BOUND,
    orbit_bound: int = DEFAULT_ORBIT_BOUND,
) -> TransitivityReport:
    """Orbit verdicts for the first ``cells`` distance classes (all if None)."""
    _check_gens(code, gens)
    part = distance_partition(code, bound)
    if cells is not None:
        part = part[:cells]
    return TransitivityReport(tuple(_cell_verdict(i, c, gens, orbit_bound) for i, c in enumerate(part)))


def is_completely_transitive(code: Code, gens: Sequence[Automorphism], **kw) -> TransitivityReport:
    return cell_report(code, gens, **kw)


def is_neighbour_transitive(code: Code, gens: Sequence[Automorphism], **kw) -> TransitivityReport:
    return cell_report(code, gens, 2, **kw)


# -- image census -----------------------------------------------------------------


@dataclass(frozen=True)
class ImageReport:
    """Distinct images of a code, in discovery order (the code itself first)."""

    codes: tuple[Code, ...]

    @property
    def count(self) -> int:
        return len(self.codes)

    def digests(self) -> frozenset[bytes]:
        return frozenset(c.digest() for c in self.codes)

    def intersections(self) -> list[list[int]]:
        n = len(self.codes)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                k = len(self.codes[i]) if i == j else int(self.codes[j].contains_keys(self.codes[i].keys).sum())
                out[i][j] = out[j][i] = k
        return out

    def pairwise_disjoint(self) -> bool:
        m = self.intersections()
        return all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m)) if i != j)

    def as_dict(self) -> dict:
        return {"count": self.count, "pairwise_intersections": self.intersections()}


def code_images_under(code: Code, gens: Sequence[Automorphism], bound: int = 4096) -> ImageReport:
    """Closure of {C} under applying the generators to images already found."""
    for x in gens:
        x._check(code.m, code.q)
    found: dict[bytes, Code] = {code.digest(): code}
    frontier = [code]
    while frontier:
        nxt = []
        for c in frontier:
            for x in gens:
                img = image(c, x)
                key = img.digest()
                if key not in found:
                    found[key] = img
                    nxt.append(img)
                    if len(found) > bound:
                        raise ImageBoundExceeded(f"more than {bound} distinct images")
        frontier = nxt
    return ImageReport(tuple(found.values()))
