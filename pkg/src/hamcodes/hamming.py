"""Vertices and codes in the Hamming graph H(m, q).

A vertex is a tuple of ``m`` symbols from ``0..q-1``. Codes store their
vertices as a sorted array of packed keys (base ``q``, little-endian:
entry 0 is the least significant digit), which makes set algebra and
breadth-first searches over the whole graph cheap numpy operations.
Iteration over a code is always in lexicographic order of the tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AmbientMismatch,
    DuplicateEntryLabel,
    EnumerationBoundExceeded,
    NotDistanceTwo,
    ParseError,
    RadiusOutOfRange,
    SymbolOutOfRange,
    UnsupportedDistance,
)

Vertex = tuple[int, ...]

DEFAULT_VERTEX_BOUND = 2**24
# frontier slices for the breadth-first searches; keeps peak memory flat
_CHUNK = 1 << 16


# -- packing -----------------------------------------------------------------


def _powers(m: int, q: int) -> np.ndarray:
    return q ** np.arange(m, dtype=np.int64)


def _check_packable(m: int, q: int) -> None:
    if m * np.log2(q) >= 63:
        raise EnumerationBoundExceeded(f"H({m},{q}) vertices do not fit a 64-bit key")


def pack(v: Sequence[int], q: int) -> int:
    key = 0
    for s in reversed(v):
        key = key * q + s
    return key


def unpack(key: int, m: int, q: int) -> Vertex:
    out = []
    for _ in range(m):
        key, r = divmod(key, q)
        out.append(r)
    return tuple(out)


def encode(rows: np.ndarray, q: int) -> np.ndarray:
    """Pack an (n, m) symbol array into n keys."""
    rows = np.asarray(rows, dtype=np.int64)
    return rows @ _powers(rows.shape[1], q)


def decode(keys: np.ndarray, m: int, q: int) -> np.ndarray:
    """Unpack n keys into an (n, m) symbol array."""
    keys = np.asarray(keys, dtype=np.int64)
    return (keys[:, None] // _powers(m, q)[None, :]) % q


def lex_order(keys: np.ndarray, m: int, q: int) -> np.ndarray:
    """Permutation sorting keys by the lexicographic order of their tuples."""
    if len(keys) == 0:
        return np.zeros(0, dtype=np.int64)
    digits = decode(keys, m, q)
    return np.lexsort(digits.T[::-1])


def neighbour_keys(keys: np.ndarray, m: int, q: int) -> np.ndarray:
    """All distance-one neighbours of each key, grouped per key.

    Returns an array of shape (n, m*(q-1)).
    """
    keys = np.asarray(keys, dtype=np.int64)
    digits = decode(keys, m, q)
    pw = _powers(m, q)
    cols = []
    for i in range(m):
        for a in range(1, q):
            new = (digits[:, i] + a) % q
            cols.append(keys + (new - digits[:, i]) * pw[i])
    if not cols:
        return np.zeros((len(keys), 0), dtype=np.int64)
    return np.stack(cols, axis=1)


# -- single-vertex operations -----------------------------------------------


def _same_ambient(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise AmbientMismatch(f"vertex lengths differ: {len(a)} vs {len(b)}")


def distance(a: Sequence[int], b: Sequence[int]) -> int:
    _same_ambient(a, b)
    return sum(1 for x, y in zip(a, b) if x != y)


def diff(a: Sequence[int], b: Sequence[int]) -> frozenset[int]:
    """Entry labels where two vertices differ."""
    _same_ambient(a, b)
    return frozenset(i for i, (x, y) in enumerate(zip(a, b)) if x != y)


def gamma(alpha: Sequence[int], ks: Sequence[int], values: Sequence[int], q: int | None = None) -> Vertex:
    """Copy of ``alpha`` with entry ``ks[j]`` overwritten by ``values[j]``."""
    if len(ks) != len(values):
        raise ValueError("entry labels and symbols must have equal length")
    if len(set(ks)) != len(ks):
        raise DuplicateEntryLabel(f"entry labels repeat: {list(ks)}")
    out = list(alpha)
    for k, a in zip(ks, values):
        if not 0 <= k < len(out):
            raise DuplicateEntryLabel(f"entry label {k} outside 0..{len(out) - 1}")
        if a < 0 or (q is not None and a >= q):
            raise SymbolOutOfRange(f"symbol {a} outside the alphabet")
        out[k] = a
    return tuple(out)


def sphere(alpha: Sequence[int], r: int, q: int) -> set[Vertex]:
    """Vertices at distance exactly ``r`` from ``alpha``."""
    m = len(alpha)
    if not 0 <= r <= m:
        raise RadiusOutOfRange(f"radius {r} not in 0..{m}")
    out: set[Vertex] = set()
    for ks in itertools.combinations(range(m), r):
        choices = [[a for a in range(q) if a != alpha[k]] for k in ks]
        for vals in itertools.product(*choices):
            out.add(gamma(alpha, ks, vals))
    return out


def sphere_size(m: int, q: int, r: int) -> int:
    return comb(m, r) * (q - 1) ** r


def unique_4cycle(alpha: Sequence[int], beta: Sequence[int]) -> tuple[Vertex, Vertex, Vertex, Vertex]:
    """The 4-cycle through two vertices at distance two."""
    d = sorted(diff(alpha, beta))
    if len(d) != 2:
        raise NotDistanceTwo(f"vertices are at distance {len(d)}")
    i, j = d
    return (tuple(alpha), gamma(alpha, [i], [beta[i]]), tuple(beta), gamma(alpha, [j], [beta[j]]))


def sphere2_intersection(
    alpha: Sequence[int], beta: Sequence[int], q: int, *, fallback: bool = False
) -> set[Vertex]:
    """Vertices at distance two from both ``alpha`` and ``beta``.

    Generated in closed form when d(alpha, beta) is 3 or 4. Other distances
    raise UnsupportedDistance unless ``fallback`` is set, in which case the
    set is found by scanning the radius-two sphere of ``alpha``.
    """
    dset = sorted(diff(alpha, beta))
    if len(dset) == 4:
        return {gamma(alpha, [i, j], [beta[i], beta[j]]) for i, j in itertools.combinations(dset, 2)}
    if len(dset) == 3:
        out = set()
        for i in dset:
            for j in dset:
                if i == j:
                    continue
                for a in range(q):
                    if a != alpha[i] and a != beta[i]:
                        out.add(gamma(alpha, [i, j], [a, beta[j]]))
        return out
    if not fallback:
        raise UnsupportedDistance(f"closed form needs distance 3 or 4, got {len(dset)}")
    return brute_sphere2_intersection(alpha, beta, q)


def brute_sphere2_intersection(alpha: Sequence[int], beta: Sequence[int], q: int) -> set[Vertex]:
    return {v for v in sphere(alpha, 2, q) if distance(v, beta) == 2}


# -- codes --------------------------------------------------------------------


class Code:
    """An immutable set of vertices of H(m, q) with cached parameters."""

    def __init__(self, vertices: Iterable[Sequence[int]], m: int, q: int):
        rows = [tuple(v) for v in vertices]
        for v in rows:
            if len(v) != m:
                raise AmbientMismatch(f"vertex {v} does not have length {m}")
            if any(not 0 <= s < q for s in v):
                raise SymbolOutOfRange(f"vertex {v} has a symbol outside 0..{q - 1}")
        _check_packable(m, q)
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), m)
        self._init(np.unique(encode(arr, q)), m, q)

    def _init(self, keys: np.ndarray, m: int, q: int) -> None:
        self.m = m
        self.q = q
        keys.setflags(write=False)
        self.keys = keys

    @classmethod
    def from_keys(cls, keys: np.ndarray, m: int, q: int, *, assume_unique: bool = False) -> "Code":
        _check_packable(m, q)
        obj = cls.__new__(cls)
        keys = np.asarray(keys, dtype=np.int64)
        obj._init(keys.copy() if assume_unique else np.unique(keys), m, q)
        return obj

    @classmethod
    def whole_space(cls, m: int, q: int, bound: int = DEFAULT_VERTEX_BOUND) -> "Code":
        if q**m > bound:
            raise EnumerationBoundExceeded(f"H({m},{q}) has {q**m} vertices > {bound}")
        return cls.from_keys(np.arange(q**m, dtype=np.int64), m, q, assume_unique=True)

    @property
    def n_vertices(self) -> int:
        return self.q**self.m

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, tuple) or len(v) != self.m:
            return False
        return pack(v, self.q) in self.key_set

    @cached_property
    def key_set(self) -> frozenset[int]:
        return frozenset(int(k) for k in self.keys)

    def contains_keys(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        if len(self.keys) == 0:
            return np.zeros(keys.shape, dtype=bool)
        idx = np.searchsorted(self.keys, keys)
        idx = np.minimum(idx, len(self.keys) - 1)
        return self.keys[idx] == keys

    def lex_keys(self) -> np.ndarray:
        return self.keys[lex_order(self.keys, self.m, self.q)]

    def vertices(self) -> list[Vertex]:
        """Members in lexicographic order."""
        return [tuple(int(s) for s in row) for row in decode(self.lex_keys(), self.m, self.q)]

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.vertices())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Code)
            and (self.m, self.q) == (other.m, other.q)
            and np.array_equal(self.keys, other.keys)
        )

    def __hash__(self) -> int:
        return hash((self.m, self.q, self.keys.tobytes()))

    def __repr__(self) -> str:
        return f"Code(|C|={len(self)}, m={self.m}, q={self.q})"

    def _check(self, other: "Code") -> None:
        if (self.m, self.q) != (other.m, other.q):
            raise AmbientMismatch(f"H({self.m},{self.q}) vs H({other.m},{other.q})")

    def union(self, other: "Code") -> "Code":
        self._check(other)
        return Code.from_keys(np.union1d(self.keys, other.keys), self.m, self.q, assume_unique=True)

    def intersection(self, other: "Code") -> "Code":
        self._check(other)
        return Code.from_keys(
            np.intersect1d(self.keys, other.keys, assume_unique=True), self.m, self.q, assume_unique=True
        )

    def difference(self, other: "Code") -> "Code":
        self._check(other)
        return Code.from_keys(
            np.setdiff1d(self.keys, other.keys, assume_unique=True), self.m, self.q, assume_unique=True
        )

    def isdisjoint(self, other: "Code") -> bool:
        return len(self.intersection(other)) == 0

    def issubset(self, other: "Code") -> bool:
        self._check(other)
        return bool(np.all(other.contains_keys(self.keys)))

    def digest(self) -> bytes:
        return self.keys.tobytes()

    @cached_property
    def min_distance(self) -> int | None:
        """Least distance between distinct codewords; None for |C| < 2."""
        return minimum_distance(self)


def minimum_distance(code: Code, bound: int = DEFAULT_VERTEX_BOUND) -> int | None:
    n = len(code)
    if n < 2:
        return None
    if n > 2048 and code.n_vertices <= bound:
        return _voronoi_min_distance(code)
    digits = decode(code.keys, code.m, code.q).astype(np.int8)
    best = code.m
    step = max(1, (1 << 22) // max(1, n * code.m))
    for start in range(0, n, step):
        block = digits[start : start + step]
        dist = (block[:, None, :] != digits[None, :, :]).sum(axis=2)
        rows = np.arange(start, start + len(block))
        dist[np.arange(len(block)), rows] = code.m + 1
        best = min(best, int(dist.min()))
        if best == 1:
            break
    return best


def _voronoi_min_distance(code: Code) -> int:
    # multi-source BFS labelling each vertex with a nearest codeword; the
    # closest pair of codewords is realised across an edge whose endpoints
    # carry different labels
    m, q = code.m, code.q
    dist, owner = _bfs(code, track_owner=True)
    best = m
    all_keys = np.arange(code.n_vertices, dtype=np.int64)
    digits = decode(all_keys, m, q)
    pw = _powers(m, q)
    for i in range(m):
        for a in range(1, q):
            nb = all_keys + ((digits[:, i] + a) % q - digits[:, i]) * pw[i]
            mask = owner != owner[nb]
            if mask.any():
                best = min(best, int((dist[mask] + dist[nb[mask]]).min()) + 1)
    return best


def _bfs(code: Code, track_owner: bool = False) -> tuple[np.ndarray, np.ndarray | None]:
    """Distance from every vertex of H(m,q) to the code."""
    m, q = code.m, code.q
    dist = np.full(code.n_vertices, -1, dtype=np.int16)
    owner = np.full(code.n_vertices, -1, dtype=np.int64) if track_owner else None
    dist[code.keys] = 0
    if owner is not None:
        owner[code.keys] = np.arange(len(code.keys))
    frontier = code.keys
    r = 0
    while len(frontier):
        found = []
        for start in range(0, len(frontier), _CHUNK):
            part = frontier[start : start + _CHUNK]
            nbs = neighbour_keys(part, m, q)
            if owner is not None:
                src = np.repeat(owner[part], nbs.shape[1])
            nbs = nbs.ravel()
            fresh = dist[nbs] == -1
            nbs = nbs[fresh]
            uniq, first = np.unique(nbs, return_index=True)
            dist[uniq] = r + 1
            if owner is not None:
                owner[uniq] = src[fresh][first]
            found.append(uniq)
        frontier = np.unique(np.concatenate(found)) if found else np.zeros(0, dtype=np.int64)
        r += 1
    return dist, owner


@dataclass(frozen=True)
class CodeStats:
    """Minimum distance, covering radius and distance partition of a code."""

    delta: int | None
    rho: int | None
    partition: tuple[Code, ...] | None

    @property
    def sizes(self) -> list[int] | None:
        return None if self.partition is None else [len(c) for c in self.partition]


def distance_partition(code: Code, bound: int = DEFAULT_VERTEX_BOUND) -> tuple[Code, ...]:
    """[C_0, C_1, ..., C_rho] by breadth-first expansion from the code."""
    if len(code) == 0:
        raise ValueError("distance partition of an empty code")
    if code.n_vertices > bound:
        raise EnumerationBoundExceeded(f"H({code.m},{code.q}) has {code.n_vertices} vertices > {bound}")
    cached = code.__dict__.get("_partition")
    if cached is not None:
        return cached
    dist, _ = _bfs(code)
    order = np.argsort(dist, kind="stable")
    counts = np.bincount(dist)
    cells = []
    start = 0
    for c in counts:
        cells.append(Code.from_keys(order[start : start + c], code.m, code.q, assume_unique=True))
        start += c
    part = tuple(cells)
    code.__dict__["_partition"] = part
    return part


def distance_to_code(code: Code, bound: int = DEFAULT_VERTEX_BOUND) -> np.ndarray:
    """Array indexed by packed key giving d(vertex, code)."""
    if code.n_vertices > bound:
        raise EnumerationBoundExceeded(f"H({code.m},{code.q}) has {code.n_vertices} vertices > {bound}")
    dist, _ = _bfs(code)
    return dist


def code_stats(code: Code, bound: int = DEFAULT_VERTEX_BOUND) -> CodeStats:
    """δ always; ρ and the partition only when H(m,q) is within ``bound``."""
    if len(code) == 0:
        raise ValueError("statistics of an empty code")
    delta = code.min_distance
    if code.n_vertices > bound:
        return CodeStats(delta, None, None)
    part = distance_partition(code, bound)
    return CodeStats(delta, len(part) - 1, part)


def neighbour_set(code: Code, bound: int = DEFAULT_VERTEX_BOUND) -> Code:
    """C_1: vertices at distance exactly one from the code."""
    if code.n_vertices <= bound:
        part = distance_partition(code, bound)
        if len(part) > 1:
            return part[1]
        return Code.from_keys(np.zeros(0, dtype=np.int64), code.m, code.q, assume_unique=True)
    # beyond the bound: direct union of radius-one spheres, minus the code
    nbs = np.unique(neighbour_keys(code.keys, code.m, code.q).ravel())
    nbs = nbs[~code.contains_keys(nbs)]
    return Code.from_keys(nbs, code.m, code.q, assume_unique=True)


# -- code files ---------------------------------------------------------------


def read_code(path: str | Path) -> Code:
    """Parse the text format: header ``m q`` then one vertex per line."""
    header = None
    rows = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            nums = [int(t) for t in line.split()]
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
        if header is None:
            if len(nums) != 2:
                raise ParseError(f"{path}:{lineno}: header must be 'm q'")
            header = nums
        else:
            rows.append(tuple(nums))
    if header is None:
        raise ParseError(f"{path}: missing header")
    return Code(rows, header[0], header[1])


def format_code(code: Code) -> str:
    lines = [f"{code.m} {code.q}"]
    lines += [" ".join(map(str, v)) for v in code.vertices()]
    return "\n".join(lines) + "\n"


def write_code(code: Code, path: str | Path) -> None:
    Path(path).write_text(format_code(code))
