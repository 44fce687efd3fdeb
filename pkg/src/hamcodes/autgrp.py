"""Explicit automorphisms of H(m, q), elements of S_q^m ⋊ S_m.

An automorphism is a pair ``(g, sigma)``: ``g[u]`` is a permutation of
the alphabet applied at entry ``u`` and ``sigma`` permutes entries.
Permutations are stored in one-line form (``p[a]`` is the image of
``a``), compose left-to-right, and act on the right:

    alpha^(g, sigma) = (alpha^g)^sigma,  (alpha^sigma)_{u^sigma} = alpha_u.

Composition is therefore

    (g, sigma) * (h, tau) = ((g_u then h_{u^sigma})_u, sigma then tau),

which is the unique rule making ``apply(x * y, a) == apply(y, apply(x, a))``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    AlphabetNotField,
    AmbientMismatch,
    GroupTooLarge,
    NotBijection,
    OrbitBoundExceeded,
    ParseError,
    SingularMatrix,
)
from .gf import Field, index_vector, vector_index
from .hamming import DEFAULT_VERTEX_BOUND, Code, Vertex, decode, encode, pack

Perm = tuple[int, ...]

DEFAULT_ORBIT_BOUND = 10**7
DEFAULT_GROUP_BOUND = 10**7


# -- permutations -------------------------------------------------------------


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_compose(p: Sequence[int], r: Sequence[int]) -> Perm:
    """``p`` then ``r``."""
    return tuple(r[a] for a in p)


def perm_inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for a, b in enumerate(p):
        out[b] = a
    return tuple(out)


def is_perm(p: Sequence[int], n: int | None = None) -> bool:
    n = len(p) if n is None else n
    return len(p) == n and sorted(p) == list(range(n))


def perm_sign(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    sign = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        a = start
        while not seen[a]:
            seen[a] = True
            a = p[a]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_from_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation such as ``(0 1 2)(3 4)`` or ``(0,7)`` on 0..n-1."""
    text = text.strip()
    out = list(range(n))
    if text in ("", "()", "id", "1"):
        return tuple(out)
    if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", text):
        raise ParseError(f"bad cycle notation: {text!r}")
    used: set[int] = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        cyc = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        for a in cyc:
            if not 0 <= a < n:
                raise ParseError(f"point {a} outside 0..{n - 1}")
            if a in used:
                raise ParseError(f"point {a} appears twice in {text!r}")
            used.add(a)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            out[a] = b
    return tuple(out)


def perm_to_cycles(p: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cyc = []
        a = start
        while a not in seen:
            seen.add(a)
            cyc.append(a)
            a = p[a]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


# -- automorphisms -------------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """The element ``(g, sigma)`` of Aut(H(m, q))."""

    g: tuple[Perm, ...]
    sigma: Perm

    def __post_init__(self) -> None:
        m = len(self.sigma)
        if len(self.g) != m:
            raise AmbientMismatch(f"{len(self.g)} alphabet permutations for {m} entries")
        if not is_perm(self.sigma):
            raise NotBijection(f"entry map {self.sigma} is not a permutation")
        if m:
            q = len(self.g[0])
            for gi in self.g:
                if not is_perm(gi, q):
                    raise NotBijection(f"alphabet map {gi} is not a permutation of 0..{q - 1}")

    @property
    def m(self) -> int:
        return len(self.sigma)

    @property
    def q(self) -> int:
        return len(self.g[0]) if self.g else 0

    @classmethod
    def identity(cls, m: int, q: int) -> "Automorphism":
        return cls((perm_identity(q),) * m, perm_identity(m))

    @classmethod
    def build(cls, m: int, q: int, g: Sequence[Sequence[int]] | None = None, sigma: Sequence[int] | None = None):
        gg = tuple(tuple(p) for p in g) if g is not None else (perm_identity(q),) * m
        ss = tuple(sigma) if sigma is not None else perm_identity(m)
        return cls(gg, ss)

    def _check(self, m: int, q: int | None = None) -> None:
        if m != self.m or (q is not None and q != self.q):
            raise AmbientMismatch(f"automorphism of H({self.m},{self.q}) used on H({m},{q})")

    def apply(self, alpha: Sequence[int]) -> Vertex:
        self._check(len(alpha))
        out = [0] * self.m
        for u, a in enumerate(alpha):
            out[self.sigma[u]] = self.g[u][a]
        return tuple(out)

    def apply_keys(self, keys: np.ndarray) -> np.ndarray:
        """Vectorised action on packed keys."""
        m, q = self.m, self.q
        digits = decode(keys, m, q)
        table = self._table()
        vals = table[np.arange(m)[None, :], digits]
        out = np.empty_like(vals)
        out[:, list(self.sigma)] = vals
        return encode(out, q)

    def _table(self) -> np.ndarray:
        cached = self.__dict__.get("_tab")
        if cached is None:
            cached = np.array(self.g, dtype=np.int64).reshape(self.m, self.q)
            object.__setattr__(self, "_tab", cached)
        return cached

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` then ``other``."""
        other._check(self.m, self.q)
        g = tuple(perm_compose(self.g[u], other.g[self.sigma[u]]) for u in range(self.m))
        return Automorphism(g, perm_compose(self.sigma, other.sigma))

    __mul__ = compose

    def inverse(self) -> "Automorphism":
        sinv = perm_inverse(self.sigma)
        return Automorphism(tuple(perm_inverse(self.g[sinv[i]]) for i in range(self.m)), sinv)

    def conjugate(self, y: "Automorphism") -> "Automorphism":
        """``y^-1 * self * y``."""
        return y.inverse() * self * y

    def is_identity(self) -> bool:
        ident = perm_identity(self.q)
        return self.sigma == perm_identity(self.m) and all(gi == ident for gi in self.g)

    def to_script(self) -> str:
        """Text form: DIAG parts first, then PERM (left-to-right product)."""
        parts = [f"DIAG {u}: {perm_to_cycles(gi)}" for u, gi in enumerate(self.g) if gi != perm_identity(self.q)]
        if self.sigma != perm_identity(self.m):
            parts.append(f"PERM: {perm_to_cycles(self.sigma)}")
        return " | ".join(parts) or "ID"


def compose(x: Automorphism, y: Automorphism) -> Automorphism:
    return x.compose(y)


def inverse(x: Automorphism) -> Automorphism:
    return x.inverse()


def apply(x: Automorphism, alpha: Sequence[int]) -> Vertex:
    return x.apply(alpha)


def image(s, x: Automorphism):
    """Elementwise image of a Code (returns a Code) or of a vertex collection."""
    if isinstance(s, Code):
        x._check(s.m, s.q)
        return Code.from_keys(x.apply_keys(s.keys), s.m, s.q)
    return {x.apply(v) for v in s}


def stabilises(s, x: Automorphism, chunk: int = 1 << 16) -> bool:
    """True iff ``x`` maps the set onto itself; stops at the first escape."""
    if isinstance(s, Code):
        x._check(s.m, s.q)
        for start in range(0, len(s), chunk):
            if not s.contains_keys(x.apply_keys(s.keys[start : start + chunk])).all():
                return False
        return True
    members = set(map(tuple, s))
    return all(x.apply(v) in members for v in members)


# -- field-derived automorphisms ----------------------------------------------


def _need_field(field: Field, q: int) -> None:
    if field.q != q:
        raise AlphabetNotField(f"alphabet of size {q} does not carry GF({field.q})")


def translation(beta: Sequence[int], field: Field) -> Automorphism:
    """t_beta: a -> a + beta_i at every entry i."""
    q = field.q
    if any(not 0 <= b < q for b in beta):
        raise AlphabetNotField(f"{tuple(beta)} is not a vector over GF({q})")
    g = tuple(tuple(field.add(a, b) for a in range(q)) for b in beta)
    return Automorphism(g, perm_identity(len(beta)))


def scalar_multiplication(lam: int, m: int, field: Field) -> Automorphism:
    """Multiply every entry by the nonzero field element ``lam``."""
    if lam == 0:
        raise SingularMatrix("scalar must be nonzero")
    gi = tuple(field.mul(lam, a) for a in range(field.q))
    return Automorphism((gi,) * m, perm_identity(m))


def _mat_vec(A: Sequence[Sequence[int]], v: Sequence[int], field: Field) -> list[int]:
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, v):
            acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def matrix_rank(A: Sequence[Sequence[int]], field: Field) -> int:
    rows = [list(r) for r in A]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, a) for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def entry_perm_from_affine(A: Sequence[Sequence[int]], b: Sequence[int], field: Field) -> Automorphism:
    """Entry permutation v -> Av + b of M = F_q^d, as an automorphism of H(q^d, q)."""
    d = len(b)
    if len(A) != d or any(len(row) != d for row in A):
        raise SingularMatrix("matrix shape does not match the translation vector")
    if matrix_rank(A, field) != d:
        raise SingularMatrix("matrix is not invertible")
    q = field.q
    m = q**d
    sigma = []
    for i in range(m):
        v = index_vector(i, d, q)
        w = [field.add(a, c) for a, c in zip(_mat_vec(A, v, field), b)]
        sigma.append(vector_index(w, q))
    return Automorphism((perm_identity(q),) * m, tuple(sigma))


# -- orbits and enumeration -----------------------------------------------------


def orbit_keys(
    seeds: np.ndarray,
    gens: Sequence[Automorphism],
    m: int,
    q: int,
    *,
    bound: int = DEFAULT_ORBIT_BOUND,
    inside: Code | None = None,
) -> np.ndarray | None:
    """Sorted keys of the closure of ``seeds`` under ``gens``.

    With ``inside`` given, returns None as soon as the closure leaves it.
    """
    for x in gens:
        x._check(m, q)
    seeds = np.unique(np.asarray(seeds, dtype=np.int64))
    dense = q**m <= DEFAULT_VERTEX_BOUND
    if dense:
        seen = np.zeros(q**m, dtype=bool)
        seen[seeds] = True
    else:
        visited = seeds
    frontier = seeds
    total = len(seeds)
    while len(frontier):
        found = []
        for x in gens:
            img = x.apply_keys(frontier)
            if inside is not None and not inside.contains_keys(img).all():
                return None
            if dense:
                img = np.unique(img[~seen[img]])
                seen[img] = True
            else:
                img = np.setdiff1d(np.unique(img), visited, assume_unique=True)
                visited = np.union1d(visited, img)
            found.append(img)
            total += len(img)
            if total > bound:
                raise OrbitBoundExceeded(f"orbit exceeds {bound} vertices")
        frontier = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
    return np.nonzero(seen)[0].astype(np.int64) if dense else visited


def orbit(seed: Sequence[int], gens: Sequence[Automorphism], q: int, *, bound: int = DEFAULT_ORBIT_BOUND) -> Code:
    """Breadth-first closure of a single vertex under the generators."""
    m = len(seed)
    keys = orbit_keys(np.array([pack(seed, q)]), gens, m, q, bound=bound)
    return Code.from_keys(keys, m, q, assume_unique=True)


def is_single_orbit(s: Code, gens: Sequence[Automorphism], *, bound: int = DEFAULT_ORBIT_BOUND) -> bool:
    """Generators stabilise ``s`` and act transitively on it."""
    if len(s) == 0:
        return True
    if not all(stabilises(s, x) for x in gens):
        return False
    seed = s.lex_keys()[:1]
    keys = orbit_keys(seed, gens, s.m, s.q, bound=bound, inside=s)
    return keys is not None and len(keys) == len(s)


def full_aut_order(m: int, q: int) -> int:
    return factorial(q) ** m * factorial(m)


def enumerate_full_aut(m: int, q: int, limit: int = DEFAULT_GROUP_BOUND) -> Iterator[Automorphism]:
    """Every element of S_q^m ⋊ S_m once, entry permutation outermost."""
    if full_aut_order(m, q) > limit:
        raise GroupTooLarge(f"|Aut(H({m},{q}))| = {full_aut_order(m, q)} > {limit}")
    alph = list(itertools.permutations(range(q)))
    for sigma in itertools.permutations(range(m)):
        for g in itertools.product(alph, repeat=m):
            yield Automorphism(g, sigma)


def generated_group(gens: Sequence[Automorphism], limit: int = DEFAULT_GROUP_BOUND) -> set[Automorphism]:
    """All elements of the group generated by ``gens`` (closure under right multiplication)."""
    if not gens:
        raise ValueError("need at least one generator")
    ident = Automorphism.identity(gens[0].m, gens[0].q)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for x in gens:
                b = a * x
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
                    if len(elems) > limit:
                        raise GroupTooLarge(f"generated group exceeds {limit} elements")
        frontier = nxt
    return elems


# -- text format ------------------------------------------------------------------

_PART = re.compile(r"^\s*(PERM|DIAG|TRANSLATE|SCALE|ID)\b\s*(\d+)?\s*:?\s*(.*?)\s*$", re.IGNORECASE)


def parse_automorphism(script: str, m: int, q: int, field: Field | None = None) -> Automorphism:
    """Parse ``PERM: cycles | DIAG i: cycles | TRANSLATE: vertex | SCALE: c``.

    Parts are separated by '|' or newlines and multiplied left-to-right.
    Cycle notation is 0-based; '#' starts a comment.
    """
    result = Automorphism.identity(m, q)
    lines = [ln.split("#", 1)[0] for ln in script.splitlines()]
    parts = [p for ln in lines for p in ln.split("|") if p.strip()]
    for part in parts:
        match = _PART.match(part)
        if not match:
            raise ParseError(f"cannot parse automorphism part {part.strip()!r}")
        kind, idx, body = match.group(1).upper(), match.group(2), match.group(3)
        if kind != "DIAG" and idx is not None:
            body = f"{idx} {body}".strip()
        if kind == "ID":
            x = Automorphism.identity(m, q)
        elif kind == "PERM":
            x = Automorphism.build(m, q, sigma=perm_from_cycles(body, m))
        elif kind == "DIAG":
            if idx is None:
                raise ParseError(f"DIAG needs an entry index: {part.strip()!r}")
            i = int(idx)
            if not 0 <= i < m:
                raise ParseError(f"DIAG entry {i} outside 0..{m - 1}")
            g = [perm_identity(q)] * m
            g[i] = perm_from_cycles(body, q)
            x = Automorphism.build(m, q, g=g)
        elif kind == "TRANSLATE":
            if field is None:
                raise AlphabetNotField("TRANSLATE needs a field alphabet")
            x = translation(parse_vertex(body, m, q), field)
        else:
            if field is None:
                raise AlphabetNotField("SCALE needs a field alphabet")
            x = scalar_multiplication(int(body), m, field)
        result = result * x
    return result


def parse_vertex(text: str, m: int, q: int) -> Vertex:
    """Accept ``0 1 2``, ``0,1,2`` or (when q <= 10) ``012``."""
    text = text.strip()
    if re.fullmatch(r"\d+", text) and len(text) == m and q <= 10:
        vals = [int(c) for c in text]
    else:
        try:
            vals = [int(t) for t in re.split(r"[\s,]+", text) if t]
        except ValueError:
            raise ParseError(f"bad vertex {text!r}") from None
    if len(vals) != m or any(not 0 <= v < q for v in vals):
        raise ParseError(f"{text!r} is not a vertex of H({m},{q})")
    return tuple(vals)

