"""Code families and their named automorphisms.

Permutation codes ``C(T, l)`` live in H(lq, q) with a block-major entry
layout: entry ``(i, j)`` (symbol position ``i`` of block ``j``, both
0-based) is label ``j*q + i``. Symbols are ``0..q-1``, so the vertex of
a permutation ``g`` is simply its one-line form.

The Reed-Muller pair lives in H(q^d, q) with entries indexed by the
vectors of F_q^d through :func:`hamcodes.gf.index_vector`:

    top  = RM_q(s, d)   = {a : sum_v a_v = 0}
    code = RM_q(s-1, d) = {a in top : sum_v a_v v = 0},   s = (q-1)d - 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from .autgrp import (
    Automorphism,
    Perm,
    entry_perm_from_affine,
    is_perm,
    perm_compose,
    perm_identity,
    perm_sign,
    scalar_multiplication,
    stabilises,
    translation,
)
from .errors import EnumerationBoundExceeded, NotBijection, ParseError
from .gf import Field, field_of_order, index_vector, vector_index
from .hamming import DEFAULT_VERTEX_BOUND, Code, Vertex, decode, encode

# -- permutation codes ----------------------------------------------------------


def alpha_of_perm(g: Sequence[int]) -> Vertex:
    """The vertex (0^g, 1^g, ..., (q-1)^g) of H(q, q)."""
    if not is_perm(g):
        raise NotBijection(f"{tuple(g)} is not a permutation")
    return tuple(g)


def cycle(points: Sequence[int], n: int) -> Perm:
    out = list(range(n))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        out[a] = b
    return tuple(out)


@dataclass(frozen=True)
class PermCodeSpec:
    """Parameters of C(T, l); ``selector`` is 'A', 'S', 'odd' or a tuple of permutations."""

    q: int
    l: int
    selector: str | tuple[Perm, ...] = "A"

    @property
    def m(self) -> int:
        return self.q * self.l

    def accepts(self, product: Perm) -> bool:
        sel = self.selector
        if sel == "S":
            return True
        if sel == "A":
            return perm_sign(product) == 1
        if sel == "odd":
            return perm_sign(product) == -1
        return product in set(sel)


def perm_code(q: int, l: int = 1, selector: str | Sequence[Sequence[int]] = "A", bound: int = DEFAULT_VERTEX_BOUND) -> Code:
    """Concatenations (alpha(g_1), ..., alpha(g_l)) with g_1 g_2 ... g_l in T."""
    if q < 2 or l < 1:
        raise ValueError("need q >= 2 and l >= 1")
    if not isinstance(selector, str):
        selector = tuple(tuple(p) for p in selector)
    elif selector not in ("A", "S", "odd"):
        raise ParseError(f"unknown permutation-code selector {selector!r}")
    spec = PermCodeSpec(q, l, selector)
    if factorial(q) ** l > bound:
        raise EnumerationBoundExceeded(f"(q!)^l = {factorial(q) ** l} exceeds {bound}")
    perms = list(itertools.permutations(range(q)))
    rows = []
    for gs in itertools.product(perms, repeat=l):
        prod = perm_identity(q)
        for g in gs:
            prod = perm_compose(prod, g)
        if spec.accepts(prod):
            rows.append(tuple(itertools.chain.from_iterable(gs)))
    return Code(rows, spec.m, q)


def repetition_code(q: int, m: int) -> Code:
    return Code([(a,) * m for a in range(q)], m, q)


def _block_entries(q: int, block: int) -> range:
    return range(block * q, (block + 1) * q)


def diag_elem(y: Sequence[int], l: int = 1, block: int | None = 0) -> Automorphism:
    """x_y: apply ``y`` to the symbols of one block (all blocks if ``block`` is None)."""
    q = len(y)
    if not is_perm(y):
        raise NotBijection(f"{tuple(y)} is not a permutation")
    g = [perm_identity(q)] * (q * l)
    blocks = range(l) if block is None else [block]
    for b in blocks:
        for e in _block_entries(q, b):
            g[e] = tuple(y)
    return Automorphism.build(q * l, q, g=g)


def entry_perm_elem(y: Sequence[int], l: int = 1, block: int = 0) -> Automorphism:
    """sigma_y: permute the entries of one block as ``y`` permutes symbols."""
    q = len(y)
    sigma = list(range(q * l))
    for i in range(q):
        sigma[block * q + i] = block * q + y[i]
    return Automorphism.build(q * l, q, sigma=sigma)


def a_elem(y: Sequence[int], l: int = 1, block: int = 0) -> Automorphism:
    """x_y sigma_y on one block; acts on alpha(g) as alpha(y^-1 g y)."""
    return diag_elem(y, l, block) * entry_perm_elem(y, l, block)


def block_perm(tau: Sequence[int], q: int) -> Automorphism:
    """Move block j to block tau(j), keeping positions inside blocks."""
    l = len(tau)
    sigma = [tau[e // q] * q + e % q for e in range(q * l)]
    return Automorphism.build(q * l, q, sigma=sigma)


def aut_gens_perm_code(q: int, l: int, which: str = "S", *, check: bool = True) -> list[Automorphism]:
    """Generators inside Aut(C(S_q, l)) (which='S') or Aut(C(A_q, l)) (which='A').

    The S list is per-block Diag and A generators plus block permutations.
    The A list keeps the product of the blocks' diagonal permutations even:
    even diagonals per block, and odd diagonals only in compensating pairs.
    """
    t = cycle([0, 1], q)
    c = cycle(list(range(q)), q)
    sym_gens = [t] if q == 2 else [t, c]
    gens: list[Automorphism] = []
    for b in range(l):
        for y in sym_gens:
            gens.append(a_elem(y, l, b))
        if which == "S":
            for y in sym_gens:
                gens.append(diag_elem(y, l, b))
        elif which == "A":
            for k in range(2, q):
                gens.append(diag_elem(cycle([0, 1, k], q), l, b))
            if b > 0:
                gens.append(diag_elem(t, l, 0) * diag_elem(t, l, b))
        else:
            raise ParseError(f"unknown group selector {which!r}")
    if l >= 2:
        gens.append(block_perm(cycle([0, 1], l), q))
        if l >= 3:
            gens.append(block_perm(cycle(list(range(l)), l), q))
    gens = list(dict.fromkeys(x for x in gens if not x.is_identity()))
    if check:
        code = perm_code(q, l, which)
        for x in gens:
            if not stabilises(code, x):
                raise AssertionError(f"generator {x.to_script()} does not fix C({which}_{q},{l})")
    return gens


# -- Reed-Muller codes ------------------------------------------------------------


@dataclass(frozen=True)
class RMCodeSpec:
    """RM_q(s, d) and RM_q(s-1, d) with s = (q-1)d - 1."""

    field: Field
    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension d must be >= 1")
        if (self.d, self.field.q) == (1, 2):
            raise ValueError("(d, q) = (1, 2) is excluded")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def m(self) -> int:
        return self.q**self.d

    @property
    def s(self) -> int:
        return (self.q - 1) * self.d - 1

    def entry(self, v: Sequence[int]) -> int:
        """Entry label of the vector v in F_q^d."""
        return vector_index(v, self.q)

    def unit(self, i: int) -> int:
        """Entry label of the standard basis vector e_{i+1}."""
        return self.q**i

    def vector(self, label: int) -> tuple[int, ...]:
        return index_vector(label, self.d, self.q)


def rm_spec(q: int, d: int) -> RMCodeSpec:
    return RMCodeSpec(field_of_order(q), d)


def _pivots(spec: RMCodeSpec, with_vector_condition: bool) -> list[int]:
    return [0] + ([spec.unit(i) for i in range(spec.d)] if with_vector_condition else [])


def _solve_rows(spec: RMCodeSpec, free_vals: np.ndarray, with_vector_condition: bool) -> np.ndarray:
    """Complete free-coordinate assignments to codewords (rows of symbols)."""
    F = spec.field
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    pivots = _pivots(spec, with_vector_condition)
    free = [e for e in range(spec.m) if e not in pivots]
    n = free_vals.shape[0]
    rows = np.zeros((n, spec.m), dtype=np.int64)
    rows[:, free] = free_vals
    if with_vector_condition:
        # pivot entry e_i absorbs coordinate i of sum_{free v} a_v v
        for i in range(spec.d):
            acc = np.zeros(n, dtype=np.int64)
            for col, e in enumerate(free):
                coeff = spec.vector(e)[i]
                if coeff:
                    acc = add[acc, mul[free_vals[:, col], coeff]]
            rows[:, spec.unit(i)] = neg[acc]
    total = np.zeros(n, dtype=np.int64)
    for e in range(1, spec.m):
        total = add[total, rows[:, e]]
    rows[:, 0] = neg[total]
    return rows


def _rm_code(spec: RMCodeSpec, with_vector_condition: bool, bound: int) -> Code:
    n_free = spec.m - len(_pivots(spec, with_vector_condition))
    size = spec.q**n_free
    if size > bound:
        raise EnumerationBoundExceeded(f"code would have {size} codewords > {bound}")
    free_vals = decode(np.arange(size, dtype=np.int64), n_free, spec.q)
    rows = _solve_rows(spec, free_vals, with_vector_condition)
    return Code.from_keys(encode(rows, spec.q), spec.m, spec.q)


def rm_codes(spec: RMCodeSpec, bound: int = DEFAULT_VERTEX_BOUND) -> tuple[Code, Code]:
    """(RM_q(s, d), RM_q(s-1, d)), built by sweeping the free coordinates."""
    return _rm_code(spec, False, bound), _rm_code(spec, True, bound)


def rm_basis(spec: RMCodeSpec, with_vector_condition: bool) -> list[Vertex]:
    """F_p-spanning set of the code: one codeword per (free entry, prime-basis scalar)."""
    pivots = _pivots(spec, with_vector_condition)
    free = [e for e in range(spec.m) if e not in pivots]
    out = []
    for col in range(len(free)):
        for c in spec.field.prime_basis():
            vals = np.zeros((1, len(free)), dtype=np.int64)
            vals[0, col] = c
            row = _solve_rows(spec, vals, with_vector_condition)[0]
            out.append(tuple(int(a) for a in row))
    return out


def agl_generators(spec: RMCodeSpec) -> list[Automorphism]:
    """Entry permutations generating AGL(d, q) acting on M = F_q^d.

    Transvections I + c E_ij (c over a prime basis), diag(w, 1, ..., 1)
    for a primitive w, and the translations by the standard basis.
    """
    F, d = spec.field, spec.d
    eye = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    zero = [0] * d
    gens = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            for c in F.prime_basis():
                A = [row[:] for row in eye]
                A[i][j] = c
                gens.append(entry_perm_from_affine(A, zero, F))
    if F.q > 2:
        A = [row[:] for row in eye]
        A[0][0] = F.primitive_element()
        gens.append(entry_perm_from_affine(A, zero, F))
    for i in range(d):
        b = [1 if k == i else 0 for k in range(d)]
        gens.append(entry_perm_from_affine(eye, b, F))
    return gens


def aut_gens_rm(spec: RMCodeSpec, *, check: bool = True) -> tuple[list[Automorphism], list[Automorphism]]:
    """Generators in X = Aut(RM_q(s-1, d)) and in X_1 = Aut(RM_q(s, d)).

    X: translations by a spanning set of RM_q(s-1, d), AGL(d, q) entry
    permutations and scalar multiplication by a primitive element.
    X_1: translations by a spanning set of RM_q(s, d), a transposition and
    an m-cycle of entries (together generating Sym(M)), and the scalar.
    """
    F, m = spec.field, spec.m
    scalars = [scalar_multiplication(F.primitive_element(), m, F)] if F.q > 2 else []
    x_gens = [translation(b, F) for b in rm_basis(spec, True)]
    x_gens += agl_generators(spec) + scalars
    x1_gens = [translation(b, F) for b in rm_basis(spec, False)]
    x1_gens.append(Automorphism.build(m, F.q, sigma=cycle([0, 1], m)))
    x1_gens.append(Automorphism.build(m, F.q, sigma=cycle(list(range(m)), m)))
    x1_gens += scalars
    if check:
        top, code = rm_codes(spec)
        for x in x_gens:
            if not stabilises(code, x):
                raise AssertionError(f"{x.to_script()} does not fix RM_q(s-1,d)")
        for x in x1_gens:
            if not stabilises(top, x):
                raise AssertionError(f"{x.to_script()} does not fix RM_q(s,d)")
    return x_gens, x1_gens


def rm_default_witness(spec: RMCodeSpec) -> Automorphism:
    """Translation by the first spanning vector of RM_q(s, d) outside RM_q(s-1, d)."""
    _, code = rm_codes(spec)
    for b in rm_basis(spec, False):
        if b not in code:
            return translation(b, spec.field)
    raise AssertionError("RM_q(s,d) spanning set lies inside RM_q(s-1,d)")


def perm_default_witness(q: int, l: int) -> Automorphism:
    """Odd diagonal x_(0 1) on the first block; maps C(A_q, l) to its odd coset."""
    return diag_elem(cycle([0, 1], q), l, 0)


# -- selectors ------------------------------------------------------------------------


@dataclass(frozen=True)
class NamedCode:
    """A constructed code together with what is known about its origin."""

    name: str
    code: Code
    kind: str
    params: tuple[int, ...]
    field: Field | None = None

    @property
    def rm(self) -> RMCodeSpec | None:
        if self.kind in ("rm", "rmtop") and self.field is not None:
            return RMCodeSpec(self.field, self.params[1])
        return None


def parse_code_selector(text: str, bound: int = DEFAULT_VERTEX_BOUND) -> NamedCode:
    """``perm:A,q,l``, ``perm:S,q,l``, ``perm:odd,q,l``, ``rep:q,m``, ``rm:q,d``, ``rmtop:q,d``, ``file:PATH``."""
    from .hamming import read_code

    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    if kind == "file":
        code = read_code(rest)
        return NamedCode(text, code, "file", (code.m, code.q))
    args = [a.strip() for a in rest.split(",") if a.strip()]
    try:
        if kind == "perm":
            sel = {"a": "A", "s": "S", "odd": "odd"}.get(args[0].lower())
            if sel is None or len(args) not in (2, 3):
                raise ParseError(f"bad permutation-code selector {text!r}")
            q = int(args[1])
            l = int(args[2]) if len(args) == 3 else 1
            return NamedCode(text, perm_code(q, l, sel, bound), f"perm-{sel}", (q, l))
        if kind == "rep":
            q, m = map(int, args)
            return NamedCode(text, repetition_code(q, m), "rep", (q, m))
        if kind in ("rm", "rmtop"):
            q, d = map(int, args)
            spec = rm_spec(q, d)
            top, code = rm_codes(spec, bound)
            return NamedCode(text, code if kind == "rm" else top, kind, (q, d), spec.field)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad code selector {text!r}: {exc}") from None
    raise ParseError(f"unknown code family in {text!r}")
