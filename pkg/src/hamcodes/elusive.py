"""Elusive triples and everything derived from them.

For a code C with neighbour set C_1, a triple (C, alpha, x) is elusive when
alpha is a codeword, x fixes C_1 setwise and alpha^x is not a codeword.
Its associates are the vertices of C^x at distance two from alpha; pairs of
associates are compared through their mutual codewords
C ∩ Γ2(π) ∩ Γ2(π'), and the associates define a graph on entry labels.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .autgrp import Automorphism, stabilises
from .errors import AmbientMismatch, NotVerifiedTriple, SimplicityViolation
from .hamming import (
    DEFAULT_VERTEX_BOUND,
    Code,
    Vertex,
    diff,
    distance,
    distance_partition,
    distance_to_code,
    neighbour_keys,
    neighbour_set,
    sphere,
    sphere2_intersection,
    unpack,
)


@dataclass(frozen=True)
class ElusiveReport:
    """Outcome of checking a candidate triple (C, alpha, x)."""

    m: int
    q: int
    alpha: Vertex
    x: Automorphism
    alpha_in_code: bool
    fixes_neighbour_set: bool
    image_outside_code: bool
    delta: int | None
    neighbour_set_size: int
    fixes_code: bool | None = None

    @property
    def is_elusive(self) -> bool:
        return self.alpha_in_code and self.fixes_neighbour_set and self.image_outside_code

    @property
    def reason(self) -> str:
        if not self.alpha_in_code:
            return "alpha is not a codeword"
        if not self.fixes_neighbour_set:
            return "x does not fix the neighbour set"
        if not self.image_outside_code:
            return "x fixes C" if self.fixes_code else "alpha^x is a codeword"
        return "elusive"

    def sanity(self) -> dict[str, bool]:
        """Facts every elusive triple must satisfy."""
        d = self.delta
        return {
            "delta_at_most_4": d is not None and d <= 4,
            "delta_4_only_binary": d != 4 or self.q == 2,
            "m_times_q_minus_1_even": self.m * (self.q - 1) % 2 == 0,
        }


def verify_triple(code: Code, alpha: Sequence[int], x: Automorphism, bound: int = DEFAULT_VERTEX_BOUND) -> ElusiveReport:
    alpha = tuple(alpha)
    if len(alpha) != code.m:
        raise AmbientMismatch(f"alpha has length {len(alpha)}, code has m={code.m}")
    x._check(code.m, code.q)
    c1 = neighbour_set(code, bound)
    moved_out = x.apply(alpha) not in code
    return ElusiveReport(
        m=code.m,
        q=code.q,
        alpha=alpha,
        x=x,
        alpha_in_code=alpha in code,
        fixes_neighbour_set=stabilises(c1, x),
        image_outside_code=moved_out,
        delta=code.min_distance,
        neighbour_set_size=len(c1),
        fixes_code=None if moved_out else stabilises(code, x),
    )


# -- mutual codewords ------------------------------------------------------------


@dataclass(frozen=True)
class MCReport:
    """Mutual codewords of an associate pair."""

    pi: Vertex
    pi2: Vertex
    distance: int
    witnesses: tuple[Vertex, ...]
    verified_context: bool = True

    @property
    def mc(self) -> int:
        return len(self.witnesses)

    def bounds_ok(self) -> bool:
        """1 <= MC <= 3, and MC <= 2 at distance four."""
        if not 1 <= self.mc <= 3:
            return False
        return self.distance != 4 or self.mc <= 2

    def as_dict(self) -> dict:
        return {"pi": list(self.pi), "pi2": list(self.pi2), "d": self.distance, "mc": self.mc}


def mc_count(code: Code, pi: Sequence[int], pi2: Sequence[int], *, verified_context: bool = False) -> MCReport:
    """Codewords at distance two from both ``pi`` and ``pi2``."""
    pi, pi2 = tuple(pi), tuple(pi2)
    if pi == pi2:
        raise ValueError("mutual codewords need two distinct vertices")
    d = distance(pi, pi2)
    cand = sphere2_intersection(pi, pi2, code.q, fallback=True)
    wit = tuple(sorted(v for v in cand if v in code))
    return MCReport(pi, pi2, d, wit, verified_context)


def bound3_shape_ok(alpha: Vertex, rep: MCReport, q: int) -> bool:
    """Three mutual codewords at distance three must take the forced shape.

    With {i,j} = diff(alpha, pi) and {j,k} = diff(alpha, pi2) the set is
    {alpha, gamma(alpha|i,j,k|pi_i, pi2_j, a), gamma(alpha|i,j,k|c, pi_j, pi2_k)}
    for some a not in {alpha_k, pi2_k} and c not in {alpha_i, pi_i}.
    """
    if rep.mc != 3 or rep.distance != 3 or alpha not in rep.witnesses:
        return False
    d1, d2 = diff(alpha, rep.pi), diff(alpha, rep.pi2)
    shared = d1 & d2
    if len(d1) != 2 or len(d2) != 2 or len(shared) != 1:
        return False
    (j,) = shared
    (i,) = d1 - shared
    (k,) = d2 - shared
    pi, pi2 = rep.pi, rep.pi2
    first = {
        tuple(pi[i] if e == i else pi2[j] if e == j else a if e == k else alpha[e] for e in range(len(alpha)))
        for a in range(q)
        if a not in (alpha[k], pi2[k])
    }
    second = {
        tuple(c if e == i else pi[j] if e == j else pi2[k] if e == k else alpha[e] for e in range(len(alpha)))
        for c in range(q)
        if c not in (alpha[i], pi[i])
    }
    others = [w for w in rep.witnesses if w != alpha]
    return len(others) == 2 and any(
        a in first and b in second for a, b in (others, others[::-1])
    )


# -- associate graphs --------------------------------------------------------------


@dataclass(frozen=True)
class AssociateGraph:
    """Graph on entry labels 0..m-1 with one edge per associate."""

    m: int
    edges: tuple[tuple[int, int, Vertex], ...]

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in range(self.m)}
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return {i: sorted(v) for i, v in adj.items()}

    def degrees(self) -> list[int]:
        return [len(self.adjacency[i]) for i in range(self.m)]

    def to_dot(self, name: str = "associates") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {i};" for i in range(self.m)]
        for i, j, pi in self.edges:
            sep = "" if max(pi, default=0) < 10 else " "
            lines.append(f'  {i} -- {j} [label="{sep.join(map(str, pi))}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GraphDiagnostics:
    is_regular: bool
    valency: int | None
    components: tuple[tuple[int, ...], ...]
    is_disjoint_kq: bool

    @property
    def component_sizes(self) -> list[int]:
        return [len(c) for c in self.components]


def graph_diagnostics(graph: AssociateGraph, q: int) -> GraphDiagnostics:
    degs = graph.degrees()
    regular = len(set(degs)) <= 1
    valency = degs[0] if regular and degs else None
    seen: set[int] = set()
    comps = []
    for start in range(graph.m):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in graph.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    complete = all(
        len(c) == q and all(len(graph.adjacency[v]) == q - 1 and set(graph.adjacency[v]) <= set(c) for v in c)
        for c in comps
    )
    return GraphDiagnostics(regular, valency, tuple(comps), bool(comps) and complete)


# -- analysis of a triple ------------------------------------------------------------


@dataclass(frozen=True)
class PartitionVerdict:
    """Result of the two neighbour-partition checks around alpha and each associate."""

    ok: bool
    expected_parts: int
    parts_at_alpha: int
    parts_at_associates: tuple[int, ...]
    violation: str | None = None


@dataclass(frozen=True)
class Census:
    """Mutual-codeword counts over all associate pairs."""

    q: int
    pairs: tuple[MCReport, ...]
    associates: tuple[Vertex, ...]

    @cached_property
    def distance3_partners(self) -> list[int]:
        counts = Counter()
        for r in self.pairs:
            if r.distance == 3:
                counts[r.pi] += 1
                counts[r.pi2] += 1
        return [counts[a] for a in self.associates]

    @cached_property
    def mc3_partners(self) -> list[int]:
        counts = Counter()
        for r in self.pairs:
            if r.mc == 3:
                counts[r.pi] += 1
                counts[r.pi2] += 1
        return [counts[a] for a in self.associates]

    @property
    def distance3_pairs(self) -> list[MCReport]:
        return [r for r in self.pairs if r.distance == 3]

    def histogram(self) -> dict[str, int]:
        hist = Counter(f"d{r.distance}:mc{r.mc}" for r in self.pairs)
        return dict(sorted(hist.items()))

    def mc3_bound(self) -> int | None:
        """Upper bound on per-associate MC = 3 partners for the RM family, by q mod 3."""
        return {0: 2, 1: 4, 2: 0}[self.q % 3]

    def as_dict(self) -> dict:
        return {
            "pairs": [r.as_dict() for r in self.pairs],
            "per_associate_d3_counts": self.distance3_partners,
            "per_associate_mc3_counts": self.mc3_partners,
            "histogram": self.histogram(),
        }


@dataclass(frozen=True)
class TheoremVerdict:
    hypothesis_holds: bool
    distance3_pairs: int
    counterexample: tuple[Vertex, Vertex, int] | None
    q_divides_m: bool
    components: tuple[int, ...]
    disjoint_kq: bool

    @property
    def consistent(self) -> bool:
        """Hypothesis implies q | m and a disjoint union of K_q."""
        return not self.hypothesis_holds or (self.q_divides_m and self.disjoint_kq)


class Triple:
    """A candidate triple (C, alpha, x) with lazily computed diagnostics.

    Operations that presuppose an elusive triple raise NotVerifiedTriple
    unless ``override`` is set; results computed under override carry
    ``verified=False`` so invariant checks can skip bound assertions.
    """

    def __init__(
        self,
        code: Code,
        alpha: Sequence[int],
        x: Automorphism,
        *,
        override: bool = False,
        bound: int = DEFAULT_VERTEX_BOUND,
        workers: int = 1,
    ):
        self.code = code
        self.alpha = tuple(alpha)
        self.x = x
        self.override = override
        self.bound = bound
        self.workers = workers

    @property
    def m(self) -> int:
        return self.code.m

    @property
    def q(self) -> int:
        return self.code.q

    @cached_property
    def report(self) -> ElusiveReport:
        return verify_triple(self.code, self.alpha, self.x, self.bound)

    @property
    def verified(self) -> bool:
        return self.report.is_elusive

    def _require(self) -> None:
        if not self.override and not self.verified:
            raise NotVerifiedTriple(f"triple is not elusive: {self.report.reason}")

    @cached_property
    def associates(self) -> tuple[Vertex, ...]:
        """Γ2(alpha) ∩ C^x, lexicographically sorted."""
        self._require()
        xinv = self.x.inverse()
        return tuple(sorted(v for v in sphere(self.alpha, 2, self.q) if xinv.apply(v) in self.code))

    def expected_associates(self) -> int:
        return self.m * (self.q - 1) // 2

    def partition_check(self) -> PartitionVerdict:
        """Γ1(alpha) split by the associates, and Γ1(π) split by Γ2(π) ∩ C, into pairs."""
        expected = self.expected_associates()
        alpha = self.alpha
        n1 = sphere(alpha, 1, self.q)
        covered: Counter = Counter()
        for pi in self.associates:
            part = [v for v in n1 if distance(v, pi) == 1]
            if len(part) != 2:
                return PartitionVerdict(False, expected, len(self.associates), (), f"associate {pi} meets Γ1(alpha) in {len(part)}")
            covered.update(part)
        for v in sorted(n1):
            if covered[v] != 1:
                return PartitionVerdict(False, expected, len(self.associates), (), f"neighbour {v} covered {covered[v]} times")
        if len(self.associates) != expected:
            return PartitionVerdict(False, expected, len(self.associates), (), f"{len(self.associates)} associates, expected {expected}")
        at_assoc = []
        for pi in self.associates:
            n1pi = sphere(pi, 1, self.q)
            near = [b for b in sphere(pi, 2, self.q) if b in self.code]
            cov: Counter = Counter()
            for b in near:
                part = [v for v in n1pi if distance(v, b) == 1]
                if len(part) != 2:
                    return PartitionVerdict(False, expected, len(self.associates), tuple(at_assoc), f"codeword {b} meets Γ1({pi}) in {len(part)}")
                cov.update(part)
            bad = [v for v in sorted(n1pi) if cov[v] != 1]
            if bad:
                return PartitionVerdict(False, expected, len(self.associates), tuple(at_assoc), f"neighbour {bad[0]} of associate {pi} covered {cov[bad[0]]} times")
            at_assoc.append(len(near))
        ok = all(n == expected for n in at_assoc)
        why = None if ok else f"associate parts {at_assoc}, expected {expected}"
        return PartitionVerdict(ok, expected, len(self.associates), tuple(at_assoc), why)

    @cached_property
    def graph(self) -> AssociateGraph:
        edges = []
        seen: dict[tuple[int, int], Vertex] = {}
        for pi in self.associates:
            i, j = sorted(diff(self.alpha, pi))
            if (i, j) in seen:
                raise SimplicityViolation(f"associates {seen[(i, j)]} and {pi} both give edge {{{i},{j}}}")
            seen[(i, j)] = pi
            edges.append((i, j, pi))
        return AssociateGraph(self.m, tuple(sorted(edges)))

    @cached_property
    def diagnostics(self) -> GraphDiagnostics:
        return graph_diagnostics(self.graph, self.q)

    def mc(self, pi: Vertex, pi2: Vertex) -> MCReport:
        return mc_count(self.code, pi, pi2, verified_context=self.verified)

    @cached_property
    def census(self) -> Census:
        pairs = list(itertools.combinations(self.associates, 2))
        if self.workers > 1:
            with ThreadPoolExecutor(self.workers) as pool:
                reps = list(pool.map(lambda p: self.mc(*p), pairs))
        else:
            reps = [self.mc(a, b) for a, b in pairs]
        return Census(self.q, tuple(reps), self.associates)

    def theorem_check(self) -> TheoremVerdict:
        d3 = self.census.distance3_pairs
        bad = next((r for r in d3 if r.mc != 3), None)
        diag = self.diagnostics
        return TheoremVerdict(
            hypothesis_holds=bad is None,
            distance3_pairs=len(d3),
            counterexample=None if bad is None else (bad.pi, bad.pi2, bad.mc),
            q_divides_m=self.m % self.q == 0,
            components=tuple(diag.component_sizes),
            disjoint_kq=diag.is_disjoint_kq,
        )

    def summary(self) -> dict:
        """Numbers that must be invariant under replacing the triple by an equivalent one."""
        return {
            "associates": len(self.associates),
            "mc_histogram": self.census.histogram(),
            "components": sorted(self.diagnostics.component_sizes),
        }

    def conjugate(self, y: Automorphism) -> "Triple":
        """(C^y, alpha^y, y^-1 x y)."""
        from .autgrp import image

        return Triple(
            image(self.code, y),
            y.apply(self.alpha),
            self.x.conjugate(y),
            override=self.override,
            bound=self.bound,
            workers=self.workers,
        )

    def to_json(self) -> dict:
        rep = self.report
        out: dict = {
            "triple": {"alpha": list(self.alpha), "x": self.x.to_script(), "m": self.m, "q": self.q},
            "verdicts": {
                "elusive": rep.is_elusive,
                "reason": rep.reason,
                "alpha_in_code": rep.alpha_in_code,
                "fixes_neighbour_set": rep.fixes_neighbour_set,
                "image_outside_code": rep.image_outside_code,
                "delta": rep.delta,
                "code_size": len(self.code),
                "neighbour_set_size": rep.neighbour_set_size,
                **rep.sanity(),
            },
        }
        if not (rep.is_elusive or self.override):
            return out
        part = self.partition_check()
        thm = self.theorem_check()
        diag = self.diagnostics
        out["verdicts"].update(
            {
                "partition_ok": part.ok,
                "associate_count": len(self.associates),
                "expected_associates": self.expected_associates(),
                "m_at_least_q": self.m >= self.q,
                "hypothesis_holds": thm.hypothesis_holds,
                "q_divides_m": thm.q_divides_m,
                "theorem_consistent": thm.consistent,
            }
        )
        out["associates"] = [list(a) for a in self.associates]
        out["mc_census"] = self.census.as_dict()
        out["graph"] = {
            "edges": [[i, j, list(pi)] for i, j, pi in self.graph.edges],
            "components": diag.component_sizes,
            "regular": diag.is_regular,
            "valency": diag.valency,
            "disjoint_kq": diag.is_disjoint_kq,
        }
        return out


# -- module-level wrappers ---------------------------------------------------------------


def associates(code: Code, alpha: Sequence[int], x: Automorphism, *, override: bool = False) -> tuple[Vertex, ...]:
    return Triple(code, alpha, x, override=override).associates


def neighbour_partition_check(code: Code, alpha: Sequence[int], x: Automorphism) -> PartitionVerdict:
    return Triple(code, alpha, x, override=True).partition_check()


def associate_graph(code: Code, alpha: Sequence[int], x: Automorphism) -> AssociateGraph:
    return Triple(code, alpha, x).graph


def distance3_census(code: Code, alpha: Sequence[int], x: Automorphism, workers: int = 1) -> Census:
    return Triple(code, alpha, x, workers=workers).census


def theorem_maximum_check(code: Code, alpha: Sequence[int], x: Automorphism) -> TheoremVerdict:
    return Triple(code, alpha, x).theorem_check()


def first_moved_codeword(code: Code, x: Automorphism) -> Vertex | None:
    """Lexicographically least codeword mapped outside the code."""
    keys = code.lex_keys()
    moved = ~code.contains_keys(x.apply_keys(keys))
    if not moved.any():
        return None
    return unpack(int(keys[np.argmax(moved)]), code.m, code.q)


# -- witnesses ------------------------------------------------------------------------------


def find_witnesses(code: Code, candidates: Iterable[Automorphism], bound: int = DEFAULT_VERTEX_BOUND) -> Iterable[Automorphism]:
    """Candidates fixing C_1 but not C, in candidate order."""
    c1 = neighbour_set(code, bound)
    for x in candidates:
        if stabilises(c1, x) and not stabilises(code, x):
            yield x


def find_witness(code: Code, candidates: Iterable[Automorphism], bound: int = DEFAULT_VERTEX_BOUND) -> Automorphism | None:
    return next(iter(find_witnesses(code, candidates, bound)), None)


# -- non-elusiveness mechanism -----------------------------------------------------------------


@dataclass(frozen=True)
class DepthReport:
    """Which vertices of C_2 have no neighbour in C_3."""

    c2_size: int
    lacking: tuple[Vertex, ...] = field(default=())

    @property
    def all_deep(self) -> bool:
        return not self.lacking

    def lacking_shapes(self) -> dict[tuple[int, ...], int]:
        """Symbol-multiplicity shapes (descending) of the flagged vertices."""
        shapes = Counter(tuple(sorted(Counter(v).values(), reverse=True)) for v in self.lacking)
        return dict(sorted(shapes.items()))


def c2_depth_check(code: Code, bound: int = DEFAULT_VERTEX_BOUND) -> DepthReport:
    part = distance_partition(code, bound)
    if len(part) < 3:
        return DepthReport(0)
    dist = distance_to_code(code, bound)
    c2 = part[2]
    nbs = neighbour_keys(c2.keys, code.m, code.q)
    deep = (dist[nbs] == 3).any(axis=1)
    lacking_keys = c2.keys[~deep]
    lacking = Code.from_keys(lacking_keys, code.m, code.q, assume_unique=True).vertices()
    return DepthReport(len(c2), tuple(lacking))
