"""The acceptance criteria as runnable checks.

Each ``criterion_N`` returns a JSON-ready dict with a boolean ``passed``
and the exact quantities it asserted. Timing is kept out of the dict so
reports are byte-identical across runs; :func:`run` adds it separately.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .autgrp import (
    enumerate_full_aut,
    image,
    parse_automorphism,
    stabilises,
)
from .elusive import Triple, bound3_shape_ok, c2_depth_check, find_witness, first_moved_codeword, mc_count
from .families import (
    aut_gens_rm,
    perm_code,
    perm_default_witness,
    repetition_code,
    rm_codes,
    rm_default_witness,
    rm_spec,
)
from .gf import field_of_order
from .hamming import (
    Code,
    brute_sphere2_intersection,
    code_stats,
    distance,
    neighbour_set,
    sphere2_intersection,
)
from .transitivity import code_images_under, is_completely_transitive

# the odd-coset map (id, (0 1 2), (0 2 1)) on the entries of H(3,3)
A3_SCRIPT = "DIAG 1: (0 1 2) | DIAG 2: (0 2 1)"
# binary RM triple: translate by beta, then swap entries 0 and e1+e2+e3
BINARY_RM_SCRIPT = "TRANSLATE: 0 1 0 0 0 0 0 1 | PERM: (0 7)"
BINARY_RM_PI = (1, 1, 0, 0, 0, 0, 0, 0)
BINARY_RM_PI2 = (0, 0, 1, 0, 1, 0, 0, 0)

TIME_LIMITS = {1: 1.0, 2: 10.0, 3: 30.0, 4: 10.0, 5: 300.0, 6: 30.0, 7: 60.0, 8: 5.0, 9: 5.0, 10: 900.0}


def _v(t) -> list[int]:
    return [int(c) for c in t]


def perm_triples(profile: str = "full") -> list[tuple[str, Triple]]:
    """The permutation-code triples of criteria 2 and 3."""
    out = [("perm:A,3,1", Triple(perm_code(3, 1, "A"), (0, 1, 2), parse_automorphism(A3_SCRIPT, 3, 3)))]
    params = [(3, 2)] if profile == "quick" else [(4, 1), (5, 1), (3, 2)]
    for q, l in params:
        code = perm_code(q, l, "A")
        x = perm_default_witness(q, l)
        out.append((f"perm:A,{q},{l}", Triple(code, first_moved_codeword(code, x), x)))
    return out


def rm_triple(q: int, d: int, workers: int = 1) -> Triple:
    spec = rm_spec(q, d)
    _, code = rm_codes(spec)
    x = rm_default_witness(spec)
    return Triple(code, first_moved_codeword(code, x), x, workers=workers)


# -- criteria ----------------------------------------------------------------------------


def criterion_1(**_) -> dict:
    """Three codes of H(3,3) share one neighbour set; nothing else does."""
    codes = {
        "A3": perm_code(3, 1, "A"),
        "odd": perm_code(3, 1, "odd"),
        "rep": repetition_code(3, 3),
    }
    c1 = neighbour_set(codes["A3"])
    same = all(neighbour_set(c) == c1 for c in codes.values())
    union = Code.whole_space(3, 3)
    pieces = [*codes.values(), c1]
    disjoint = sum(len(p) for p in pieces) == len(union) and all(
        a.isdisjoint(b) for a, b in itertools.combinations(pieces, 2)
    )
    rest = union.difference(c1).keys
    found3, found2 = [], []
    for mask in range(1, 1 << len(rest)):
        sub = Code.from_keys(rest[[b for b in range(len(rest)) if mask >> b & 1]], 3, 3, assume_unique=True)
        if len(sub) < 2 or neighbour_set(sub) != c1:
            continue
        delta = sub.min_distance
        if delta >= 2:
            found2.append(sorted(map(_v, sub.vertices())))
        if delta >= 3:
            found3.append(sorted(map(_v, sub.vertices())))
    expected = sorted(sorted(map(_v, c.vertices())) for c in codes.values())
    passed = same and len(c1) == 18 and disjoint and sorted(found3) == expected
    return {
        "neighbour_set_size": len(c1),
        "shared_neighbour_set": same,
        "disjoint_union": disjoint,
        "subsets_searched": (1 << len(rest)),
        "codes_delta_ge_3": len(found3),
        "codes_delta_ge_2": len(found2),
        "passed": passed,
    }


def _triple_summary(name: str, t: Triple) -> dict:
    part = t.partition_check()
    return {
        "code": name,
        "alpha": _v(t.alpha),
        "x": t.x.to_script(),
        "elusive": t.report.is_elusive,
        "associates": len(t.associates),
        "expected": t.expected_associates(),
        "partition_ok": part.ok,
    }


def criterion_2(profile: str = "full", **_) -> dict:
    rows = [_triple_summary(n, t) for n, t in perm_triples(profile)]
    passed = all(r["elusive"] and r["associates"] == r["expected"] and r["partition_ok"] for r in rows)
    return {"triples": rows, "passed": passed}


def criterion_3(profile: str = "full", workers: int = 1, **_) -> dict:
    rows = []
    for name, t in perm_triples(profile):
        t.workers = workers
        census = t.census
        thm = t.theorem_check()
        d3 = census.distance3_pairs
        shapes = all(bound3_shape_ok(t.alpha, r, t.q) for r in d3)
        row = {
            "code": name,
            "distance3_pairs": len(d3),
            "all_mc3": all(r.mc == 3 for r in d3),
            "bound3_shape": shapes,
            "d3_partners": sorted(set(census.distance3_partners)),
            "expected_partners": 2 * t.q - 4,
            "components": list(thm.components),
            "hypothesis_holds": thm.hypothesis_holds,
            "disjoint_kq": thm.disjoint_kq,
            "q_divides_m": thm.q_divides_m,
        }
        row["passed"] = (
            row["all_mc3"]
            and shapes
            and row["d3_partners"] == [2 * t.q - 4]
            and thm.hypothesis_holds
            and thm.disjoint_kq
            and thm.q_divides_m
            and row["components"] == [t.q] * (t.m // t.q)
        )
        rows.append(row)
    return {"triples": rows, "passed": all(r["passed"] for r in rows)}


def criterion_4(**_) -> dict:
    spec = rm_spec(2, 3)
    top, code = rm_codes(spec)
    x_gens, x1_gens = aut_gens_rm(spec)
    c1 = neighbour_set(code)
    stats = code_stats(code)
    q, d = 2, 3
    ct = is_completely_transitive(code, x_gens)
    w = find_witness(code, x1_gens)
    is_translation = w is not None and w.sigma == tuple(range(code.m))
    t = Triple(code, (0,) * 8, parse_automorphism(BINARY_RM_SCRIPT, 8, 2, field_of_order(2)))
    mc = mc_count(code, BINARY_RM_PI, BINARY_RM_PI2)
    passed = (
        len(code) == 16
        and stats.delta == 4
        and stats.rho == 2
        and len(c1) == 128 == (q - 1) * q ** (q**d - 1)
        and c1 == neighbour_set(top)
        and ct.completely_transitive
        and is_translation
        and t.report.is_elusive
        and BINARY_RM_PI in t.associates
        and BINARY_RM_PI2 in t.associates
        and mc.mc == 1
    )
    return {
        "size": len(code),
        "delta": stats.delta,
        "rho": stats.rho,
        "partition": stats.sizes,
        "c1_matches_top": c1 == neighbour_set(top),
        "completely_transitive": ct.as_dict(),
        "witness": None if w is None else w.to_script(),
        "binary_rm_elusive": t.report.is_elusive,
        "binary_rm_associates": [_v(a) for a in t.associates],
        "binary_rm_mc": mc.mc,
        "passed": passed,
    }


def criterion_5(workers: int = 1, **_) -> dict:
    rows = []
    for q, d in [(3, 2), (5, 1), (7, 1)]:
        t = rm_triple(q, d, workers)
        census = t.census
        thm = t.theorem_check()
        mc3_max = max(census.mc3_partners, default=0)
        bound = census.mc3_bound()
        d3_other = any(r.mc != 3 for r in census.distance3_pairs)
        row = {
            "q": q,
            "d": d,
            "m": t.m,
            "elusive": t.report.is_elusive,
            "associates": len(t.associates),
            "partition_ok": t.partition_check().ok,
            "histogram": census.histogram(),
            "max_mc3_partners": mc3_max,
            "bound": bound,
            "distance3_pair_with_mc_not_3": d3_other,
            "q_divides_m": thm.q_divides_m,
            "theorem_consistent": thm.consistent,
        }
        ok = t.report.is_elusive and row["partition_ok"] and thm.q_divides_m and thm.consistent
        ok = ok and (mc3_max == 0 if q % 3 == 2 else mc3_max <= bound)
        if q >= 5:
            ok = ok and d3_other
        row["passed"] = bool(ok)
        rows.append(row)
    return {"instances": rows, "passed": all(r["passed"] for r in rows)}


def criterion_6(seed: int = 20240611, n: int = 500, **_) -> dict:
    rng = np.random.default_rng(seed)
    checked = mismatches = bad_sizes = 0
    for _ in range(n):
        q = int(rng.choice([3, 4, 5]))
        dist = int(rng.choice([3, 4]))
        m = int(rng.integers(dist, 9))
        a = tuple(int(c) for c in rng.integers(0, q, m))
        b = list(a)
        for i in rng.choice(m, dist, replace=False):
            b[i] = (a[i] + int(rng.integers(1, q))) % q
        b = tuple(b)
        assert distance(a, b) == dist
        fast = sphere2_intersection(a, b, q)
        slow = brute_sphere2_intersection(a, b, q)
        checked += 1
        mismatches += fast != slow
        bad_sizes += len(fast) != (6 * (q - 2) if dist == 3 else 6)
    return {"pairs": checked, "mismatches": mismatches, "wrong_sizes": bad_sizes, "passed": mismatches == bad_sizes == 0}


def criterion_7(**_) -> dict:
    rows = {}
    for q, l in [(3, 2), (4, 1), (5, 1)]:
        code = perm_code(q, l, "S")
        rep = c2_depth_check(code)
        rows[f"S{q},{l}"] = {
            "c2_size": rep.c2_size,
            "lacking": len(rep.lacking),
            "lacking_shapes": {",".join(map(str, k)): v for k, v in rep.lacking_shapes().items()},
        }
    # every C(S_4)_2 vertex with two symbols twice each, and nothing else, must be flagged
    s4 = perm_code(4, 1, "S")
    expected = sorted(
        v for v in itertools.product(range(4), repeat=4) if sorted(np.bincount(v, minlength=4).tolist()) == [0, 0, 2, 2]
    )
    flagged = sorted(c2_depth_check(s4).lacking)
    passed = rows["S3,2"]["lacking"] == 0 and rows["S5,1"]["lacking"] == 0 and flagged == expected
    return {"codes": rows, "s4_exception_size": len(expected), "passed": passed}


def criterion_8(**_) -> dict:
    spec = rm_spec(2, 3)
    _, code = rm_codes(spec)
    t_beta = rm_default_witness(spec)
    translates = code_images_under(code, [t_beta])
    swap = parse_automorphism("PERM: (0 7)", 8, 2)
    mixed = code_images_under(code, [t_beta, swap])
    zero_shared = [
        i for i, c in enumerate(mixed.codes) if i > 0 and (0,) * 8 in c and len(c.intersection(code)) > 0
    ]
    swapped = image(code, swap)
    passed = (
        translates.count == spec.field.p
        and translates.pairwise_disjoint()
        and len(zero_shared) > 0
        and swapped != code
        and (0,) * 8 in swapped
    )
    return {
        "translate_images": translates.as_dict(),
        "mixed_image_count": mixed.count,
        "mixed_intersections_with_code": mixed.intersections()[0],
        "images_sharing_zero": len(zero_shared),
        "swap_fixes_code": swapped == code,
        "passed": passed,
    }


def criterion_9(**_) -> dict:
    code = perm_code(3, 1, "A")
    c1 = neighbour_set(code)
    x1, x, witnesses = 0, 0, 0
    images: dict[bytes, list[list[int]]] = {}
    for g in enumerate_full_aut(3, 3):
        if not stabilises(c1, g):
            continue
        x1 += 1
        img = image(code, g)
        images.setdefault(img.digest(), sorted(map(_v, img.vertices())))
        if stabilises(code, g):
            x += 1
        else:
            witnesses += 1
    classes = sorted(images.values())
    expected = sorted(
        sorted(map(_v, c.vertices())) for c in (code, perm_code(3, 1, "odd"), repetition_code(3, 3))
    )
    passed = x1 == x + witnesses and x1 == 3 * x and len(classes) == 3 and classes == expected
    return {
        "group_order": 1296,
        "X1": x1,
        "X": x,
        "witnesses": witnesses,
        "image_classes": len(classes),
        "passed": passed,
    }


CRITERIA: dict[int, Callable[..., dict]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}

QUICK = (1, 2, 3, 4, 6, 8, 9)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def criterion_10(workers: int = 4, profile: str = "full", **_) -> dict:
    """Byte-identical JSON for criteria 1..9 across repeat runs and worker counts."""
    ids = [n for n in (CRITERIA if profile == "full" else QUICK) if n != 10]
    differing = []
    for n in ids:
        runs = [dumps(CRITERIA[n](profile=profile, workers=w)) for w in (1, 1, workers)]
        if len(set(runs)) != 1:
            differing.append(n)
    return {"criteria": ids, "workers": workers, "differing": differing, "passed": not differing}


CRITERIA[10] = criterion_10


@dataclass(frozen=True)
class Outcome:
    number: int
    report: dict
    seconds: float

    @property
    def within_time(self) -> bool:
        return self.seconds < TIME_LIMITS[self.number]

    @property
    def passed(self) -> bool:
        return bool(self.report["passed"]) and self.within_time

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = "" if self.within_time else f" (over {TIME_LIMITS[self.number]:g}s budget)"
        return f"criterion {self.number:2d}: {verdict} in {self.seconds:.2f}s{extra}"


def run(number: int, *, profile: str = "full", workers: int = 1) -> Outcome:
    start = time.perf_counter()
    report = CRITERIA[number](profile=profile, workers=workers)
    return Outcome(number, report, time.perf_counter() - start)


def profile_criteria(profile: str) -> tuple[int, ...]:
    if profile == "quick":
        return QUICK
    if profile == "full":
        return tuple(CRITERIA)
    raise ValueError(f"unknown profile {profile!r}")

