"""Command-line interface.

Exit status: 0 when every checked property holds, 1 when one is violated,
2 on usage, parse or resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import acceptance
from .autgrp import Automorphism, parse_automorphism, parse_vertex
from .elusive import Triple, first_moved_codeword
from .errors import HamcodesError
from .gf import field_of_order
from .families import (
    NamedCode,
    aut_gens_perm_code,
    aut_gens_rm,
    parse_code_selector,
    perm_default_witness,
    rm_default_witness,
)
from .hamming import DEFAULT_VERTEX_BOUND, code_stats, format_code, write_code
from .transitivity import code_images_under, is_completely_transitive, is_neighbour_transitive

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj: dict, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def _load(args) -> NamedCode:
    return parse_code_selector(args.code, args.bound_vertices)


def _field(named: NamedCode):
    if named.field is not None:
        return named.field
    try:
        return field_of_order(named.code.q)
    except HamcodesError:
        return None


def _automorphism(named: NamedCode, script: str) -> Automorphism:
    code = named.code
    if script != "auto":
        return parse_automorphism(script, code.m, code.q, _field(named))
    if named.rm is not None and named.kind == "rm":
        return rm_default_witness(named.rm)
    if named.kind in ("perm-A", "perm-odd"):
        return perm_default_witness(*named.params)
    raise UsageError(f"no default automorphism for {named.name}; pass --aut")


def _generators(named: NamedCode, scripts: list[str] | None, which: str) -> list[Automorphism]:
    if scripts:
        return [parse_automorphism(s, named.code.m, named.code.q, _field(named)) for s in scripts]
    if named.rm is not None and named.kind == "rm":
        x_gens, x1_gens = aut_gens_rm(named.rm)
        return x_gens if which == "X" else x1_gens
    if named.kind in ("perm-A", "perm-S") and which == "X":
        return aut_gens_perm_code(*named.params, named.kind[-1])
    raise UsageError(f"no default generators for {named.name}; pass --gen")


def _triple(args) -> Triple:
    named = _load(args)
    x = _automorphism(named, args.aut)
    code = named.code
    if args.alpha == "auto":
        alpha = first_moved_codeword(code, x) or code.vertices()[0]
    else:
        alpha = parse_vertex(args.alpha, code.m, code.q)
    return Triple(code, alpha, x, override=args.override, bound=args.bound_vertices, workers=args.workers)


# -- subcommands ---------------------------------------------------------------------


def cmd_construct(args) -> int:
    named = _load(args)
    if args.out:
        write_code(named.code, args.out)
    elif args.format == "json":
        _emit({"m": named.code.m, "q": named.code.q, "codewords": [list(v) for v in named.code]}, "json", "")
    else:
        sys.stdout.write(format_code(named.code))
    return OK


def cmd_stats(args) -> int:
    code = _load(args).code
    st = code_stats(code, args.bound_vertices)
    sizes = st.sizes
    obj = {"m": code.m, "q": code.q, "size": len(code), "delta": st.delta, "rho": st.rho, "cells": sizes}
    lines = [f"m={code.m} q={code.q} |C|={len(code)} delta={st.delta} rho={st.rho}"]
    if sizes is not None:
        lines.append(" ".join(f"|C_{i}|={n}" for i, n in enumerate(sizes)))
    _emit(obj, args.format, "\n".join(lines))
    return OK


def _triple_ok(t: Triple) -> bool:
    if not t.report.is_elusive:
        return False
    if not all(t.report.sanity().values()):
        return False
    if (t.report.delta or 0) < 3:
        return True
    return t.partition_check().ok and t.theorem_check().consistent and t.diagnostics.is_regular


def cmd_elusive(args) -> int:
    t = _triple(args)
    rep = t.report
    if args.format == "dot":
        if not rep.is_elusive and not args.override:
            print(f"not elusive: {rep.reason}", file=sys.stderr)
            return VIOLATION
        sys.stdout.write(t.graph.to_dot())
        return OK if _triple_ok(t) else VIOLATION
    obj = t.to_json()
    if args.format == "json":
        _emit(obj, "json", "")
    else:
        lines = [f"alpha={''.join(map(str, t.alpha)) if t.q <= 10 else t.alpha} x={t.x.to_script()}"]
        lines.append("elusive" if rep.is_elusive else f"not elusive: {rep.reason}")
        if "associates" in obj:
            thm = t.theorem_check()
            diag = t.diagnostics
            lines.append(f"associates: {len(t.associates)} (expected {t.expected_associates()})")
            lines.append(f"partition check: {'ok' if obj['verdicts']['partition_ok'] else 'FAILED'}")
            lines.append(f"associate graph components: {diag.component_sizes} disjoint K_q: {diag.is_disjoint_kq}")
            lines.append(f"hypothesis (all distance-3 pairs have MC=3): {thm.hypothesis_holds}")
            lines.append(f"q divides m: {t.q} | {t.m}" if thm.q_divides_m else f"q does not divide m: {t.q}, {t.m}")
            lines.append("MC census: " + " ".join(f"{k}={v}" for k, v in t.census.histogram().items()))
        print("\n".join(lines))
    return OK if _triple_ok(t) else VIOLATION


def cmd_census(args) -> int:
    t = _triple(args)
    census = t.census
    obj = census.as_dict()
    d3_ok = t.q < 3 or set(census.distance3_partners) == {2 * t.q - 4}
    bounds_ok = all(r.bounds_ok() for r in census.pairs) or not t.verified
    text = "\n".join(
        [f"{''.join(map(str, r.pi))} {''.join(map(str, r.pi2))} d={r.distance} mc={r.mc}" for r in census.pairs]
        + [f"distance-3 partners per associate: {census.distance3_partners}",
           f"MC=3 partners per associate: {census.mc3_partners}"]
    )
    _emit(obj, args.format, text)
    return OK if d3_ok and bounds_ok else VIOLATION


def cmd_transitivity(args) -> int:
    named = _load(args)
    gens = _generators(named, args.gen, "X")
    fn = is_neighbour_transitive if args.neighbour else is_completely_transitive
    rep = fn(named.code, gens, bound=args.bound_vertices)
    obj = rep.as_dict()
    verdict = rep.neighbour_transitive if args.neighbour else rep.completely_transitive
    text = "\n".join(
        [f"C_{c.index}: size {c.size}, orbit {c.orbit_size}, {'single orbit' if c.single_orbit else 'split'}" for c in rep.cells]
        + [("neighbour transitive" if args.neighbour else "completely transitive") if verdict else "not transitive"]
    )
    _emit(obj, args.format, text)
    return OK if verdict else VIOLATION


def cmd_images(args) -> int:
    named = _load(args)
    gens = _generators(named, args.gen, "X1")
    rep = code_images_under(named.code, gens, args.max_images)
    rows = rep.intersections()
    _emit(rep.as_dict(), args.format, f"{rep.count} distinct images\n" + "\n".join(" ".join(map(str, r)) for r in rows))
    return OK


def cmd_fullcheck(args) -> int:
    ids = acceptance.profile_criteria(args.profile)
    if args.only:
        unknown = sorted(set(args.only) - set(acceptance.CRITERIA))
        if unknown:
            raise UsageError(f"no criterion {unknown[0]}")
        ids = tuple(n for n in ids if n in args.only) or tuple(args.only)
    results = {}
    failed = []
    for n in ids:
        out = acceptance.run(n, profile=args.profile, workers=args.workers)
        results[str(n)] = {"passed": out.passed, "report": out.report}
        if not out.passed:
            failed.append(out)
        # timings go to stderr in json mode so stdout stays reproducible
        print(out.line(), file=sys.stderr if args.format == "json" else sys.stdout, flush=True)
    if args.format == "json":
        _emit({"profile": args.profile, "criteria": results, "passed": not failed}, "json", "")
    if failed:
        print(f"first failure: criterion {failed[0].number}: {acceptance.dumps(failed[0].report)}", file=sys.stderr)
        return VIOLATION
    return OK


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamcodes", description="Codes in Hamming graphs and their elusive triples.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--bound-vertices", type=int, default=DEFAULT_VERTEX_BOUND, metavar="N",
                        help="largest ambient graph enumerated in full (default 2^24)")
    common.add_argument("--seed-order", choices=["lex"], default="lex",
                        help="orbit seeds and tie-breaks use lexicographic order (the only option)")
    common.add_argument("--workers", type=int, default=1, help="threads for the MC census")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a code and print or save it")
    p.add_argument("code", help="perm:A,q,l | perm:S,q,l | perm:odd,q,l | rep:q,m | rm:q,d | rmtop:q,d | file:PATH")
    p.add_argument("--out", help="write the code to this file")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("stats", parents=[common], help="minimum distance, covering radius and distance partition")
    p.add_argument("code")
    p.set_defaults(func=cmd_stats)

    for name, func, helptext in (
        ("elusive", cmd_elusive, "verify and analyse a triple (C, alpha, x)"),
        ("census", cmd_census, "mutual-codeword census over associate pairs"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("code")
        p.add_argument("--aut", default="auto", help="automorphism script, or 'auto' for the family default")
        p.add_argument("--alpha", default="auto", help="codeword, or 'auto' for the least codeword moved off C")
        p.add_argument("--override", action="store_true", help="analyse even if the triple is not elusive")
        p.set_defaults(func=func)

    p = sub.add_parser("transitivity", parents=[common], help="orbit test on each distance class")
    p.add_argument("code")
    p.add_argument("--gen", action="append", help="generator script (repeatable); default: family generators")
    p.add_argument("--neighbour", action="store_true", help="only test C and C_1")
    p.set_defaults(func=cmd_transitivity)

    p = sub.add_parser("images", parents=[common], help="distinct images of C under a generator set")
    p.add_argument("code")
    p.add_argument("--gen", action="append", help="generator script (repeatable); default: family X_1 generators")
    p.add_argument("--max-images", type=int, default=4096)
    p.set_defaults(func=cmd_images)

    p = sub.add_parser("fullcheck", parents=[common], help="run the acceptance criteria")
    p.add_argument("profile", help="quick or full")
    p.add_argument("--only", type=int, action="append", metavar="N", help="run only criterion N (repeatable)")
    p.set_defaults(func=cmd_fullcheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "fullcheck" and args.profile not in ("quick", "full"):
        print(f"unknown profile {args.profile!r}; use quick or full", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (HamcodesError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
