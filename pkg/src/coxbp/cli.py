"""Command-line surface: every subcommand is a thin adapter over the library.

JSON output (--json) is byte-identical to serializing the corresponding
library result; --dot writes DOT graphs, --fig renders matplotlib figures,
and verify-paper/bench write a CSV plus figures into --out-dir.  Exit code
is 0 iff every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from pathlib import Path

from .bp import (bp_family, bp_poset, is_bp, is_bp_poincare, jstar_bp_test)
from .bruhat import interval, poincare
from .checks import CHECKS, DEFAULT_SEED, bench_bp_paths, run_checks
from .coxeter import (ConstructionError, ResourceCapError,
                      UnsupportedCapabilityError, UsageError, build_system)
from .jstars import enumerate_jstars, verify_simple_jstar_lemma, \
    verify_union_helper_lemma
from .lehmer import construct_quotient_code, search_code
from .report import (RunReport, CheckResult, save_bench_figure,
                     save_interval_figure, save_poset_figure,
                     save_verify_figure, write_report_csv)
from .roots import build_root_system
from .schubert import schubert_polynomial, structure_constant, structure_matrix
from .serialize import (code_to_json, element_to_json, interval_to_dot,
                        interval_to_json, matrix_to_json, parse_element,
                        poset_to_dot, poset_to_json, search_result_to_json,
                        system_to_json)
from .typea import lehmer_code, perm_from_element

_USAGE_ERRORS = (UsageError, ConstructionError, ResourceCapError,
                 UnsupportedCapabilityError)


def _build(args):
    rank = getattr(args, "rank", None)
    return build_system(args.type, rank)


def _element(args, system):
    return parse_element(system, args.w, getattr(args, "format", None))


def _subset(args, system):
    raw = getattr(args, "J", None)
    if raw is None:
        return None
    raw = raw.strip()
    if not raw or raw == "-":
        return frozenset()
    if all(len(lab) == 1 for lab in system.labels) and \
            all(c in "".join(system.labels) for c in raw):
        return frozenset(system.generator_index(c) for c in raw)
    parts = raw.split(",") if "," in raw else list(raw)
    return system.check_subset(int(p) for p in parts)


def _emit(args, payload: dict, text_lines):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_info(args):
    system = _build(args)
    payload = system_to_json(system)
    payload["finite"] = system.is_finite
    if system.is_finite:
        payload["order"] = system.order()
        payload["longest_length"] = system.longest_element().length
    if system.root_family:
        payload["positive_roots"] = system.root_system().num_positive
    lines = [f"system {system.short_name}: rank {system.rank}, "
             f"generators {', '.join(system.labels)}",
             f"finite: {payload['finite']}"]
    if system.is_finite:
        lines.append(f"order {payload['order']}, longest element length "
                     f"{payload['longest_length']}")
    _emit(args, payload, lines)
    return 0


def cmd_bp(args):
    system = _build(args)
    w = _element(args, system)
    J = _subset(args, system)
    payload = {"system": system_to_json(system), "w": element_to_json(w)}
    lines = [f"w = {w} (length {w.length})"]
    status = 0
    if J is not None:
        method = args.method
        if method == "def":
            verdict = is_bp(w, J)
        elif method == "poincare":
            verdict = is_bp_poincare(w, J, cap_length=args.cap_length)
        else:
            verdict = jstar_bp_test(w, J)
        payload.update({"J": sorted(J), "method": method, "bp": verdict})
        lines.append(f"J = {sorted(J)}: BP via {method} -> {verdict}")
        if not verdict:
            status = 1
    if args.poset or args.family or J is None:
        fam = bp_family(w)
        poset = bp_poset(w, fam)
        payload["family"] = [sorted(m) for m in fam.sorted_members()]
        payload["poset"] = poset_to_json(poset)
        lines.append("BP family: " + ", ".join(
            "{" + ",".join(map(str, sorted(m))) + "}" for m in fam.sorted_members()))
        lines.append(f"BP poset blocks: {payload['poset']['blocks']}, "
                     f"cover relations: {payload['poset']['relations']}")
        if args.dot:
            Path(args.dot).write_text(poset_to_dot(poset))
            lines.append(f"wrote {args.dot}")
        if args.fig:
            save_poset_figure(poset, args.fig, title=f"BP poset of {w}")
            lines.append(f"wrote {args.fig}")
    _emit(args, payload, lines)
    return status


def cmd_jstars(args):
    system = _build(args)
    rs = system.root_system()
    J = _subset(args, system) or frozenset()
    stars = enumerate_jstars(rs, J)
    payload = {
        "system": system_to_json(system),
        "J": sorted(J),
        "stars": [{"head": list(s.head.coords),
                   "arms": [[c, list(g.coords)] for c, g in s.arms]}
                  for s in stars],
    }
    lines = [f"{len(stars)} J-stars for J={sorted(J)} in {system.short_name}"]
    for s in stars[:40]:
        arms = " + ".join(f"{c}*{g.coords}" for c, g in s.arms)
        lines.append(f"  head {s.head.coords}; arms {arms}")
    _emit(args, payload, lines)
    return 0


def cmd_rs(args):
    system = _build(args)
    w = _element(args, system)
    J = _subset(args, system) or frozenset()
    poly = poincare(w, J, cap_length=args.cap_length)
    smooth = poly.is_palindromic()
    payload = {"w": element_to_json(w), "J": sorted(J),
               "poincare": list(poly.coeffs), "rationally_smooth": smooth}
    _emit(args, payload, [f"P^J({w}) = {poly}",
                          f"rationally smooth: {smooth}"])
    return 0


def cmd_interval(args):
    system = _build(args)
    w = _element(args, system)
    J = _subset(args, system) or frozenset()
    iv = interval(w, J, cap_length=args.cap_length)
    payload = interval_to_json(iv)
    lines = [f"[e, {w}]^J, J={sorted(J)}: {iv.size} elements, "
             f"rank sizes {[len(r) for r in iv.ranks]}"]
    if args.dot:
        Path(args.dot).write_text(interval_to_dot(iv))
        lines.append(f"wrote {args.dot}")
    if args.fig:
        save_interval_figure(iv, args.fig, title=f"[e, {w}]^{sorted(J)}")
        lines.append(f"wrote {args.fig}")
    _emit(args, payload, lines)
    return 0


def cmd_poincare(args):
    system = _build(args)
    w = _element(args, system)
    J = _subset(args, system) or frozenset()
    poly = poincare(w, J, cap_length=args.cap_length)
    payload = {"w": element_to_json(w), "J": sorted(J),
               "coeffs": list(poly.coeffs)}
    _emit(args, payload, [str(poly)])
    return 0


def cmd_lehmer(args):
    system = _build(args)
    w = _element(args, system)
    J = _subset(args, system) or frozenset()
    if args.action == "classical":
        code = lehmer_code(perm_from_element(w))
        payload = {"w": element_to_json(w), "classical_code": list(code)}
        _emit(args, payload, [f"code({w}) = {code}"])
        return 0
    if args.action == "construct":
        code = construct_quotient_code(w, J, cap_length=args.cap_length)
        payload = code_to_json(code)
        _emit(args, payload,
              [f"chains {code.chains.sizes}, {len(code.entries)} entries"])
        return 0
    iv = interval(w, J, cap_length=args.cap_length)
    result = search_code(iv, time_budget=args.budget)
    payload = search_result_to_json(result)
    lines = [f"search on [e, {w}]^{sorted(J)} ({iv.size} elements): "
             f"{result.status}"]
    if result.code:
        lines.append(f"chains {result.code.chains.sizes}")
    _emit(args, payload, lines)
    return 0 if result.status in ("found", "none") else 1


def cmd_schubert(args):
    if args.c:
        u, v, w = (tuple(int(x) for x in part.split(",")) if "," in part
                   else tuple(int(ch) for ch in part)
                   for part in args.c)
        c = structure_constant(u, v, w)
        _emit(args, {"u": list(u), "v": list(v), "w": list(w), "c": c},
              [f"c = {c}"])
        return 0
    if args.matrix:
        w = (tuple(int(x) for x in args.matrix.split(",")) if "," in args.matrix
             else tuple(int(ch) for ch in args.matrix))
        mat = structure_matrix(w, args.k)
        payload = matrix_to_json(mat)
        payload["upper_unitriangular"] = mat.is_upper_unitriangular()
        lines = [f"matrix for w={w}, k={args.k}: "
                 f"unitriangular {payload['upper_unitriangular']}"]
        for row in mat.entries:
            lines.append("  " + " ".join(map(str, row)))
        _emit(args, payload, lines)
        return 0 if payload["upper_unitriangular"] else 1
    w = (tuple(int(x) for x in args.poly.split(",")) if "," in args.poly
         else tuple(int(ch) for ch in args.poly))
    poly = schubert_polynomial(w, args.n)
    payload = {"w": list(w),
               "terms": [{"exponents": list(e), "coeff": c}
                         for e, c in sorted(poly.items())]}
    lines = [" + ".join(
        ("" if c == 1 else f"{c}*") + "*".join(f"x{i+1}^{p}" if p > 1 else f"x{i+1}"
                                               for i, p in enumerate(e) if p)
        if e else str(c)
        for e, c in sorted(poly.items()))]
    _emit(args, payload, lines)
    return 0


def cmd_lemma_check(args):
    rs = build_root_system(args.type, getattr(args, "rank", None))
    results = []
    if args.which == "simple-star":
        from .checks import _all_subsets
        for J in _all_subsets(rs.rank):
            bad = verify_simple_jstar_lemma(rs, J)
            results.append({"J": sorted(J), "violations":
                            [[list(a.coords), list(t.coords)] for a, t in bad]})
    else:
        from .checks import _connected_subsets
        conn = _connected_subsets(rs)
        for i in range(len(conn)):
            for j in range(i, len(conn)):
                bad = verify_union_helper_lemma(rs, conn[i], conn[j])
                results.append({"J1": sorted(conn[i]), "J2": sorted(conn[j]),
                                "failures":
                                [[list(a.coords), list(t.coords)] for a, t in bad]})
    key = "violations" if args.which == "simple-star" else "failures"
    total_bad = sum(len(r[key]) for r in results)
    payload = {"system": f"{rs.family}{rs.rank}", "which": args.which,
               "results": results, "total_violations": total_bad}
    _emit(args, payload,
          [f"{args.which} on {rs.family}{rs.rank}: {len(results)} sweeps, "
           f"{total_bad} violations"])
    return 0 if total_bad == 0 else 1


def cmd_verify_paper(args):
    opts = {"seed": args.seed}
    if args.budget is not None:
        opts["search_budget"] = args.budget
    report = run_checks(only=args.only or None,
                        include_long=args.include_long or (),
                        threads=args.threads, opts=opts)
    if args.json:
        print(report.dumps())
    else:
        print(f"seed {args.seed}")
        for r in report.results:
            print(f"[{r.status.upper():4}] {r.name}  ({r.seconds:.2f}s)"
                  + (f"  {r.details}" if r.details else ""))
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_report_csv(report, out / "verify.csv")
        save_verify_figure(report, out / "verify.png")
        (out / "verify.json").write_text(report.dumps())
        if not args.json:
            print(f"wrote {out}/verify.csv, verify.png, verify.json")
    return 0 if report.passed else 1


def cmd_bench(args):
    rows = []
    for n in args.n:
        rows.append(bench_bp_paths(n, args.samples, args.seed,
                                   naive_threshold=args.naive_threshold))
    report = RunReport("bench", {"n": args.n, "samples": args.samples},
                       [CheckResult(f"bench-n{r['n']}",
                                    "pass" if r["agree"] else "fail",
                                    data=r) for r in rows],
                       seed=args.seed)
    if args.json:
        payload = report.to_json()
        payload["rows"] = rows
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"seed {args.seed}, {args.samples} samples per n")
        print(f"{'n':>4} {'fast mean':>12} {'naive mean':>12} {'speedup':>9} agree")
        for r in rows:
            naive = f"{r['naive_mean']*1e3:10.1f}ms" if r["naive_mean"] else "   skipped"
            speed = f"{r['speedup']:8.1f}x" if r.get("speedup") else "        -"
            print(f"{r['n']:>4} {r['fast_mean']*1e3:10.1f}ms {naive} {speed} {r['agree']}")
            if r.get("notice"):
                print(f"      note: {r['notice']}")
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_report_csv(report, out / "bench.csv")
        save_bench_figure(rows, out / "bench.png")
        if not args.json:
            print(f"wrote {out}/bench.csv, bench.png")
    return 0 if all(r["agree"] for r in rows) else 1


def _add_system_args(p, rank_required=False):
    p.add_argument("--type", required=True,
                   help="A, B, C, D, E6, E7, E8, F4, G2, H3, H4, I2, affineC2")
    p.add_argument("--rank", type=int, default=None,
                   help="family rank (edge label m for I2)")


def _add_element_args(p):
    p.add_argument("--w", required=True,
                   help="element: one-line, reduced word, or letters")
    p.add_argument("--format", choices=("oneline", "word", "letters"),
                   default=None, help="disambiguate element notation")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="coxbp",
        description="Exact Coxeter/Weyl combinatorics: BP decompositions, "
                    "BP posets, rational smoothness, Lehmer codes, and "
                    "type A Schubert structure constants.")
    ap.add_argument("--json", action="store_true", help="emit JSON")
    ap.add_argument("--cap-length", type=int, default=22,
                    help="interval enumeration length cap")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--threads", type=int, default=1)
    # the same global flags are accepted after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--cap-length", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True,
                            parser_class=lambda **kw: argparse.ArgumentParser(
                                parents=[common], **kw))

    p = sub.add_parser("info", help="system facts")
    _add_system_args(p)
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("bp", help="BP tests, family and poset")
    _add_system_args(p)
    _add_element_args(p)
    p.add_argument("--J", default=None, help="generator subset, e.g. 1,2 or rs")
    p.add_argument("--method", choices=("def", "poincare", "jstar"),
                   default="def")
    p.add_argument("--poset", action="store_true")
    p.add_argument("--family", action="store_true")
    p.add_argument("--dot", default=None)
    p.add_argument("--fig", default=None)
    p.set_defaults(fn=cmd_bp)

    p = sub.add_parser("jstars", help="enumerate J-stars")
    _add_system_args(p)
    p.add_argument("--J", required=True)
    p.set_defaults(fn=cmd_jstars)

    p = sub.add_parser("rs", help="rational smoothness via palindromicity")
    _add_system_args(p)
    _add_element_args(p)
    p.add_argument("--J", default=None)
    p.set_defaults(fn=cmd_rs)

    p = sub.add_parser("interval", help="enumerate [e, w]^J")
    _add_system_args(p)
    _add_element_args(p)
    p.add_argument("--J", default=None)
    p.add_argument("--dot", default=None)
    p.add_argument("--fig", default=None)
    p.set_defaults(fn=cmd_interval)

    p = sub.add_parser("poincare", help="rank generating function of [e, w]^J")
    _add_system_args(p)
    _add_element_args(p)
    p.add_argument("--J", default=None)
    p.set_defaults(fn=cmd_poincare)

    p = sub.add_parser("lehmer", help="Lehmer codes: construct or search")
    _add_system_args(p)
    _add_element_args(p)
    p.add_argument("--J", default=None)
    p.add_argument("--action", choices=("construct", "search", "classical"),
                   default="search")
    p.add_argument("--budget", type=float, default=60.0)
    p.set_defaults(fn=cmd_lehmer)

    p = sub.add_parser("schubert", help="Schubert polynomials and constants")
    p.add_argument("--n", type=int, default=None)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly", default=None, help="permutation")
    group.add_argument("--c", nargs=3, default=None, metavar=("U", "V", "W"))
    group.add_argument("--matrix", default=None, help="smooth permutation")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(fn=cmd_schubert)

    p = sub.add_parser("lemma-check", help="finite root-system verifiers")
    p.add_argument("--which", choices=("simple-star", "union"), required=True)
    _add_system_args(p)
    p.set_defaults(fn=cmd_lemma_check)

    p = sub.add_parser("verify-paper", help="run the full verification suite")
    p.add_argument("--only", action="append", default=None,
                   help="run only the named check (repeatable); "
                        f"names: {', '.join(CHECKS)}")
    p.add_argument("--include-long", action="append", default=None,
                   help="also run a long check (e6-simple-star, f4-lehmer)")
    p.add_argument("--budget", type=float, default=None,
                   help="per-search time budget override (seconds)")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(fn=cmd_verify_paper)

    p = sub.add_parser("bench", help="fast BP poset path vs naive sweep")
    p.add_argument("--n", type=int, nargs="+", default=[12])
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--naive-threshold", type=int, default=12)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(fn=cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
