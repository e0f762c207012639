"""Named verification checks: every desk-scale computation reproduced here.

Each check function returns a ``CheckResult``; ``run_checks`` drives them
for the `verify-paper` CLI command, and the acceptance test module calls
the same functions directly.  Long-running checks (the E6/E8 star sweeps,
the deep union-lemma rank bound, F4 longest-element Lehmer nonexistence)
are opt-in and reported as skipped by default, never silently dropped.
"""

from __future__ import annotations

import random
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, permutations

from .bp import (bp_family, bp_poset, check_lattice, grassmannian_bp_exists,
                 is_bp, is_bp_poincare, jstar_bp_test,
                 linear_extension_factorization, poset_from_closures)
from .bruhat import (classical_degrees, interval, is_rationally_smooth,
                     poincare, q_integer_product)
from .coxeter import CoxeterSystem, build_system, system_from_matrix
from .jstars import verify_simple_jstar_lemma, verify_union_helper_lemma
from .lehmer import construct_quotient_code, search_code, verify_code, bp_product_map
from .report import CheckResult, RunReport
from .roots import build_root_system
from .schubert import (canonical_bijection, expand_product, monk_expand,
                       structure_constant, structure_matrix)
from .serialize import poset_to_json
from .typea import (avoids_3412_4231, bp_members_fast, bp_poset_fast,
                    element_from_perm, is_bp_perm, perm_from_element,
                    perm_length)

__all__ = ["CHECKS", "LONG_CHECKS", "run_checks", "bench_bp_paths", "DEFAULT_SEED"]

DEFAULT_SEED = 20250810

_SYSTEMS: dict = {}


def _system(tag: str, rank=None) -> CoxeterSystem:
    key = (tag, rank)
    if key not in _SYSTEMS:
        sys = build_system(tag, rank)
        if sys.is_finite:
            sys.cache()
        _SYSTEMS[key] = sys
    return _SYSTEMS[key]


def _all_subsets(rank: int):
    gens = list(range(1, rank + 1))
    for size in range(rank + 1):
        yield from (frozenset(c) for c in combinations(gens, size))


# ---------------------------------------------------------------------------
# the affine C~2 counterexample


def check_c2_counterexample(opts) -> CheckResult:
    sys = build_system("affineC2")
    w = sys.from_letters("srstrsr")
    problems = []
    # building the element letter by letter stays reduced
    prod = sys.identity
    for c in "srstrsr":
        prod = prod * sys.generator(sys.generator_index(c))
    if prod != w or w.length != 7:
        problems.append("srstrsr is not reduced of length 7")
    if w.right_descents() != frozenset({1}):
        problems.append(f"D_R(w) = {sorted(w.right_descents())} != {{r}}")
    expected = {
        frozenset({1, 2}): ("srst", "rsr"),
        frozenset({1, 3}): ("srstrs", "r"),
        frozenset({2, 3}): ("srstrsr", ""),
    }
    for J, (q_letters, p_letters) in expected.items():
        d = sys.parabolic_decompose(w, J)
        want_q = sys.from_letters(q_letters) if q_letters else sys.identity
        want_p = sys.from_letters(p_letters) if p_letters else sys.identity
        if d.quotient != want_q:
            problems.append(f"J={sorted(J)}: wrong quotient part")
        if d.parabolic != want_p:
            problems.append(f"J={sorted(J)}: wrong parabolic part")
        if is_bp(w, J):
            problems.append(f"J={sorted(J)} unexpectedly in BP(w)")
    if grassmannian_bp_exists(w) is not None:
        problems.append("a Grassmannian BP decomposition exists (it must not)")
    d1 = sys.parabolic_decompose(w, {1})
    quot_poly = poincare(d1.quotient, {1})
    if quot_poly.coeffs != (1, 2, 3, 4, 3, 2, 1):
        problems.append(f"quotient Poincare polynomial {quot_poly} wrong")
    if not is_bp(w, {1}):
        problems.append("{r} not in BP(w)")
    if not is_rationally_smooth(w):
        problems.append("w not rationally smooth")
    # support-2 elements always admit a Grassmannian BP decomposition
    for word in (("srs", "sts", "rt", "srsr")):
        v = sys.from_letters(word)
        if len(v.support) <= 2 and grassmannian_bp_exists(v) is None:
            problems.append(f"no Grassmannian BP for small-support {v}")
    status = "pass" if not problems else "fail"
    return CheckResult("c2-counterexample", status, details="; ".join(problems),
                       data={"length": w.length,
                             "quotient_poincare": list(quot_poly.coeffs)})


# ---------------------------------------------------------------------------
# BP test equivalence and lattice structure


# the acceptance groups plus F4: the multiply-laced exceptional group is
# cheap enough to sweep in full as well
_ORACLE_GROUPS = (("A", 3), ("A", 4), ("B", 3), ("C", 3), ("D", 4),
                  ("F4", None), ("G2", None))


def check_bp_oracle_equivalence(opts) -> CheckResult:
    disagreements = []
    counts = {}
    for tag, rank in _ORACLE_GROUPS:
        sys = _system(tag, rank)
        subsets = list(_all_subsets(sys.rank))
        n = 0
        for w in sys.elements():
            for J in subsets:
                r1 = is_bp(w, J)
                r2 = is_bp_poincare(w, J)
                r3 = jstar_bp_test(w, J)
                n += 1
                if not (r1 == r2 == r3):
                    disagreements.append((sys.short_name, str(w), sorted(J),
                                          r1, r2, r3))
        counts[sys.short_name] = n
    status = "pass" if not disagreements else "fail"
    return CheckResult("bp-oracle-equivalence", status,
                       details=f"{sum(counts.values())} (w, J) pairs, "
                               f"{len(disagreements)} disagreements",
                       data={"pairs": counts,
                             "disagreements": disagreements[:10]})


def check_bp_lattice(opts) -> CheckResult:
    failures = []
    total = 0
    for tag, rank in _ORACLE_GROUPS:
        sys = _system(tag, rank)
        for w in sys.elements():
            fam = bp_family(w)
            total += 1
            if not check_lattice(fam):
                failures.append((sys.short_name, str(w)))
            if frozenset() not in fam.members or \
                    frozenset(range(1, sys.rank + 1)) not in fam.members:
                failures.append((sys.short_name, str(w), "missing trivial members"))
    status = "pass" if not failures else "fail"
    return CheckResult("bp-lattice", status,
                       details=f"{total} elements swept, {len(failures)} failures",
                       data={"failures": failures[:10]})


def check_rank3_sweep(opts) -> CheckResult:
    max_len = opts.get("rank3_length", 12)
    systems = [
        ("affineC2", build_system("affineC2")),
        ("affineA2", system_from_matrix([[1, 3, 3], [3, 1, 3], [3, 3, 1]])),
        ("affineG2", system_from_matrix([[1, 6, 2], [6, 1, 3], [2, 3, 1]])),
    ]
    failures = []
    counts = {}
    for name, sys in systems:
        n = 0
        for w in sys.elements_up_to_length(max_len):
            n += 1
            if not check_lattice(bp_family(w)):
                failures.append((name, str(w)))
        counts[name] = n
    status = "pass" if not failures else "fail"
    return CheckResult("rank3-sweep", status,
                       details=f"lengths <= {max_len}; "
                               + ", ".join(f"{k}: {v} elements" for k, v in counts.items())
                               + f"; {len(failures)} closure failures",
                       data={"counts": counts, "failures": failures[:10]})


# ---------------------------------------------------------------------------
# BP poset figures and the factorization example


def check_bp_poset_figures(opts) -> CheckResult:
    problems = []
    a3 = _system("A", 3)
    p1 = bp_poset(element_from_perm(a3, (4, 2, 3, 1)))
    j1 = poset_to_json(p1)
    if j1 != {"blocks": [[1], [2], [3]], "relations": [[0, 1], [2, 1]]}:
        problems.append(f"bp poset of 4231 is {j1}")
    p2 = bp_poset(element_from_perm(a3, (3, 4, 1, 2)))
    j2 = poset_to_json(p2)
    if j2 != {"blocks": [[1, 3], [2]], "relations": [[1, 0]]}:
        problems.append(f"bp poset of 3412 is {j2}")
    a7 = _system("A", 7)
    w8 = element_from_perm(a7, (6, 5, 1, 7, 8, 4, 3, 2))
    p3 = bp_poset(w8)
    j3 = poset_to_json(p3)
    want3 = {"blocks": [[1], [2], [3], [4], [5], [6], [7]],
             "relations": [[0, 2], [1, 2], [3, 2], [4, 3], [5, 3], [6, 3]]}
    if j3 != want3:
        problems.append(f"bp poset of 65178432 is {j3}")
    fast3 = poset_to_json(bp_poset_fast((6, 5, 1, 7, 8, 4, 3, 2)))
    if fast3 != want3:
        problems.append("fast-path poset of 65178432 differs")
    status = "pass" if not problems else "fail"
    return CheckResult("bp-poset-figures", status, details="; ".join(problems))


def check_example_factorization(opts) -> CheckResult:
    a7 = _system("A", 7)
    w = element_from_perm(a7, (6, 5, 1, 7, 8, 4, 3, 2))
    factors = linear_extension_factorization(w, (3, 1, 4, 6, 2, 7, 5))
    got = ["".join(map(str, perm_from_element(f))) for f in factors]
    want = ["15623478", "31245678", "12374568", "12347856",
            "13245678", "12345687", "12346578"]
    prod = a7.identity
    for f in factors:
        prod = prod * f
    ok = got == want and prod == w and sum(f.length for f in factors) == w.length
    return CheckResult("example-factorization", "pass" if ok else "fail",
                       details="" if ok else f"got {got}",
                       data={"factors": got})


# ---------------------------------------------------------------------------
# the type A fast path and the benchmark


def check_typea_fast_path(opts) -> CheckResult:
    seed = opts.get("seed", DEFAULT_SEED)
    mismatches = []
    a5 = _system("A", 5)
    for p in permutations(range(1, 7)):
        w = element_from_perm(a5, p)
        fam = bp_family(w)
        if bp_members_fast(p) != fam.members:
            mismatches.append(("S6-members", p))
            continue
        gp = bp_poset(w, fam)
        fp = bp_poset_fast(p)
        if (gp.blocks, gp.leq) != (fp.blocks, fp.leq):
            mismatches.append(("S6-poset", p))
    rng = random.Random(seed)
    base = list(range(1, 9))
    subsets8 = list(_all_subsets(7))
    full8 = frozenset(range(1, 8))
    for _ in range(1000):
        p = base[:]
        rng.shuffle(p)
        p = tuple(p)
        naive = frozenset(J for J in subsets8 if is_bp_perm(p, J))
        if bp_members_fast(p) != naive:
            mismatches.append(("S8-members", p))
            continue
        closures = {}
        for i in range(1, 8):
            acc = full8
            for J in naive:
                if i in J:
                    acc &= J
            closures[i] = acc
        naive_poset = poset_from_closures(closures, 7, naive)
        fast_poset = bp_poset_fast(p)
        if (naive_poset.blocks, naive_poset.leq) != \
                (fast_poset.blocks, fast_poset.leq):
            mismatches.append(("S8-poset", p))
    status = "pass" if not mismatches else "fail"
    return CheckResult("typea-fast-path", status,
                       details=f"S_6 exhaustive + 1000 seeded S_8 samples, "
                               f"{len(mismatches)} mismatches (seed {seed})",
                       data={"mismatches": mismatches[:10], "seed": seed})


def bench_bp_paths(n: int, samples: int, seed: int,
                   naive_threshold: int = 12) -> dict:
    """Time the 2^(n-1) family sweep against the pattern-path BP poset.

    Both paths run on the same seeded random permutations; the naive sweep
    is skipped (with a notice) when n exceeds ``naive_threshold``.
    """
    rng = random.Random(seed)
    subsets = list(_all_subsets(n - 1)) if n <= naive_threshold else None
    fast_times = []
    naive_times = []
    agree = True
    perms = []
    for _ in range(samples):
        p = list(range(1, n + 1))
        rng.shuffle(p)
        perms.append(tuple(p))
    for p in perms:
        t0 = time.perf_counter()
        fast_members = bp_members_fast(p)
        fast_times.append(time.perf_counter() - t0)
        if subsets is not None:
            t0 = time.perf_counter()
            naive_members = frozenset(J for J in subsets if is_bp_perm(p, J))
            naive_times.append(time.perf_counter() - t0)
            if naive_members != fast_members:
                agree = False
    fast_mean = sum(fast_times) / len(fast_times)
    out = {
        "n": n,
        "samples": samples,
        "seed": seed,
        "fast_mean": fast_mean,
        "fast_max": max(fast_times),
        "agree": agree,
        "naive_skipped": subsets is None,
    }
    if naive_times:
        out["naive_mean"] = sum(naive_times) / len(naive_times)
        out["speedup"] = out["naive_mean"] / fast_mean if fast_mean > 0 else float("inf")
    else:
        out["naive_mean"] = None
        out["notice"] = (f"naive 2^{n-1} sweep skipped above threshold "
                         f"{naive_threshold}")
    return out


def check_typea_bench(opts) -> CheckResult:
    seed = opts.get("seed", DEFAULT_SEED)
    samples = opts.get("bench_samples", 8)
    row = bench_bp_paths(12, samples, seed)
    problems = []
    if not row["agree"]:
        problems.append("paths disagree")
    if row["fast_max"] >= 1.0:
        problems.append(f"fast path too slow: {row['fast_max']:.3f}s/element")
    if row["speedup"] < 10.0:
        problems.append(f"speedup {row['speedup']:.1f}x < 10x")
    status = "pass" if not problems else "fail"
    return CheckResult("typea-bench", status,
                       details="; ".join(problems) or
                               f"n=12: fast {row['fast_mean']*1e3:.1f} ms vs naive "
                               f"{row['naive_mean']*1e3:.1f} ms "
                               f"({row['speedup']:.1f}x, seed {seed})",
                       data=row)


# ---------------------------------------------------------------------------
# degrees


def check_poincare_degrees(opts) -> CheckResult:
    cases = [("A", 1), ("A", 2), ("A", 3), ("A", 4),
             ("B", 2), ("B", 3), ("D", 4), ("G2", None)]
    problems = []
    for tag, rank in cases:
        sys = _system(tag, rank)
        got = poincare(sys.longest_element())
        fam = "G" if tag == "G2" else tag
        want = q_integer_product(classical_degrees(fam, rank or 2))
        if got.coeffs != want.coeffs:
            problems.append(f"{sys.short_name}: {got} != {want}")
    status = "pass" if not problems else "fail"
    return CheckResult("poincare-degrees", status, details="; ".join(problems))


# ---------------------------------------------------------------------------
# root-system lemma verifiers


# the acceptance systems plus the default verification rank bound
# (B5/C5/D6 and the exceptionals); deeper ranks live in union-lemma-deep
_LEMMA_SYSTEMS = (("A", 3), ("A", 4), ("B", 4), ("B", 5), ("C", 4), ("C", 5),
                  ("D", 5), ("D", 6), ("F", 4), ("G", 2))


def _connected_subsets(rs) -> list:
    r = rs.rank
    adj = {i: set() for i in range(1, r + 1)}
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i != j and rs.cartan[i][j] != 0:
                adj[i].add(j)
    out = []
    for J in _all_subsets(r):
        if not J:
            continue
        seen = {min(J)}
        frontier = [min(J)]
        while frontier:
            a = frontier.pop()
            for b in adj[a] & J:
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        if seen == J:
            out.append(J)
    return out


def check_simple_star_lemma(opts) -> CheckResult:
    violations = []
    checked = 0
    for tag, rank in _LEMMA_SYSTEMS:
        rs = build_root_system(tag, rank)
        for J in _all_subsets(rank):
            checked += 1
            bad = verify_simple_jstar_lemma(rs, J)
            if bad:
                violations.append((f"{tag}{rank}", sorted(J), len(bad)))
    status = "pass" if not violations else "fail"
    return CheckResult("simple-star-lemma", status,
                       details=f"{checked} (system, J) sweeps, "
                               f"{len(violations)} with violations",
                       data={"violations": violations[:10]})


def check_union_lemma(opts) -> CheckResult:
    failures = []
    pairs_checked = 0
    for tag, rank in _LEMMA_SYSTEMS:
        rs = build_root_system(tag, rank)
        conn = _connected_subsets(rs)
        for i in range(len(conn)):
            for j in range(i, len(conn)):
                pairs_checked += 1
                bad = verify_union_helper_lemma(rs, conn[i], conn[j])
                if bad:
                    failures.append((f"{tag}{rank}", sorted(conn[i]),
                                     sorted(conn[j]), len(bad)))
    status = "pass" if not failures else "fail"
    return CheckResult("union-lemma", status,
                       details=f"{pairs_checked} connected pairs, "
                               f"{len(failures)} with failures",
                       data={"failures": failures[:10]})


def _exceptional_star_sweep(name: str, tag: str, rank: int) -> CheckResult:
    rs = build_root_system(tag, rank)
    violations = []
    for J in _all_subsets(rank):
        bad = verify_simple_jstar_lemma(rs, J)
        if bad:
            violations.append((sorted(J), len(bad)))
    status = "pass" if not violations else "fail"
    return CheckResult(name, status,
                       details=f"{tag}{rank}, all {2 ** rank} subsets",
                       data={"violations": violations[:10]})


def check_e6_simple_star(opts) -> CheckResult:
    return _exceptional_star_sweep("e6-simple-star", "E", 6)


def check_e8_simple_star(opts) -> CheckResult:
    # the root-system iteration stays quick even at 120 positive roots
    return _exceptional_star_sweep("e8-simple-star", "E", 8)


def check_union_lemma_deep(opts) -> CheckResult:
    # the complete reduction rank bound for the union decomposition lemma:
    # B9, C9, D10 and E8 (F4/G2 are in the default sweep); together with
    # the rank-reduction argument this covers every classical rank
    failures = []
    pairs_checked = 0
    for tag, rank in (("B", 9), ("C", 9), ("D", 10), ("E", 8)):
        rs = build_root_system(tag, rank)
        conn = _connected_subsets(rs)
        for i in range(len(conn)):
            for j in range(i, len(conn)):
                pairs_checked += 1
                bad = verify_union_helper_lemma(rs, conn[i], conn[j])
                if bad:
                    failures.append((f"{tag}{rank}", sorted(conn[i]),
                                     sorted(conn[j]), len(bad)))
    status = "pass" if not failures else "fail"
    return CheckResult("union-lemma-deep", status,
                       details=f"B9/C9/D10/E8: {pairs_checked} connected pairs, "
                               f"{len(failures)} with failures",
                       data={"failures": failures[:10]})


# ---------------------------------------------------------------------------
# Lehmer codes


_CODE_52134_S4 = {
    "12345": "000", "12435": "100", "13245": "010", "21345": "001",
    "12534": "200", "14235": "110", "21435": "101", "23145": "002",
    "31245": "011", "15234": "210", "21534": "201", "24135": "102",
    "32145": "012", "41235": "111", "25134": "202", "42135": "112",
    "51234": "211", "52134": "212",
}


def check_lehmer_52134(opts) -> CheckResult:
    a4 = _system("A", 4)
    w = element_from_perm(a4, (5, 2, 1, 3, 4))
    code = construct_quotient_code(w, {4})
    got = {"".join(map(str, perm_from_element(el))): "".join(map(str, t))
           for t, el in code.entries.items()}
    ok = code.chains.sizes == (3, 2, 3) and got == _CODE_52134_S4
    detail = "" if ok else f"chains {code.chains.sizes}, {len(got)} entries"
    return CheckResult("lehmer-52134-quotient", "pass" if ok else "fail",
                       details=detail,
                       data={"chains": list(code.chains.sizes)})


def check_lehmer_quotient_s5(opts) -> CheckResult:
    a4 = _system("A", 4)
    failures = []
    built = 0
    for m in range(1, 6):
        J = frozenset(range(m, 5))
        for idx in range(a4.cache().size):
            w = a4.cache().element(idx)
            if not a4.minimal_in_quotient(w, J):
                continue
            if not poincare(w, J).is_palindromic():
                continue
            try:
                code = construct_quotient_code(w, J, check=True)
                built += 1
            except Exception as exc:  # noqa: BLE001 - reported, not raised
                failures.append((sorted(J), str(w), repr(exc)))
    status = "pass" if not failures else "fail"
    return CheckResult("lehmer-quotient-s5", status,
                       details=f"{built} codes built and verified, "
                               f"{len(failures)} failures",
                       data={"built": built, "failures": failures[:10]})


def _search_all_rationally_smooth(sys, budget) -> tuple:
    found, failures = 0, []
    for idx in range(sys.cache().size):
        w = sys.cache().element(idx)
        if not is_rationally_smooth(w):
            continue
        res = search_code(interval(w), time_budget=budget)
        if res.status == "found" and verify_code(res.code, interval(w)):
            found += 1
        else:
            failures.append((str(w), res.status))
    return found, failures


def check_lehmer_search_s5(opts) -> CheckResult:
    budget = opts.get("search_budget", 60.0)
    found, failures = _search_all_rationally_smooth(_system("A", 4), budget)
    status = "pass" if not failures else "fail"
    return CheckResult("lehmer-search-s5", status,
                       details=f"{found} rationally smooth elements coded, "
                               f"{len(failures)} failures",
                       data={"found": found, "failures": failures[:10]})


def check_lehmer_search_b3(opts) -> CheckResult:
    budget = opts.get("search_budget", 60.0)
    found, failures = _search_all_rationally_smooth(_system("B", 3), budget)
    status = "pass" if not failures else "fail"
    return CheckResult("lehmer-search-b3", status,
                       details=f"{found} rationally smooth elements coded, "
                               f"{len(failures)} failures",
                       data={"found": found, "failures": failures[:10]})


def check_lehmer_h3(opts) -> CheckResult:
    budget = opts.get("search_budget", 300.0)
    h3 = _system("H3")
    res = search_code(interval(h3.longest_element()), time_budget=budget)
    ok = (res.status == "found"
          and tuple(sorted(res.code.chains.sizes)) == (2, 6, 10)
          and verify_code(res.code, interval(h3.longest_element())))
    return CheckResult("lehmer-h3", "pass" if ok else "fail",
                       details=f"status {res.status}, chains "
                               f"{res.code.chains.sizes if res.code else None}",
                       data={"elapsed": round(res.elapsed, 2)})


def check_f4_lehmer(opts) -> CheckResult:
    # long run: certify that [e, w0(F4)] admits no Lehmer code
    budget = opts.get("f4_budget", None)
    f4 = _system("F4")
    iv = interval(f4.longest_element(), (), cap_length=24)
    res = search_code(iv, time_budget=budget)
    ok = res.status == "none"
    return CheckResult("f4-lehmer", "pass" if ok else "fail",
                       details=f"status {res.status} after {res.elapsed:.1f}s; "
                               f"candidates {[list(c) for c in res.candidates]}",
                       data={"candidates": [list(c) for c in res.candidates],
                             "elapsed": round(res.elapsed, 1)})


# ---------------------------------------------------------------------------
# Schubert structure constants


def check_schubert_hand_checks(opts) -> CheckResult:
    problems = []
    if structure_constant((2, 1, 3), (1, 3, 2), (2, 3, 1)) != 1:
        problems.append("c_{s1,s2}^{231} != 1")
    if structure_constant((2, 1, 3), (2, 1, 3), (2, 3, 1)) != 0:
        problems.append("c_{s1,s1}^{231} != 0")
    mat = structure_matrix((2, 3, 1), 1)
    if mat.rows != ((1, 3, 2), (2, 1, 3)) or mat.cols != ((2, 1, 3), (1, 3, 2)) \
            or mat.entries != ((1, 1), (0, 1)):
        problems.append(f"231 matrix differs: {mat.rows}, {mat.cols}, {mat.entries}")
    # Monk's rule oracle agreement on all of S_4
    for w in permutations(range(1, 5)):
        for k in range(1, 4):
            sk = tuple(range(1, k)) + (k + 1, k) + tuple(range(k + 2, 5))
            if expand_product(sk, w) != monk_expand(k, w):
                problems.append(f"Monk mismatch at k={k}, w={w}")
    # duality at the longest element of S_4: a permutation matrix
    w0 = (4, 3, 2, 1)
    for u in permutations(range(1, 5)):
        for v in permutations(range(1, 5)):
            if perm_length(u) + perm_length(v) != 6:
                continue
            c = structure_constant(u, v, w0)
            want = 1 if v == tuple(w0[x - 1] for x in u) else 0
            if c != want:
                problems.append(f"duality fails at ({u}, {v})")
    status = "pass" if not problems else "fail"
    return CheckResult("schubert-hand-checks", status, details="; ".join(problems[:5]))


def check_schubert_triangularity(opts) -> CheckResult:
    problems = []
    matrices = 0
    for w in permutations(range(1, 6)):
        if not avoids_3412_4231(w):
            continue
        for k in range(perm_length(w) + 1):
            mat = structure_matrix(w, k)
            matrices += 1
            if not mat.is_upper_unitriangular():
                problems.append(f"not unitriangular: w={w}, k={k}")
                continue
            try:
                canonical_bijection(w, k)
            except AssertionError as exc:
                problems.append(f"bijection not unique: w={w}, k={k}: {exc}")
    # alternative linear extensions must all work (S_4 scale)
    for w in permutations(range(1, 5)):
        if not avoids_3412_4231(w):
            continue
        for k in range(perm_length(w) + 1):
            for rule, seed in (("revword", 0), ("seeded", 1), ("seeded", 2)):
                mat = structure_matrix(w, k, ext_rule=rule, seed=seed)
                matrices += 1
                if not mat.is_upper_unitriangular():
                    problems.append(f"ext {rule}/{seed} fails: w={w}, k={k}")
    status = "pass" if not problems else "fail"
    return CheckResult("schubert-triangularity", status,
                       details=f"{matrices} matrices checked, "
                               f"{len(problems)} failures",
                       data={"failures": problems[:10]})


# ---------------------------------------------------------------------------
# proposition property suites


_PROP_GROUPS = (("A", 3), ("A", 4), ("B", 3), ("D", 4))


def check_prop_suites(opts) -> CheckResult:
    problems = []
    counts = {"singleton": 0, "disconnected": 0, "ideal": 0,
              "smooth-factors": 0, "product-map": 0}
    for tag, rank in _PROP_GROUPS:
        sys = _system(tag, rank)
        r = sys.rank
        full = frozenset(range(1, r + 1))
        disconnected_pairs = []
        for J in _all_subsets(r):
            if not J:
                continue
            for K in _all_subsets(r):
                if not K or min(K) < min(J):
                    continue
                if J & K:
                    continue
                if sys.totally_disconnected(J, K):
                    disconnected_pairs.append((J, K))
        for w in sys.elements():
            fam = bp_family(w)
            # singleton classification
            for s in range(1, r + 1):
                got = frozenset({s}) in fam.members
                want = s in w.right_descents() or s not in w.support
                counts["singleton"] += 1
                if got != want:
                    problems.append(("singleton", sys.short_name, str(w), s))
            # totally disconnected law
            for J, K in disconnected_pairs:
                got = (J | K) in fam.members
                want = J in fam.members and K in fam.members
                counts["disconnected"] += 1
                if got != want:
                    problems.append(("disconnected", sys.short_name, str(w),
                                     sorted(J), sorted(K)))
            # order-ideal restriction for w_J
            for J in fam.sorted_members():
                d = sys.parabolic_decompose(w, J)
                wj = d.parabolic
                sub = frozenset(K for K in _all_subsets(r)
                                if K <= J and is_bp(wj, K))
                want = frozenset(K & J for K in fam.members)
                counts["ideal"] += 1
                if sub != want:
                    problems.append(("ideal", sys.short_name, str(w), sorted(J)))
            # rational smoothness of factors
            if is_rationally_smooth(w):
                for J in _all_subsets(r):
                    d = sys.parabolic_decompose(w, J)
                    counts["smooth-factors"] += 1
                    if not is_rationally_smooth(d.parabolic):
                        problems.append(("wJ-smooth", sys.short_name, str(w),
                                         sorted(J)))
                    if J in fam.members and \
                            not poincare(d.quotient, J).is_palindromic():
                        problems.append(("quotient-smooth", sys.short_name,
                                         str(w), sorted(J)))
            # product map bijectivity and order preservation
            iv = interval(w)
            for J in fam.sorted_members():
                pm = bp_product_map(w, J)
                counts["product-map"] += 1
                if not pm.is_bijective_onto(iv):
                    problems.append(("product-bijective", sys.short_name,
                                     str(w), sorted(J)))
                elif not pm.preserves_order(iv):
                    problems.append(("product-order", sys.short_name,
                                     str(w), sorted(J)))
    status = "pass" if not problems else "fail"
    return CheckResult("prop-suites", status,
                       details=", ".join(f"{k}: {v}" for k, v in counts.items())
                               + f"; {len(problems)} failures",
                       data={"counts": counts, "failures": problems[:10]})


# ---------------------------------------------------------------------------
# registry and driver


CHECKS = {
    "c2-counterexample": check_c2_counterexample,
    "bp-oracle-equivalence": check_bp_oracle_equivalence,
    "bp-lattice": check_bp_lattice,
    "rank3-sweep": check_rank3_sweep,
    "bp-poset-figures": check_bp_poset_figures,
    "example-factorization": check_example_factorization,
    "typea-fast-path": check_typea_fast_path,
    "typea-bench": check_typea_bench,
    "poincare-degrees": check_poincare_degrees,
    "simple-star-lemma": check_simple_star_lemma,
    "union-lemma": check_union_lemma,
    "lehmer-52134-quotient": check_lehmer_52134,
    "lehmer-quotient-s5": check_lehmer_quotient_s5,
    "lehmer-search-s5": check_lehmer_search_s5,
    "lehmer-search-b3": check_lehmer_search_b3,
    "lehmer-h3": check_lehmer_h3,
    "schubert-hand-checks": check_schubert_hand_checks,
    "schubert-triangularity": check_schubert_triangularity,
    "prop-suites": check_prop_suites,
    "e6-simple-star": check_e6_simple_star,
    "e8-simple-star": check_e8_simple_star,
    "union-lemma-deep": check_union_lemma_deep,
    "f4-lehmer": check_f4_lehmer,
}

LONG_CHECKS = frozenset({"e6-simple-star", "e8-simple-star",
                         "union-lemma-deep", "f4-lehmer"})


def _run_one(name: str, opts: dict) -> CheckResult:
    t0 = time.perf_counter()
    try:
        result = CHECKS[name](opts)
    except Exception:  # noqa: BLE001 - a crashed check is a failed check
        result = CheckResult(name, "fail",
                             details="crashed: " + traceback.format_exc(limit=3))
    result.seconds = time.perf_counter() - t0
    return result


def run_checks(only=None, include_long=(), threads: int = 1,
               opts: dict = None) -> RunReport:
    """Run the verification suite and collect a RunReport.

    Without ``only``, every non-long check runs and long checks appear as
    skipped unless named in ``include_long``.
    """
    opts = dict(opts or {})
    opts.setdefault("seed", DEFAULT_SEED)
    include_long = set(include_long)
    unknown = (set(only or ()) | include_long) - set(CHECKS)
    if unknown:
        raise KeyError(f"unknown check names: {sorted(unknown)}")
    if only:
        selected = [n for n in CHECKS if n in set(only)]
        skipped = []
    else:
        selected = [n for n in CHECKS if n not in LONG_CHECKS or n in include_long]
        skipped = [n for n in LONG_CHECKS if n not in include_long]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda n: _run_one(n, opts), selected))
    else:
        results = [_run_one(n, opts) for n in selected]
    by_name = {r.name: r for r in results}
    ordered = [by_name[n] for n in CHECKS if n in by_name]
    for n in sorted(skipped):
        ordered.append(CheckResult(n, "skip",
                                   details="long-running; enable with --include-long"))
    return RunReport("verify-paper", {"only": sorted(only or ()),
                                      "include_long": sorted(include_long),
                                      "threads": threads},
                     ordered, seed=opts.get("seed"))
