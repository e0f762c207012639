"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Every criterion runs the same registered check functions as the
`verify-paper` CLI command; tolerances and runtime caps are pinned here.
The two long-running checks (E6 star sweep, F4 longest-element Lehmer
nonexistence) are opt-in through COXBP_LONG=1, as the CLI gates them
behind --include-long.
"""

import os
import sys
import time

import pytest

from coxbp.checks import CHECKS, DEFAULT_SEED

_OPTS = {"seed": DEFAULT_SEED}
_RESULTS: dict = {}


def _announce(line: str):
    print(line)
    if sys.stdout is not sys.__stdout__:  # punch through pytest capture
        print(line, file=sys.__stdout__)


def _run(name: str):
    if name not in _RESULTS:
        t0 = time.perf_counter()
        result = CHECKS[name](_OPTS)
        result.seconds = time.perf_counter() - t0
        _RESULTS[name] = result
    return _RESULTS[name]


def _criterion(number: int, names, max_seconds=None):
    results = [_run(n) for n in names]
    ok = all(r.status == "pass" for r in results)
    total = sum(r.seconds for r in results)
    label = ", ".join(names)
    detail = "; ".join(f"{r.name}: {r.details}" for r in results if r.details)
    _announce(f"ACCEPTANCE {number} [{'PASS' if ok else 'FAIL'}] {label} "
              f"({total:.2f}s) {detail}")
    assert ok, f"criterion {number} failed: {detail}"
    if max_seconds is not None:
        assert total < max_seconds, \
            f"criterion {number} exceeded its runtime bound ({total:.1f}s)"


def test_criterion_01_c2_counterexample():
    # exact factorizations, no BP maximal parabolic, the quotient polynomial
    # 1+2q+3q^2+4q^3+3q^4+2q^5+q^6, {r} in BP(w), palindromic P(w); < 5 s
    _criterion(1, ["c2-counterexample"], max_seconds=5.0)


def test_criterion_02_bp_oracle_equivalence():
    # three-way agreement on every (w, J) in A3, A4, B3, C3, D4, G2
    # (the sweep also covers all of F4, beyond the criterion); < 10 min
    _criterion(2, ["bp-oracle-equivalence"], max_seconds=600.0)


def test_criterion_03_lattice_and_rank3():
    # union/intersection closure in the criterion-2 groups, plus the rank-3
    # sweep (affine C2 and two other rank-3 systems) up to length 12
    _criterion(3, ["bp-lattice", "rank3-sweep"])


def test_criterion_04_poset_figures_and_factorization():
    # the three stated block posets and the seven-factor example, verbatim
    _criterion(4, ["bp-poset-figures", "example-factorization"])


def test_criterion_05_typea_fast_path_and_bench():
    # fast path == exhaustive on S_6 and 1000 seeded S_8 samples; at n = 12
    # the fast path is >= 10x the naive sweep and under 1 s per element
    _criterion(5, ["typea-fast-path", "typea-bench"])


def test_criterion_06_degrees():
    # P(w0) equals the product of q-integers of the degrees, by enumeration
    _criterion(6, ["poincare-degrees"])


def test_criterion_07_lemma_verifiers():
    # zero violations in A4, B4, C4, D5, F4, G2 for both verifiers; < 15 min
    _criterion(7, ["simple-star-lemma", "union-lemma"], max_seconds=900.0)


def test_criterion_08_lehmer_codes():
    # the 18-entry code of [e, 52134]^{s4} entry-for-entry; all admissible
    # (w, J) in S_5; search finds codes for every rationally smooth w in
    # S_5 and B3 and for w0(H3) with chains (2, 6, 10)
    _criterion(8, ["lehmer-52134-quotient", "lehmer-quotient-s5", "lehmer-search-s5",
                   "lehmer-search-b3", "lehmer-h3"])


def test_criterion_09_schubert():
    # S_3 hand examples against the Monk oracle; upper unitriangularity and
    # transversal uniqueness for every smooth w in S_5 and every k
    _criterion(9, ["schubert-hand-checks", "schubert-triangularity"])


def test_criterion_10_proposition_suites():
    # singleton law, totally disconnected law, order-ideal restriction,
    # factor smoothness, product-map bijectivity/order over A3, A4, B3, D4
    _criterion(10, ["prop-suites"])


@pytest.mark.skipif(not os.environ.get("COXBP_LONG"),
                    reason="long-run checks; set COXBP_LONG=1 to enable "
                           "(CLI: verify-paper --include-long ...)")
def test_optional_long_runs():
    _criterion("8-optional", ["f4-lehmer"])
    _criterion("7-optional", ["e6-simple-star", "e8-simple-star",
                              "union-lemma-deep"])
