"""CLI behavior: JSON fidelity, exports, exit codes, notation parsing."""

import json

from coxbp.cli import main
from coxbp.coxeter import build_system
from coxbp.bp import bp_family, bp_poset
from coxbp.serialize import poset_to_json
from coxbp.typea import element_from_perm


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info(capsys):
    code, out, _ = run_cli(capsys, "info", "--type", "B", "--rank", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 48 and payload["positive_roots"] == 9


def test_bp_poset_json_matches_library(capsys):
    code, out, _ = run_cli(capsys, "bp", "--type", "A", "--rank", "3",
                           "--w", "4231", "--poset", "--json")
    assert code == 0
    payload = json.loads(out)
    a3 = build_system("A", 3)
    w = element_from_perm(a3, (4, 2, 3, 1))
    fam = bp_family(w)
    assert payload["family"] == [sorted(m) for m in fam.sorted_members()]
    assert payload["poset"] == poset_to_json(bp_poset(w, fam))
    # 4231: three singleton blocks with 1 and 3 below 2
    assert payload["poset"] == {"blocks": [[1], [2], [3]],
                                "relations": [[0, 1], [2, 1]]}


def test_bp_verdicts_and_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "bp", "--type", "affineC2",
                           "--w", "srstrsr", "--J", "rs")
    assert code == 1 and "False" in out
    code, out, _ = run_cli(capsys, "bp", "--type", "A", "--rank", "3",
                           "--w", "1234", "--J", "1")
    assert code == 0 and "True" in out


def test_bp_methods_agree(capsys):
    for method in ("def", "poincare", "jstar"):
        code, out, _ = run_cli(capsys, "bp", "--type", "A", "--rank", "3",
                               "--w", "3412", "--J", "2", "--method", method)
        assert code == 0 and "True" in out


def test_interval_and_exports(capsys, tmp_path):
    dot = tmp_path / "iv.dot"
    fig = tmp_path / "iv.png"
    code, out, _ = run_cli(capsys, "interval", "--type", "A", "--rank", "4",
                           "--w", "52134", "--J", "4",
                           "--dot", str(dot), "--fig", str(fig), "--json")
    assert code == 0
    payload = json.loads(out)
    assert sum(len(r) for r in payload["ranks"]) == 18
    assert dot.read_text().startswith("digraph")
    assert fig.stat().st_size > 0


def test_poincare_and_rs(capsys):
    code, out, _ = run_cli(capsys, "poincare", "--type", "affineC2",
                           "--w", "srstrs", "--J", "r", "--json")
    assert code == 0
    assert json.loads(out)["coeffs"] == [1, 2, 3, 4, 3, 2, 1]
    code, out, _ = run_cli(capsys, "rs", "--type", "A", "--rank", "3",
                           "--w", "3412", "--json")
    assert code == 0 and json.loads(out)["rationally_smooth"] is False


def test_lehmer_subcommands(capsys):
    code, out, _ = run_cli(capsys, "lehmer", "--type", "A", "--rank", "4",
                           "--w", "52134", "--J", "4", "--action", "construct",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["chains"] == [3, 2, 3] and len(payload["entries"]) == 18
    code, out, _ = run_cli(capsys, "lehmer", "--type", "B", "--rank", "2",
                           "--w", "1,2,1,2", "--format", "word",
                           "--action", "search", "--json")
    assert code == 0
    assert json.loads(out)["status"] == "found"


def test_schubert_subcommand(capsys):
    code, out, _ = run_cli(capsys, "schubert", "--c", "213", "132", "231",
                           "--json")
    assert code == 0 and json.loads(out)["c"] == 1
    code, out, _ = run_cli(capsys, "schubert", "--matrix", "231", "--k", "1",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["entries"] == [[1, 1], [0, 1]]
    assert payload["upper_unitriangular"] is True


def test_lemma_check(capsys):
    code, out, _ = run_cli(capsys, "lemma-check", "--which", "union",
                           "--type", "G2", "--json")
    assert code == 0 and json.loads(out)["total_violations"] == 0


def test_usage_errors_exit_2(capsys):
    code, _, err = run_cli(capsys, "bp", "--type", "A", "--rank", "3",
                           "--w", "9999")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "info", "--type", "Q", "--rank", "3")
    assert code == 2


def test_ambiguity_requires_format(capsys):
    # in B3 the string "123" is both the identity one-line and the word
    # s1 s2 s3; the parser must refuse to guess
    code, _, err = run_cli(capsys, "bp", "--type", "B", "--rank", "3",
                           "--w", "123", "--J", "1")
    assert code == 2 and "ambiguous" in err
    code, out, _ = run_cli(capsys, "bp", "--type", "B", "--rank", "3",
                           "--w", "123", "--format", "word", "--J", "3")
    assert code == 0  # s3 is a right descent of s1 s2 s3
    code2, out2, _ = run_cli(capsys, "bp", "--type", "B", "--rank", "3",
                             "--w", "123", "--format", "oneline", "--J", "1")
    assert code2 == 0 and "e (length 0)" in out2


def test_verify_paper_only(capsys, tmp_path):
    out_dir = tmp_path / "rep"
    code, out, _ = run_cli(capsys, "verify-paper", "--only", "c2-counterexample",
                           "--only", "poincare-degrees",
                           "--out-dir", str(out_dir))
    assert code == 0
    assert "[PASS] c2-counterexample" in out
    assert (out_dir / "verify.csv").exists()
    assert (out_dir / "verify.png").stat().st_size > 0
    report = json.loads((out_dir / "verify.json").read_text())
    assert report["passed"] is True


def test_verify_paper_json_skips_long(capsys):
    code, out, _ = run_cli(capsys, "verify-paper", "--only", "lehmer-52134-quotient",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"][0]["status"] == "pass"


def test_bench(capsys, tmp_path):
    out_dir = tmp_path / "bench"
    code, out, _ = run_cli(capsys, "bench", "--n", "6", "--samples", "4",
                           "--seed", "3", "--out-dir", str(out_dir))
    assert code == 0
    assert (out_dir / "bench.csv").exists()
    assert (out_dir / "bench.png").stat().st_size > 0
    code, out, _ = run_cli(capsys, "bench", "--n", "6", "--samples", "2",
                           "--naive-threshold", "5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"][0]["naive_skipped"] is True


def test_jstars_subcommand(capsys):
    code, out, _ = run_cli(capsys, "jstars", "--type", "A", "--rank", "2",
                           "--J", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["stars"] == [{"head": [1, 0], "arms": [[1, [0, 1]]]}]


def test_global_flags_both_positions(capsys):
    code1, out1, _ = run_cli(capsys, "--json", "poincare", "--type", "A",
                             "--rank", "2", "--w", "121", "--format", "word")
    code2, out2, _ = run_cli(capsys, "poincare", "--type", "A", "--rank", "2",
                             "--w", "121", "--format", "word", "--json")
    assert code1 == code2 == 0 and out1 == out2


def test_verify_paper_threads(capsys):
    code, out, _ = run_cli(capsys, "verify-paper", "--threads", "2",
                           "--only", "poincare-degrees",
                           "--only", "schubert-hand-checks")
    assert code == 0 and out.count("[PASS]") == 2


def test_figures_edge_cases(tmp_path):
    # single-layer poset (identity: all blocks incomparable, no covers)
    from coxbp.bp import bp_poset
    from coxbp.bruhat import interval
    from coxbp.coxeter import build_system
    from coxbp.report import save_interval_figure, save_poset_figure
    a3 = build_system("A", 3)
    save_poset_figure(bp_poset(a3.identity), tmp_path / "p.png")
    assert (tmp_path / "p.png").stat().st_size > 0
    # large interval falls back to the rank histogram
    a4 = build_system("A", 4)
    a4.cache()
    save_interval_figure(interval(a4.longest_element()), tmp_path / "i.png")
    assert (tmp_path / "i.png").stat().st_size > 0
