import io
import json

import pytest

from grassauto import cli
from grassauto.report import RunReport, emit_report, strip_timing


def run(*argv):
    out = io.StringIO()
    code, _ = cli.run(list(argv), stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


def test_field_and_usage_errors(capsys):
    code, rep, _ = run("field", "--field", "f3_5")
    assert code == 0 and rep["counts"]["alpha_order"] == 242
    assert run("field", "--field", "p=2,n=4,poly=x^4+x+1")[0] == 2
    assert run("field", "--field", "p=2,n=3,poly=x^3+1")[0] == 2
    assert run("bogus")[0] == 2
    assert run("steiner", "clique", "--mode", "weird")[0] == 2
    assert "usage" in capsys.readouterr().err


def test_cosets():
    code, rep, _ = run("cosets", "--field", "f2_13")
    assert code == 0 and rep["counts"]["groups"] == 105 and rep["counts"]["size_n_cosets"] == 630
    code, rep, _ = run("cosets", "--field", "f2_7", "--list")
    assert "1: 1 2 4 8 16 32 64" in rep["details"]["listing"]
    code, rep, _ = run("cosets", "--field", "f3_5")
    assert code == 0 and "groups" not in rep["counts"]


def test_spread_build(tmp_path):
    out = tmp_path / "spread.txt"
    code, rep, _ = run("spread", "build", "--field", "f3_5", "--seed", "paper_pg53.seed", "--out", str(out))
    assert code == 0 and rep["counts"]["lines"] == 91 and rep["counts"]["shifted_base_lines"] == 16
    assert len(out.read_text().splitlines()) == 91


def test_parallelism_build_and_verify(tmp_path):
    out = tmp_path / "par.txt"
    code, rep, _ = run("parallelism", "build", "--field", "f3_5", "--seed", "fixtures/paper_pg53.seed", "--out", str(out))
    assert code == 0
    assert rep["counts"]["spreads"] == rep["counts"]["spread_count"] == 121
    assert rep["counts"]["lines"] == rep["counts"]["line_count"] == 11011
    assert rep["verdicts"] == {"coverage_ok": "pass"} and rep["first_violation"] is None
    code, rep, _ = run("parallelism", "verify", "--field", "f3_5", "--input", str(out))
    assert code == 0 and rep["counts"]["spreads"] == 121
    lines = out.read_text().splitlines()
    broken = tmp_path / "broken.txt"
    broken.write_text("\n".join(lines[:5] + lines[6:]) + "\n")
    code, rep, _ = run("parallelism", "verify", "--field", "f3_5", "--input", str(broken))
    assert code == 1 and rep["verdicts"]["coverage_ok"] == "fail" and rep["first_violation"]


def test_zero_configuration_run():
    code, rep, _ = run("parallelism", "build")
    assert code == 0 and rep["counts"]["spreads"] == 121


def test_corrupted_seed_named_violation(tmp_path):
    from grassauto.formats import read_fixture_or_file

    text = read_fixture_or_file("paper_pg53.seed").replace("\n1 218\n", "\n2 218\n")
    bad = tmp_path / "bad.seed"
    bad.write_text(text)
    code, rep, _ = run("parallelism", "build", "--field", "f3_5", "--seed", str(bad))
    assert code == 1 and "P" in rep["first_violation"]


def test_parallelism_search(tmp_path):
    out = tmp_path / "s.seed"
    code, rep, _ = run("parallelism", "search", "--field", "f2_5", "--out", str(out))
    assert code == 0 and rep["counts"]["spreads"] == 31
    code, rep, _ = run("parallelism", "build", "--field", "f2_5", "--seed", str(out))
    assert code == 0
    code, rep, _ = run("parallelism", "search", "--field", "f2_3")
    assert code == 1 and "conditions" in rep["first_violation"]


def test_steiner_n7_negative():
    code, rep, _ = run("steiner", "clique", "--field", "f2_7", "--mode", "complete", "--target", "3")
    assert code == 1
    assert rep["counts"]["max_clique"] == 2 and rep["counts"]["clique"] == 2
    assert rep["details"]["clique_status"] == "exhausted"
    assert "target" in rep["first_violation"]


def test_steiner_pipeline_small(tmp_path):
    vmap, graph, clq, code_file = (tmp_path / x for x in ("v.map", "g.dimacs", "c.txt", "code.txt"))
    base = ["--field", "f2_7", "--mode", "complete"]
    assert run("steiner", "vertices", *base, "--out", str(vmap))[1]["counts"]["vertices"] == 72
    code, rep, _ = run("steiner", "graph", *base, "--out", str(graph))
    assert code == 0 and rep["counts"]["edges"] == 36
    assert (tmp_path / "g.dimacs.vertices").exists()
    code, rep, _ = run("steiner", "clique", *base, "--vertices", str(vmap), "--target", "2", "--out", str(clq))
    assert code == 0
    code, rep, _ = run("steiner", "expand", *base, "--vertices", str(vmap), "--clique", str(clq), "--out", str(code_file))
    assert code == 0 and rep["counts"]["code_size"] == 254
    code, rep, _ = run("steiner", "verify", "--field", "f2_7", "--code", str(code_file))
    assert code == 0 and rep["counts"]["two_subspaces_distinct"] == 7 * 254
    assert rep["details"]["steiner_structure"] is False


def test_report_deterministic_and_seeded(tmp_path):
    argv = ["steiner", "clique", "--field", "f2_7", "--mode", "complete", "--target", "2", "--seed", "7",
            "--restart-seconds", "1"]
    a, b = run(*argv)[2], run(*argv)[2]
    assert strip_timing(a) == strip_timing(b)
    assert json.loads(a)["seeds"] == {"clique_order": 7}
    path = tmp_path / "r.json"
    code, _, text = run("cosets", "--field", "f2_7", "--report", str(path))
    assert path.read_text() == text


def test_no_default_pass():
    rep = RunReport(command="x")
    assert not rep.ok
    rep.verdict("a", True)
    rep.verdict("b", False, "b broke")
    rep.verdict("c", False)
    assert not rep.ok and rep.first_violation == "b broke"
    assert json.loads(emit_report(rep))["verdicts"] == {"a": "pass", "b": "fail", "c": "fail"}
