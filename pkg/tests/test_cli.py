"""Command-line interface: exit codes, deterministic output, examples."""

import pytest

from dbakit.cli import main
from dbakit.fileformats import render_algebra, render_context
from dbakit.fca import FormalContext
from dbakit.fixtures import boolean2, cex_5ab, chain3, singleton
from dbakit.logic import fixture_proofs, render_script


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, alg in (("cex", cex_5ab()), ("chain3", chain3()),
                      ("one", singleton()), ("b2", boolean2())):
        p = tmp_path / f"{name}.dba"
        p.write_text(render_algebra(alg))
        paths[name] = str(p)
    ctx = FormalContext(["g"], ["m"], [[True]])
    p = tmp_path / "ctx.cxt"
    p.write_text(render_context(ctx))
    paths["ctx"] = str(p)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_counterexample_dcore(files, capsys):
    code, out = run(capsys, "check", files["cex"], "--suite", "dcore")
    assert code == 1
    assert "5a: FAIL x=b y=b" in out
    assert "5b: FAIL" in out
    assert "pass: false" in out


def test_check_singleton_dba(files, capsys):
    code, out = run(capsys, "check", files["one"], "--suite", "dba")
    assert code == 0
    assert "pass: true" in out


def test_missing_file_is_usage_error(files, capsys):
    code, out = run(capsys, "check", str(files["dir"] / "absent.dba"))
    assert code == 2


def test_parse_error_is_exit_2(files, capsys):
    bad = files["dir"] / "bad.dba"
    bad.write_text("elements: a\nmeet:\nzz\n")
    code, out = run(capsys, "check", str(bad))
    assert code == 2


def test_classify_chain(files, capsys):
    code, out = run(capsys, "classify", files["chain3"])
    assert code == 0
    assert "pure: true" in out and "trivial: true" in out


def test_classify_non_dba_still_reports(files, capsys):
    code, out = run(capsys, "classify", files["cex"])
    assert code == 0
    assert "dba: false" in out


def test_protoconcepts_listing_and_emission(files, capsys, tmp_path):
    out_dba = tmp_path / "proto.dba"
    code, out = run(capsys, "protoconcepts", files["ctx"], "--kind", "proto",
                    "--emit-algebra", str(out_dba))
    assert code == 0
    assert "count: 4" in out
    code2, out2 = run(capsys, "check", str(out_dba), "--suite", "dba")
    assert code2 == 0


def test_protoconcepts_counts_nest(files, capsys):
    _, out_semi = run(capsys, "protoconcepts", files["ctx"], "--kind", "semi")
    _, out_proto = run(capsys, "protoconcepts", files["ctx"], "--kind", "proto")
    n_semi = int(out_semi.split("count: ")[1].split()[0])
    n_proto = int(out_proto.split("count: ")[1].split()[0])
    assert n_semi <= n_proto


def test_construct_glued_sum(files, capsys):
    code, out = run(capsys, "construct", "glued-sum", files["b2"], files["b2"])
    assert code == 0
    assert "pure: true" in out and "trivial: true" in out
    assert "elements: 3" in out


def test_construct_from_booleans_and_broken_retraction(files, capsys):
    code, out = run(capsys, "construct", "from-booleans", files["b2"], files["b2"],
                    "--size", "3", "--r", "0,1,1", "--e", "0,1",
                    "--rp", "0,0,1", "--ep", "1,2")
    assert code == 0
    assert "conditions: true" in out and "dba: true" in out
    code2, out2 = run(capsys, "construct", "from-booleans", files["b2"], files["b2"],
                      "--size", "3", "--r", "0,0,1", "--e", "0,1",
                      "--rp", "0,0,1", "--ep", "1,2")
    assert code2 == 2  # r(e(1)) != 1


def test_construct_gen_glued_sum_empty_overlap(files, capsys):
    code, out = run(capsys, "construct", "gen-glued-sum", files["b2"], files["b2"])
    assert code == 0
    assert "elements: 4" in out
    assert "order_antisymmetric: false" in out


def test_represent_chain(files, capsys):
    code, out = run(capsys, "represent", files["chain3"], "--verify", "all")
    assert code == 0
    assert "primary_filters: 1" in out
    assert "pass: true" in out


def test_represent_emits_standard_context(files, capsys, tmp_path):
    out_cxt = tmp_path / "std.cxt"
    code, out = run(capsys, "represent", files["chain3"], "--emit-context", str(out_cxt))
    assert code == 0
    text = out_cxt.read_text()
    assert text == "objects: F0\nattributes: I0\nX\n"


def test_represent_requires_dba(files, capsys):
    code, out = run(capsys, "represent", files["cex"])
    assert code == 2


def test_represent_budget_exit(files, capsys, tmp_path):
    from dbakit.constructions import glued_sum, powerset_boolean
    big = glued_sum(powerset_boolean(4, max_atoms=5), powerset_boolean(3, max_atoms=5))
    p = tmp_path / "big.dba"
    p.write_text(render_algebra(big))
    code, out = run(capsys, "represent", str(p))
    assert code == 3


def test_prove_identity(files, capsys):
    code, out = run(capsys, "prove", "x => x")
    assert code == 0
    assert "proved: true" in out and "lines: 1" in out


def test_prove_not_found_is_still_exit_zero(files, capsys):
    code, out = run(capsys, "prove", "T => T & T", "--depth", "3")
    assert code == 0
    assert "proved: false" in out


def test_prove_with_cut_and_lemma_flag(files, capsys):
    code, out = run(capsys, "prove", "~~(x & y) => (x & y) & (x & y)", "--depth", "3")
    assert code == 0 and "proved: true" in out
    code2, out2 = run(capsys, "prove", "x & y => (x & y) & (x & y)",
                      "--depth", "4", "--lemma", "p & q => p")
    assert code2 == 0 and "proved: true" in out2


def test_checkproof_fixture_scripts(files, capsys, tmp_path):
    for name, script in fixture_proofs():
        p = tmp_path / f"{name}.proof"
        p.write_text(render_script(script))
        code, out = run(capsys, "checkproof", str(p))
        assert code == 0, (name, out)
        assert "valid: true" in out


def test_checkproof_invalid_script(files, capsys, tmp_path):
    p = tmp_path / "bad.proof"
    p.write_text("system: L\n1: x => y  id-axiom\n")
    code, out = run(capsys, "checkproof", str(p))
    assert code == 1
    assert "first_bad_line: 1" in out


def test_refute_reports_chain3(files, capsys):
    code, out = run(capsys, "refute", "T => T & T")
    assert code == 0
    assert "countermodel: found" in out and "model: chain3" in out


def test_refute_none_for_identity(files, capsys):
    code, out = run(capsys, "refute", "x => x")
    assert code == 0
    assert "countermodel: none" in out


def test_search_size1(files, capsys):
    code, out = run(capsys, "search", "--size", "1", "--require", "dba")
    assert code == 0
    assert "models: 1" in out and "complete: true" in out


def test_search_budget_exit3(files, capsys):
    code, out = run(capsys, "search", "--size", "2", "--max-candidates", "3")
    assert code == 3
    assert "complete: false" in out


def test_search_reproduces_independence(files, capsys):
    code, out = run(capsys, "search", "--size", "2", "--require", "dcore",
                    "--fail", "5a,5b", "--limit", "1")
    assert "models: 1" in out
    assert "meet:" in out  # a model was emitted as .dba text


def test_output_deterministic(files, capsys):
    a = run(capsys, "classify", files["chain3"])
    b = run(capsys, "classify", files["chain3"])
    assert a == b
    c = run(capsys, "represent", files["chain3"])
    d = run(capsys, "represent", files["chain3"])
    assert c == d


def test_bad_goal_parse_is_exit_2(files, capsys):
    code, out = run(capsys, "prove", "x &")
    assert code == 2
