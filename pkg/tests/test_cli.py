"""Tests for the command-line entry point"""
import json

import pytest

from arthom.cli import EXIT_ERROR, EXIT_FALSE, EXIT_OK, _parse_args, main, run
from arthom.models import Caps, CommandRequest


def test_check_almost_precluster(fixture_files, capsys):
    """Test 1: M over C3 is almost 2-precluster tilting"""
    code = main(["check", fixture_files["c3"], "--module", "M", "--property", "almost-precluster", "--n", "2"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("verdict: true")
    print("✅ Test passed: check almost-precluster")


def test_check_false_verdict(fixture_files, capsys):
    """Test 2: a false verdict exits 1"""
    code = main(["check", fixture_files["c3"], "--module", "M", "--property", "precluster", "--n", "2", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == EXIT_FALSE
    assert data["verdict"] is False
    print("✅ Test passed: check precluster")


def test_relative_domdim(fixture_files, capsys):
    """Test 3: I-domdim of G is 2"""
    code = main(["domdim", fixture_files["g"], "--relative", "I"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.strip().endswith("= 2")
    main(["domdim", fixture_files["g"], "--relative", "I", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == 2 and data["infinite"] is False
    print("✅ Test passed: Relative dominant dimension")


def test_resolve_and_ext(fixture_files, capsys):
    """Test 4: resolutions and Ext tables over A2"""
    assert main(["resolve", fixture_files["a2"], "--module", "S(1)", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["terms"] == [[1, 1], [0, 1]]
    assert data["dimension"]["value"] == 1
    assert data["verified"] is True
    assert main(["ext", fixture_files["a2"], "--from", "S(1)", "--to", "S(2)", "--max", "2", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["ext"] == [0, 1, 0]
    print("✅ Test passed: resolve and ext")


def test_tau_and_coresolve(fixture_files, capsys):
    """Test 5: τ₂⁻S(1) is 1 over 2 and M-codim A = 1"""
    assert main(["tau", fixture_files["c3"], "--module", "S(1)", "--kind", "tau_n-", "--n", "2", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["dims"] == [1, 1, 0]
    assert main(["coresolve", fixture_files["c3"], "--over", "M", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["codim"]["value"] == 1
    print("✅ Test passed: tau and coresolve")


def test_endo_and_classify(fixture_files, tmp_path, capsys):
    """Test 6: End M is written out and classified"""
    out_path = tmp_path / "end_m.alg"
    assert main(["endo", fixture_files["c3"], "--module", "M", "--out", str(out_path)]) == EXIT_OK
    capsys.readouterr()
    assert out_path.exists()
    code = main(["classify", str(out_path), "--n", "2", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert data["findings"]["id_left"]["value"] == 3
    print("✅ Test passed: endo and classify")


def test_relhom(fixture_files, capsys):
    """Test 7: relative dimensions for F^M"""
    code = main(["relhom", fixture_files["c3"], "--f", "upper", "--m", "M", "--module", "A", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert data["functor"] == "F^M"
    assert data["id_F"]["value"] == 1
    print("✅ Test passed: relhom")


def test_verify(capsys):
    """Test 8: named fixture scenarios"""
    assert main(["verify", "relative-domdim", "translate-closure"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "fixture relative-domdim: ok" in out
    assert main(["verify", "no-such-scenario"]) == EXIT_ERROR
    print("✅ Test passed: verify")


def test_errors(fixture_files, tmp_path, capsys):
    """Test 9: parse errors, unknown modules and bad caps exit 2"""
    bad = tmp_path / "bad.alg"
    bad.write_text("field Q\nvertices 1 2\narrow a : 1 -> 3\n", encoding="utf-8")
    assert main(["domdim", str(bad)]) == EXIT_ERROR
    assert "line 3" in capsys.readouterr().err
    assert main(["tau", fixture_files["c3"], "--module", "Q(9)"]) == EXIT_ERROR
    assert main(["domdim", fixture_files["a2"], "--cap-resolution", "0"]) == EXIT_ERROR
    assert main(["domdim", str(tmp_path / "missing.alg")]) == EXIT_ERROR
    with pytest.raises(SystemExit):
        main(["check", fixture_files["c3"], "--module", "M", "--property", "tilting"])
    print("✅ Test passed: Error exits")


def test_sweep(capsys):
    """Test 10: small Nakayama sweep has no counterexamples"""
    code = main(["sweep", "--n", "1", "--max-vertices", "2", "--max-loewy", "2", "--max-extra", "1", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert data["counterexamples"] == 0
    args = _parse_args(["sweep"])
    assert (args.max_vertices, args.max_loewy, args.max_extra) == (4, 5, 2)
    print("✅ Test passed: sweep")


def test_condition(fixture_files, capsys):
    """Test 11: the (m+1, n+1)-condition over the hereditary A2"""
    assert main(["condition", fixture_files["a2"], "--m", "0", "--n", "0"]) == EXIT_OK
    assert "(1,1)-condition (left): holds" in capsys.readouterr().out
    assert main(["condition", fixture_files["a2"], "--m", "0", "--n", "1", "--json"]) == EXIT_FALSE
    assert json.loads(capsys.readouterr().out)["holds"] is False
    assert main(["condition", fixture_files["a2"], "--m", "1", "--n", "1"]) == EXIT_OK
    print("✅ Test passed: condition")


def test_run_request(fixture_files, capsys):
    """Test 12: CommandRequest drives the same subcommands"""
    req = CommandRequest(subcommand="domdim", input_path=fixture_files["g"], modules={"relative": "I"}, output_format="json")
    assert run(req) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["value"] == 2

    req = CommandRequest(
        subcommand="tau",
        input_path=fixture_files["c3"],
        modules={"module": "S(1)"},
        n=2,
        options={"kind": "tau_n-"},
        caps=Caps(resolution=8),
        output_format="json",
    )
    assert run(req) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["dims"] == [1, 1, 0]

    assert run(CommandRequest(subcommand="verify", options={"names": ["translate-closure"]})) == EXIT_OK
    capsys.readouterr()

    bad_choice = CommandRequest(subcommand="check", input_path=fixture_files["c3"], modules={"module": "M"}, options={"property": "tilting"})
    assert run(bad_choice) == EXIT_ERROR
    clash = CommandRequest(subcommand="relhom", input_path=fixture_files["c3"], modules={"m": "M", "module": "A"}, m=1)
    assert run(clash) == EXIT_ERROR
    print("✅ Test passed: run")


def test_verify_citation_names(capsys):
    """Test 13: scenarios run under their citation-style names"""
    code = main(["verify", "remark-3.2", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert data["name"] == "remark-3.2"
    assert [a["label"] for a in data["assertions"]] == ["pd I", "I-domdim", "pd I(1)", "I(1) in add I"]
    assert all(a["ok"] for a in data["assertions"])
    assert main(["verify", "remark-4.4", "prop-4.6"]) == EXIT_OK
    assert "fixture remark-4.4: ok" in capsys.readouterr().out
    print("✅ Test passed: verify remark-3.2")
