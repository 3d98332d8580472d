import json
import subprocess
import sys

import pytest

from braidcong.cli import main
from braidcong.suites import SUITES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_eval(capsys):
    code, out = run(capsys, "eval", "--n", "3", "--word", "1,1,1")
    assert code == 0 and out["matrix"] == [[1, 3], [0, 1]] and out["schema"] == 1
    code, out = run(capsys, "eval", "--n", "3", "--word", "")
    assert code == 0 and out["identity"]
    code, out = run(capsys, "eval", "--n", "5", "--word", "1 2 1 -2 -1 -2")
    assert out["identity"]
    code, out = run(capsys, "eval", "--n", "3", "--m", "5", "--word", "1 1 1 1 1 1 1")
    assert out["matrix"] == [[1, 2], [0, 1]]
    code, out = run(capsys, "eval", "--word", "n=4; 1 3")
    assert code == 0 and out["n"] == 4


def test_eval_errors(capsys):
    assert main(["eval", "--n", "3", "--word", "1 x"]) == 2
    assert main(["eval", "--n", "3", "--word", "3"]) == 2
    assert main(["eval", "--n", "3"]) == 2
    assert main(["eval", "--word", "1"]) == 2
    assert main(["eval", "--n", "3", "--word-file", "/nonexistent/file"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_member(capsys, tmp_path):
    assert run(capsys, "member", "--n", "3", "--m", "3", "--word", "1 1 1")[0] == 0
    code, out = run(capsys, "member", "--n", "3", "--m", "3", "--word", "1")
    assert code == 1 and out["member"] is False
    f = tmp_path / "w.txt"
    f.write_text("n=3; " + "1 2 " * 6)
    assert run(capsys, "member", "--m", "97", "--word-file", str(f))[0] == 0
    assert main(["member", "--n", "3", "--word", "1"]) == 2
    assert main(["member", "--n", "3", "--m", "1", "--word", "1"]) == 2


def test_verify(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out = run(capsys, "verify", "acampo", "--n", "3", "--p", "3", "--out", str(out_file))
    assert code == 0
    assert out["cases"][0]["actual"] == 24
    assert json.loads(out_file.read_text()) == out
    code, out = run(capsys, "verify", "b33")
    assert code == 0 and all(c["status"] == "pass" for c in out["cases"])
    code, _ = run(capsys, "verify", "symmetric-quotient", "--n", "3", "--p", "3", "--samples", "200")
    assert code == 0
    assert main(["verify", "nosuch"]) == 2
    assert main(["verify", "wajnryb", "--p", "4"]) == 2
    capsys.readouterr()


def test_verify_failure_exit_code(capsys, monkeypatch):
    from braidcong import suites
    from braidcong.report import Report

    def bad(cfg):
        r = Report("x")
        r.check("always", 1, 2)
        return r

    monkeypatch.setitem(suites.SUITES, "chain", bad)
    code, out = run(capsys, "verify", "chain")
    assert code == 1 and out["cases"][0]["status"] == "fail"


def test_reports_byte_stable(capsys):
    main(["verify", "symmetric-quotient", "--n", "3", "--p", "3", "--samples", "100", "--seed", "5"])
    a = capsys.readouterr().out
    main(["verify", "symmetric-quotient", "--n", "3", "--p", "3", "--samples", "100", "--seed", "5"])
    b = capsys.readouterr().out
    assert a == b
    names = [c["name"] for c in json.loads(a)["cases"]]
    assert names == sorted(names)


def test_enum(capsys):
    code, out = run(capsys, "enum", "--rep", "n=3", "--mod", "3")
    assert code == 0 and out["order"] == 24 and out["schema"] == 1
    code, out = run(capsys, "enum", "--rep", "n=4", "--mod", "3")
    assert out["order"] == 648
    # pure braids are trivial mod 2, so the image is SL_2(F_3): elements of order 4 and 6
    code, out = run(capsys, "enum", "--pure", "n=3", "--m", "6", "--exponent")
    assert out["order"] == 24 and out["exponent"] == 12
    code, out = run(capsys, "enum", "--rep", "n=5", "--mod", "3", "--limit", "100")
    assert code == 1 and out["limit_hit"]
    code, out = run(capsys, "enum", "--rep", "n=5", "--mod", "3", "--limit", "100", "--allow-partial")
    assert code == 0 and out["limit_hit"] and out["order"] == 100
    assert main(["enum", "--rep", "n=3"]) == 2
    assert main(["enum", "--rep", "k=3", "--mod", "3"]) == 2
    assert main(["enum", "--mod", "3"]) == 2
    capsys.readouterr()


def test_cosets(capsys, tmp_path):
    code, out = run(capsys, "cosets", "presentation_G(3,3)")
    assert code == 0 and out["index"] == 24 and out["valid"]
    assert run(capsys, "cosets", "S(4)")[1]["index"] == 24
    assert run(capsys, "cosets", "H(3,3)")[1]["index"] == 24
    f = tmp_path / "p.txt"
    f.write_text("gens: 2\n1 1\n2 2\n1 2 1 2 1 2\n")
    assert run(capsys, "cosets", str(f))[1]["index"] == 6
    code, out = run(capsys, "cosets", "S(5)", "--limit", "10")
    assert code == 1 and out["status"] == "limit-exceeded"
    assert run(capsys, "cosets", "S(5)", "--limit", "10", "--allow-partial")[0] == 0
    assert main(["cosets", "nofile"]) == 2
    assert main(["cosets", "G(3)"]) == 2
    capsys.readouterr()


def test_all_suites_registered():
    expected = {"braid-relators", "wajnryb", "sypre", "cor54", "b33", "lemma42", "lemma43", "chain",
                "acampo", "theorem-b", "newman-smart", "prop34", "lemma32", "cp-kernel",
                "symmetric-quotient"}
    assert expected <= set(SUITES)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "braidcong.cli", "member", "--n", "3", "--m", "3", "--word", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 1 and json.loads(r.stdout)["member"] is False


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes(suite, capsys):
    code, out = run(capsys, "verify", suite)
    assert code == 0, [c for c in out["cases"] if c["status"] == "fail"]
