import json

import pytest

from cqplane.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "y[m]*x[l]")
    assert code == 0 and out.strip() == "q^(-1+l+m)*x[l]*y[m]"


def test_normalize_json(capsys):
    code, out, _ = run(capsys, "normalize", "xi[l]*xi[m]", "--format", "json")
    assert code == 0 and json.loads(out)["text"] == "0"


def test_normalize_errors(capsys):
    assert run(capsys, "normalize", "dx[m]*a[l]")[0] == 2
    assert run(capsys, "normalize", "x[z]")[0] == 2
    code, _, err = run(capsys, "normalize", "x[l] +")
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "normalize", "a[l]", "--sector", "plane")[0] == 2


def test_colour_declaration(capsys, monkeypatch):
    assert run(capsys, "normalize", "x[z]", "--colours", "z")[0] == 0
    monkeypatch.setenv("CQPLANE_COLOURS", "z,w")
    assert run(capsys, "normalize", "y[w]*x[z]")[0] == 0


def test_check_smoke(capsys):
    code, out, _ = run(capsys, "check", "smoke", "--no-timing")
    assert code == 0
    assert out.splitlines() == ["PASS  ybe", "PASS  rtt", "PASS  coeff_limits"]


def test_check_list_and_missing(capsys):
    code, out, _ = run(capsys, "check", "--list")
    assert code == 0 and "paper-full" in out
    assert run(capsys, "check", "no-such-suite")[0] == 2
    assert run(capsys, "check")[0] == 2


def test_check_suite_file_json(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"checks": [{"check": "ybe", "params": {"perturb": [2, 3]}}]}))
    code, out, _ = run(capsys, "check", str(path), "--format", "json")
    assert code == 1
    assert json.loads(out)[0]["status"] == "fail"
    path.write_text(json.dumps({"checks": []}))
    code, out, _ = run(capsys, "check", str(path), "--format", "json")
    assert code == 0 and json.loads(out) == []


def test_matrix(capsys):
    code, out, _ = run(capsys, "matrix", "R", "--colours", "l,m")
    assert code == 0 and "q^(1-l+m)" in out
    code, out, _ = run(capsys, "matrix", "D", "--format", "latex")
    assert code == 0 and "\\lambda" in out
    with pytest.raises(SystemExit):
        main(["matrix", "Q"])


def test_d(capsys):
    code, out, _ = run(capsys, "d", "x[l]*y[l]")
    assert code == 0 and "xi[l]" in out
    assert run(capsys, "d", "a[l]")[0] == 2
    code, out, _ = run(capsys, "d", "x[l]", "--colour", "l")
    assert code == 0 and out.strip() == "xi[l]"
    assert run(capsys, "d", "x[l]", "--colour", "z")[0] == 2


def test_contract(capsys):
    code, out, _ = run(capsys, "contract")
    assert code == 0 and out.startswith("sigma: -1")
    code, out, _ = run(capsys, "contract", "--sign", "-", "--format", "json")
    assert code == 0 and json.loads(out)["sigma"] == 1


def test_rules_and_overlaps(capsys):
    code, out, _ = run(capsys, "rules")
    assert code == 0 and "plane.yx" in out
    code, out, _ = run(capsys, "overlaps", "plane")
    assert code == 0 and out.strip() == "0 unresolved overlaps"
    code, out, _ = run(capsys, "overlaps", "calculus", "--colours", "l,m")
    assert code == 1 and out.strip().endswith("58 unresolved overlaps")


def test_bad_rules_file(capsys, tmp_path):
    assert run(capsys, "rules", "--rules", str(tmp_path / "nope.json"))[0] == 2
    (tmp_path / "bad.json").write_text("{")
    assert run(capsys, "normalize", "x[l]", "--rules", str(tmp_path / "bad.json"))[0] == 2
