import json

import pytest

from edrlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--ring", "Zmod:6")
    assert code == 0
    rep = json.loads(out)
    assert rep["ring"] == "Zmod:6" and rep["flags"]["edr"] is True


def test_classify_strict_unknown(capsys):
    code, _, _ = run(capsys, "classify", "--ring", "Zmod:6", "--strict-unknown")
    assert code == 3  # WH3 flags exceed the budget
    code, _, _ = run(capsys, "classify", "--ring", "Zmod:6", "--flags", "bezout,u2", "--strict-unknown")
    assert code == 0


def test_classify_csv_batch(capsys, tmp_path):
    f = tmp_path / "rings.csv"
    f.write_text("ring\nZmod:6\nTable:f2xy_square_zero.json\n")
    code, out, _ = run(capsys, "classify", "--rings-file", str(f), "--flags", "bezout,hermite", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["ring,bezout,hermite", "Zmod:6,True,True",
                                "Table:f2xy_square_zero.json,False,False"]


def test_matrix_check(capsys):
    code, out, _ = run(capsys, "matrix", "check", "--ring", "Zmod:6", "--mat", "[[2,1],[0,3]]")
    assert code == 0
    rec = json.loads(out)
    assert rec["flags"]["simply_extendable"] and rec["witnesses"]["non_full_mod_det"] == ["1", "3", "2", "1"]
    code, _, err = run(capsys, "matrix", "check", "--ring", "Zmod:6", "--mat", "[[2,0],[0,2]]")
    assert code == 2 and "unimodular" in err


def test_upsilon(capsys):
    code, out, _ = run(capsys, "upsilon", "--ring", "Zmod:6", "--a", "3", "--b", "4", "--c", "3")
    assert code == 0 and json.loads(out)["image"] == ["1", "2"]


def test_snf(capsys):
    code, out, _ = run(capsys, "snf", "--base", "Z", "--mat", "[[2,4],[6,8]]")
    assert code == 0 and json.loads(out)["diagonal"] == ["2", "4"]
    code, out, _ = run(capsys, "snf", "--base", "F_3", "--mat", "[[x^2+1,x],[x,1]]")
    assert code == 0 and json.loads(out)["base"] == "F3[x]"


def test_witness_commands(capsys):
    code, out, _ = run(capsys, "cr3", "--a", "3", "--b", "5", "--s", "2")
    assert code == 0 and json.loads(out)["witness"]["e"] == 2
    code, out, _ = run(capsys, "eq4", "--a", "1", "--u", "1", "--t", "1")
    assert code == 0 and json.loads(out)["status"] == "FOUND"


def test_verify_and_output_file(capsys, tmp_path):
    dest = tmp_path / "verdicts.json"
    code, _, _ = run(capsys, "verify", "--corpus", "Zmod:6,GF:4", "--theorems", "TH1,EX10", "--out", str(dest))
    assert code == 0
    rep = json.loads(dest.read_text())
    assert rep["summary"]["COUNTEREXAMPLE"] == 0 and len(rep["cases"]) == 4
    code, out, _ = run(capsys, "verify", "--corpus", "Zmod:6", "--theorems", "TH1", "--format", "pretty")
    assert "VERIFIED" in out


def test_hunt(capsys):
    code, out, _ = run(capsys, "hunt", "¬bezout")
    assert code == 0 and json.loads(out)["hit"]["ring"] == "Table:f2xy_square_zero.json"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["classify"],
    ["verify", "--theorems", "TH42"],
    ["classify", "--ring", "Zmod:6", "--threads", "0"],
    ["upsilon", "--ring", "Zmod:", "--a", "1", "--b", "1", "--c", "1"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_identical_output_across_threads(capsys):
    argv = ["verify", "--corpus", "Zmod:6,Zmod:8,GF:4", "--theorems", "all"]
    _, a, _ = run(capsys, *argv, "--threads", "1")
    _, b, _ = run(capsys, *argv, "--threads", "2")
    assert a == b
