import json
import shutil
import subprocess

import pytest

from zlkb.cli import main, parse_object
from zlkb.homotopy import is_isomorphic
from zlkb.stability import stable_tau0


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_act_examples(capsys):
    code, out, _ = run(capsys, "act", "--n", "3", "--word", "s1^-1", "--object", "P(1)")
    assert code == 0 and out.strip() == "1:[P1<-2>]"
    assert run(capsys, "act", "--word", "", "--object", "P(2)")[1].strip() == "0:[P2<0>]"
    assert run(capsys, "act", "--word", "s1,s1^-1", "--object", "P(2)")[1].strip() == "0:[P2<0>]"


def test_act_json(capsys):
    code, out, _ = run(capsys, "act", "--word", "s1", "--object", "P(2)", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["word"] == "s1"
    assert [d["k"] for d in data["complex"]["degrees"]] == [-1, 0]


@pytest.mark.parametrize("argv", [
    ["act", "--object", "P(1,"],
    ["act", "--object", "Q(1)"],
    ["act", "--word", "s9", "--object", "P(1)"],
    ["act", "--object", "shift(P(1), 1)"],
    ["matrix", "--rep", "nonsense"],
    ["verify", "--suite", "homgamma", "--n", "1"],
    ["hn", "--object", "P(1)", "--charge-file", "/nonexistent.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_parse_error_names_the_position(capsys):
    _, _, err = run(capsys, "act", "--object", "sum(P(1), R(2))")
    assert "position 10" in err


def test_object_language():
    x = parse_object("cone(P(1), P(2), 0, -1)", 2)
    assert is_isomorphic(x, stable_tau0(2, 1, 3).shift(0, -1))
    assert parse_object("Pk(1, 1, 2)", 2).summand_count() >= 1
    assert parse_object("act(s1, s2^-1, P(2))", 2) == parse_object("act(s1, act(s2^-1, P(2)))", 2)
    assert parse_object("sum(P(1), P(2), P(1,3))", 2).summand_count() == 4


def test_matrix_examples(capsys):
    code, out, _ = run(capsys, "matrix", "--rep", "ptau", "--word", "garside^-1", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["target_basis"].startswith("tau0")
    assert data["matrix"][2][0] == "q^-4*t^3"
    code, out, _ = run(capsys, "matrix", "--rep", "lkb", "--word", "s1", "--n", "2", "--format", "json")
    assert json.loads(out)["matrix"][0][0] == "-1*x^2*y"
    code, out, _ = run(capsys, "matrix", "--rep", "m0", "--n", "3")
    assert code == 0 and "-1*x^-1 + 1" in out
    for rep in ("perm", "burau", "mk"):
        assert run(capsys, "matrix", "--rep", rep, "--word", "s1", "--n", "2")[0] == 0


def test_hn_examples(capsys):
    code, out, _ = run(capsys, "hn", "--object", "P(1,3)", "--format", "json")
    assert code == 0 and [f["stable"] for f in json.loads(out)["factors"]] == [[1, 3]]
    code, out, _ = run(capsys, "hn", "--object", "sum(P(1,2), shift(P(2,3),1,0))", "--format", "json")
    assert len(json.loads(out)["factors"]) == 2
    code, out, _ = run(capsys, "hn", "--object", "act(s2, P(1,2))", "--format", "json")
    got = sorted((tuple(f["stable"]), f["k"], f["l"]) for f in json.loads(out)["factors"])
    assert got == [((1, 2), 0, 0), ((2, 3), -1, 1)]


def test_verify_pass_and_fail_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "homgamma", "--n", "3")
    assert code == 0 and "PASS homgamma n=3" in out and "anchor:" in out
    code, out, _ = run(capsys, "verify", "--suite", "perm", "--n", "2")
    assert code == 1 and "FAIL nine-case k=1 P(1, 3)" in out


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--suite", "identification", "--n", "2", "--random", "8", "--seed", "7"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


def test_charge_file_option(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps([[-1, 1], [1, 1]]))
    code, out, _ = run(capsys, "hn", "--object", "P(1,3)", "--charge-file", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["mass"] == {"(1, 3)": 1}


@pytest.mark.skipif(shutil.which("zlkb") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["zlkb", "verify", "--suite", "mgamma", "--n", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "2/2 passed" in res.stdout
