import json
import subprocess
import sys

import pytest

from heytingkit.cli import parse_omega, run
from heytingkit.morphisms import cc_punctured, posetmap_to_json
from heytingkit.omega import cof, fin, star_normalize


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_excluded_middle_fails_in_o2(capsys):
    code, out, _ = call(capsys, "check", "--algebra", "on:2", "p0 | ~p0")
    assert code == 1
    assert "counterexample" in out and "p0 ->" in out


def test_check_valid(capsys):
    code, out, _ = call(capsys, "check", "--algebra", "on:2", "~p0 | ~~p0")
    assert code == 0 and out.startswith("valid")


def test_prove_wem(capsys):
    code, out, _ = call(capsys, "prove", "~p0 | ~~p0")
    assert code == 1
    assert "worlds: 3" in out


def test_prove_theorem(capsys):
    code, out, _ = call(capsys, "prove", "p0 -> p0")
    assert code == 0 and out.startswith("theorem")


def test_cone_punctured(capsys):
    code, out, _ = call(capsys, "cone", "punctured", "2", "--verify")
    assert code == 0
    assert "{0,2} -> {1}" in out and "verified: yes" in out


def test_cone_power(capsys):
    code, out, _ = call(capsys, "cone", "power", "diamond")
    assert code == 0 and "m = 6" in out


def test_cone_verify_file(tmp_path, capsys):
    path = tmp_path / "map.json"
    path.write_text(posetmap_to_json(cc_punctured(1)))
    assert call(capsys, "cone", "verify", str(path))[0] == 0
    bad = json.loads(path.read_text())
    bad["map"] = [0, 0, 0]
    path.write_text(json.dumps(bad))
    code, out, _ = call(capsys, "cone", "verify", str(path))
    assert code == 1 and "not surjective" in out


def test_family(capsys):
    assert call(capsys, "family", "~p0 | ~~p0", "--max-n", "3")[0] == 0
    code, out, _ = call(capsys, "family", "~p0 | ~~p0", "--family", "O_n_minus_intervals", "--max-n", "2")
    assert code == 1 and "counterexample" in out


def test_positivize(capsys):
    code, out, _ = call(capsys, "positivize", "~p0")
    assert code == 0 and out.strip() == "p0 -> p0 & p1"


def test_represent(capsys):
    code, out, _ = call(capsys, "represent", "--algebra", "fork")
    assert code == 0 and "3 prime filters" in out and "verified: yes" in out


def test_quotient(capsys):
    code, out, _ = call(capsys, "quotient", "--algebra", "chain:3", "--filter", "m")
    assert code == 0 and "2 classes" in out


def test_omega(capsys):
    code, out, _ = call(capsys, "omega", "impl", "fin{0}", "fin{}")
    assert code == 0 and out.strip() == "{cof{0}}*"
    code, out, _ = call(capsys, "--json", "omega", "meet", "fin{0}", "fin{1}")
    assert json.loads(out) == star_normalize([fin()]).to_dict()
    assert call(capsys, "omega", "theoremk")[0] == 0
    assert call(capsys, "omega", "join", "fin{0}")[0] == 2


def test_parse_omega():
    assert parse_omega("fin{0,1} cof{2}") == star_normalize([fin([0, 1]), cof([2])])
    assert parse_omega("bot") == star_normalize([])
    assert parse_omega('{"generators": [{"kind": "cofinite", "support": []}]}') == star_normalize([cof()])


def test_dot(capsys):
    code, out, _ = call(capsys, "dot", "--poset", "fork")
    assert code == 0 and out.startswith("digraph")
    assert call(capsys, "dot", "--algebra", "chain:3")[0] == 0


def test_json_output(capsys):
    code, out, _ = call(capsys, "check", "--json", "--algebra", "chain:3", "p0 | ~p0")
    assert code == 1
    assert json.loads(out) == {
        "algebra": "chain3", "formula": "p0 | ~p0", "valid": False, "counter": {"p0": "m"}, "value": "m",
    }


@pytest.mark.parametrize("argv", [
    ["check", "--algebra", "on:2", "p0 |"],
    ["check", "--algebra", "nope:2", "p0"],
    ["cone", "verify", "/nonexistent/map.json"],
    ["quotient", "--algebra", "chain:3", "--filter", "0"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_resource_guard(capsys):
    code, _, err = call(capsys, "check", "--algebra", "on:9", "p0")
    assert code == 3 and "resource" in err


def test_suite_subset(capsys):
    code, out, _ = call(capsys, "suite", "acceptance", "--only", "4,10")
    assert code == 0
    assert "[PASS] criterion  4" in out and "[PASS] criterion 10" in out


def test_deterministic_output():
    cmd = [sys.executable, "-m", "heytingkit.cli", "prove", "(p0 -> p1) | (p1 -> p0)"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 1 and a.stdout == b.stdout and a.stdout
