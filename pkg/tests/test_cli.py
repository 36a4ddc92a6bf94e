import json

import pytest

from kneadlab.cli import main

from conftest import EXAMPLE_TEXT


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_planar_example(capsys):
    code, out, _ = run(capsys, "check", "0(011)")
    d = json.loads(out)
    assert code == 0 and d["kneading"] and d["planar"] and not d["bad_isotropy"]


def test_admissible_with_weights(capsys):
    code, out, _ = run(capsys, "admissible", "0(011)", "--weights", "a=7,b=7,c=6,t=3")
    d = json.loads(out)
    assert code == 0 and d["admissible"] is True and len(d["table"]) == 32


def test_admissible_reports_violation(capsys):
    code, out, _ = run(capsys, "admissible", "01(10)", "--format", "text")
    assert code == 0 and "admissible: False (violated at" in out


def test_verify_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "0110")
    assert code == 0 and json.loads(out)["passed"]
    monkeypatch.setenv("KNEADLAB_CAP_STEPS", "3")
    code, _, _ = run(capsys, "verify", "0110")
    assert code == 3


def test_parse_from_sequence_and_file(capsys, tmp_path):
    _, from_seq, _ = run(capsys, "parse", "11(0)")
    path = tmp_path / "ex.txt"
    path.write_text(EXAMPLE_TEXT)
    _, from_file, _ = run(capsys, "parse", "--automaton", str(path))
    key = lambda d: (d["state"], d["input"])
    # states are listed in file order, so compare the transition sets
    assert sorted(json.loads(from_seq)["transitions"], key=key) == sorted(json.loads(from_file)["transitions"], key=key)


def test_growth_csv_to_file(capsys, tmp_path):
    out = tmp_path / "g.csv"
    code, _, _ = run(capsys, "growth", "11(0)", "--radius", "3", "--format", "csv", "--out", str(out))
    assert code == 0
    assert out.read_text().splitlines()[-1].startswith("3,12,22,")


def test_growth_budget_exit(capsys):
    code, out, err = run(capsys, "growth", "11(0)", "--radius", "40", "--max-elements", "50")
    assert code == 3 and json.loads(out)["partial"] and "budget" in err


def test_good_certificate(capsys):
    code, out, _ = run(capsys, "good", "11(0)", "--word", "tabat")
    d = json.loads(out)
    assert code == 0 and d["good"] and d["valid"] and d["certificate"]["depth"] == 1


def test_badwords_default_families(capsys):
    code, out, _ = run(capsys, "badwords", "1(000)", "--weights", "standard", "--max-blocks", "6")
    d = json.loads(out)
    assert code == 0 and set(d["counts"].values()) == {1}


def test_badwords_word_file(capsys, tmp_path):
    path = tmp_path / "u.txt"
    path.write_text("# forbidden\ntat\ntbt\n")
    code, out, _ = run(capsys, "badwords", "11(0)", "--words", str(path), "--max-blocks", "2")
    assert code == 0 and json.loads(out)["counts"] == {"1": 5, "2": 25}


@pytest.mark.parametrize("argv", [
    [],
    ["parse"],
    ["parse", "11(0)", "--automaton", "x.txt"],
    ["frobnicate"],
    ["parse", "1("],
    ["admissible", "0(011)", "--weights", "a=0.5,b=7,c=6,t=3"],
    ["growth", "11(0)", "--radius", "-1"],
    ["growth", "11(0)", "--radius", "2", "--cap", "0"],
    ["check", "11(0)", "--format", "csv"],
    ["parse", "--automaton", "/nonexistent/file"],
    ["badwords", "01(10)"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("kneadlab: error")


def test_json_is_deterministic(capsys):
    first = run(capsys, "verify", "10k", "--k", "3")[1]
    second = run(capsys, "verify", "10k", "--k", "3")[1]
    assert first == second and json.loads(first)["schema"] == 1
