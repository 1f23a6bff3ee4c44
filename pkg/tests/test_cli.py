import json
import subprocess
import sys
from pathlib import Path

import pytest

from eigenkummer.cli import UsageError, dumps, main, parse_descriptor, parse_laurent, run
from eigenkummer.fields import FiniteField

DESCRIPTORS = Path(__file__).resolve().parent.parent / "descriptors"


def _run(*argv):
    report, code, err = run(list(argv))
    return report, code, err


def _check(report, name):
    return next(c for c in report["checks"] if c["name"] == name)


def test_report_shape():
    report, code, _ = _run("tower", "--q", "7", "--p", "3", "--n", "2")
    assert code == 0
    assert set(report) == {"schema_version", "command", "inputs", "outputs", "checks"}
    assert report["schema_version"] == 1 and report["command"] == "tower"
    for c in report["checks"]:
        assert set(c) == {"name", "pass", "details"}


def test_tower_outputs():
    report, code, _ = _run("tower", "--q", "2", "--p", "3", "--n", "2")
    assert code == 0
    out = report["outputs"]
    assert out["tower"]["deg_ML"] == 3 and out["tower"]["s"] == 2


def test_cohom_matches_cochains():
    report, code, _ = _run("cohom", "--N", "3", "--module", "9", "--action", "1")
    assert code == 0
    assert report["outputs"]["H1"]["invariants"] == [3]
    assert report["outputs"]["H2"]["invariants"] == [3]
    assert _check(report, "H1_matches_cochains")["pass"]


def test_eigen_rank_two():
    report, code, _ = _run("eigen", "--p", "5", "--n", "1", "--s", "4", "--parts", "1,1", "--action", "2,0;0,4")
    assert code == 0
    orders = {c["gamma"]: c["order"] for c in report["outputs"]["components"]}
    assert orders == {1: 1, 2: 5, 3: 1, 4: 5}


def test_symbol_relabel():
    report, code, _ = _run("symbol", "--field", "Q(zeta_3)", "--m", "3", "--a", "2", "--b", "3", "--relabel", "2")
    assert code == 0
    assert report["outputs"]["relabel"][0]["target_a"] == ["4", "0"]
    report, code, _ = _run("symbol", "--field", "GF(7)", "--m", "3", "--a", "3", "--b", "2")
    assert code == 0 and len(report["outputs"]["relabel"]) == 2


@pytest.mark.parametrize("name", ["ex42.txt", "kummer_f4.txt", "mixed_v1.txt", "mixed_v2.txt"])
def test_descriptor_files(name):
    report, code, err = _run("valuation", "--descriptor", str(DESCRIPTORS / name))
    assert code == 0, err
    assert all(c["pass"] for c in report["checks"])


def test_ex42_descriptor_value_group():
    report, _, _ = _run("valuation", "--descriptor", str(DESCRIPTORS / "ex42.txt"))
    div = report["outputs"]["symbol"]
    assert div["classification"] == "Type1"
    assert div["value_group"]["generators"] == [["1/3", "0"], ["0", "1/3"]]
    assert div["index_over_integers"] == 9


def test_failed_expectation_exits_one(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("residue = 4\nrank = 2\np = 3\nc = x1\nexpect_case = III\n")
    report, code, _ = _run("valuation", "--descriptor", str(f))
    assert code == 1
    assert report["outputs"]["kummer_case"]["case"] == "I"


@pytest.mark.parametrize("argv", [
    ["tower", "--q", "9", "--p", "3", "--n", "1"],
    ["tower", "--q", "7", "--p", "3"],
    ["eigen", "--p", "5", "--n", "1", "--s", "3", "--parts", "1", "--action", "1"],
    ["symbol", "--field", "R", "--m", "2", "--a", "1", "--b", "1"],
    ["nonsense"],
])
def test_invalid_input_exits_two(argv):
    report, code, err = _run(*argv)
    assert report is None and code == 2 and err


def test_main_prints_error(capsys):
    assert main(["tower", "--q", "9", "--p", "3", "--n", "1"]) == 2
    assert capsys.readouterr().err.startswith("eigenkummer: error:")


@pytest.mark.parametrize("check,extra", [
    ("lemma19", ["--group", "D8", "--e", "2"]),
    ("prop14", ["--group", "S3", "--p", "3", "--s", "2"]),
    ("prop11", ["--group", "Heisenberg27", "--p", "3"]),
    ("brute", ["--group", "V4", "--module", "2", "--action", "1"]),
])
def test_oracle_commands(check, extra):
    report, code, err = _run("oracle", check, *extra)
    assert code == 0, err


def test_sweep_command():
    report, code, _ = _run("sweep", "--suite", "mixedex")
    assert code == 0
    suite = report["outputs"]["suites"][0]
    assert suite["failures"] == 0 and suite["failed_rows"] == []
    assert "seconds" not in suite


def test_parse_descriptor_and_laurent():
    cfg = parse_descriptor("residue = 4  # comment\n\nrank=2\np = 3\n")
    assert cfg == {"residue": "4", "rank": "2", "p": "3"}
    with pytest.raises(UsageError):
        parse_descriptor("residue = 4\n")
    F4 = FiniteField(2, 2)
    e = parse_laurent("g^2*x1^3*x2^-1 + 3*x2", F4, 2)
    assert set(e.terms) == {(3, -1), (0, 1)}


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "eigenkummer", "symbol", "--field", "GF(16)", "--m", "5",
            "--a", "0,1", "--b", "1,1", "--dump"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
    json.loads(a)


def test_dumps_sorts_keys():
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')
