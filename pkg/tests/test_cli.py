import json
import subprocess
import sys

import pytest

from piso_lab import __version__
from piso_lab.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def report(argv, capsys):
    code, out, _ = run(argv, capsys)
    return code, json.loads(out)


def test_lcm_command(capsys):
    code, doc = report(["lcm", "--semigroup", "Free:n=2,len=3", "--x", "b", "--y", "ab"], capsys)
    assert code == 0
    assert doc["result"] == {"x": "b", "y": "ab", "left_lcm": "ab", "right_lcm": None}
    assert doc["tool"] == "piso-lab" and doc["version"] == __version__
    assert doc["config"]["semigroup"] == "Free:n=2,len=3"


def test_sigma_command(capsys):
    code, doc = report(["sigma", "--semigroup", "Nk:k=2,max=3", "--set", "(1,0);(0,1)"], capsys)
    assert code == 0 and doc["result"]["sigma"] == "(1,1)"


def test_check_passes(capsys):
    code, doc = report(["check", "--semigroup", "Nk:k=2,max=4", "--rep", "canonical_W", "--checks", "right_nica"], capsys)
    assert code == 0
    assert doc["result"]["reports"][0]["status"] == "pass"


def test_check_fails_with_witness(capsys):
    code, doc = report(["check", "--semigroup", "Free:n=2,len=3", "--rep", "degenerate_free",
                        "--checks", "right_nica"], capsys)
    assert code == 1
    assert doc["result"]["reports"][0]["witnesses"][0]["elements"] == ["a", "b"]


@pytest.mark.parametrize("argv", [
    ["check", "--semigroup", "Nk:k=1,max=banana"],
    ["check", "--semigroup", "Nk:k=1,max=3", "--checks", "bogus"],
    ["check", "--semigroup", "Nk:k=1,max=3", "--rep", "degenerate_free"],
    ["check", "--semigroup", "Nk:k=1,max=3", "--rep", "canonical_W", "--checks", "covariant_pair"],
    ["lcm", "--semigroup", "Nk:k=2,max=3", "--x", "(1,2,3)", "--y", "(0,0)"],
    ["bd", "--p", "7"],
    [],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err


def test_domain_errors_exit_one(capsys):
    code, _, err = run(["bd", "--p", "4", "--q", "3"], capsys)
    assert code == 1 and "piso-lab" in err


def test_bd_json_and_csv(capsys):
    code, doc = report(["bd", "--p", "7", "--q", "2"], capsys)
    assert code == 0
    assert doc["result"]["count"] == 2 and doc["result"]["supernatural"] == "3·7^inf"
    code, out, _ = run(["bd", "--p", "7", "--q", "2", "--format", "csv"], capsys)
    assert out.splitlines() == ["p,q,ord,L,count,supernatural", "7,2,3,1,2,3·7^inf"]


def test_qa_command(capsys):
    code, doc = report(["qa", "--semigroup", "Nk:k=1,max=6", "--set", "1,2"], capsys)
    entries = doc["result"]["entries"]
    assert code == 0 and len(entries) == 4
    flags = {tuple(e["A"]): e["nonzero"] for e in entries}
    assert flags[("2",)] is False
    assert doc["result"]["sum_is_unit"] and doc["result"]["orthogonal"]


def test_norm_command(capsys):
    code, doc = report(["norm", "--semigroup", "Nk:k=2,max=3", "--set", "(1,0);(0,1)", "--coeffs", "1,1"], capsys)
    assert code == 0 and doc["result"]["formula"] == "2" and doc["result"]["agree"]


def test_cp_mul_command(capsys):
    left = json.dumps([{"x": "0", "y": "1", "f": [{"u": "0", "coeff": "1"}]}])
    right = json.dumps([{"x": "2", "y": "0", "f": [{"u": "0", "coeff": "1"}]}])
    code, doc = report(["cp-mul", "--semigroup", "Nk:k=1,max=4", "--left", left, "--right", right], capsys)
    assert code == 0 and doc["result"]["product_str"] == "M(1, 1_2, 0)"
    code, _, _ = run(["cp-mul", "--semigroup", "Nk:k=1,max=4", "--left", "not json", "--right", right], capsys)
    assert code == 2


def test_odometer_command(capsys):
    code, doc = report(["odometer", "--d", "2", "--p", "3", "--depth", "1", "--steps", "2", "--start", "1,2"], capsys)
    assert code == 0 and doc["result"]["orbit"] == [[1, 2], [0, 0], [1, 0]]
    code, doc = report(["odometer", "--d", "2", "--p", "3", "--depth", "4", "--steps", "162"], capsys)
    orbit = doc["result"]["orbit"]
    assert orbit[0] == orbit[-1] == [0] * 5 and len({tuple(o) for o in orbit}) == 162


def test_beta_command(capsys):
    code, doc = report(["beta", "--p", "3", "--q", "5", "--k", "1", "--l", "1", "--m", "1", "--n", "0", "--r", "0"], capsys)
    assert code == 0 and doc["result"]["image"] == {"0": "1/3", "5": "1/3", "10": "1/3"}


def test_reports_are_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["check", "--semigroup", "Free:n=2,len=2", "--checks", "piso_rep,left_nica", "--out", str(p)]) == 1
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_unwritable_output(tmp_path, capsys):
    code, _, err = run(["bd", "--p", "5", "--q", "3", "--out", str(tmp_path / "missing" / "x.json")], capsys)
    assert code == 2 and "cannot write" in err


def test_threads_variable(monkeypatch, capsys):
    monkeypatch.setenv("PISO_LAB_THREADS", "4")
    code, doc = report(["bd", "--p", "5", "--q", "3"], capsys)
    assert doc["config"]["threads"] == 4
    monkeypatch.setenv("PISO_LAB_THREADS", "zero")
    assert run(["bd", "--p", "5", "--q", "3"], capsys)[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "piso_lab.cli", "lcm", "--semigroup", "NTimes:primes=2,3;maxexp=2",
                           "--x", "4", "--y", "6"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["left_lcm"] == "12"
