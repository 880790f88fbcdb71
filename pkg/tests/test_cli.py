import io
import json
import subprocess
import sys

import pytest

from pellsquares.cli import EXIT_ERROR, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, CliConfig, run_cli


def run(*argv):
    out = io.StringIO()
    code = run_cli(list(argv), out=out)
    return code, out.getvalue().splitlines()


def test_seq_example():
    code, lines = run("seq", "--tuple", "1,1,5,1,1", "--range", "-5..5")
    assert code == EXIT_OK
    assert len(lines) == 11
    assert lines[0] == "k=-5 2x=-152 2y=68"
    assert lines[-1] == "k=5 2x=398 2y=178"


def test_seq_prime():
    code, lines = run("seq", "--tuple", "1,1,5,1,1", "--range", "1..1", "--prime")
    assert lines == ["k=1 2x=6 2y=2"]


def test_table1_subcommand():
    code, lines = run("table1")
    assert code == EXIT_OK
    assert lines == ["b,U_b,D_b", "5,64,33203125", "13,432,69337111285", "17,738,592939382485"]


def test_scan():
    code, lines = run("scan", "--tuple", "1,1,2,2,2", "--range", "0..4")
    assert lines == ["k=0 y=1 root=1", "k=3 y=169 root=13"]


def test_census_json():
    code, lines = run("census", "--tuple", "1,1,2,2,2", "--range", "-10..10")
    assert code == EXIT_OK
    rec = json.loads(lines[0])
    assert rec["count"] == 2 and rec["class"] == "square-norm" and not rec["violation"]


def test_bounds_output():
    code, lines = run("bounds", "--tuple", "10,5,5,1,1")
    assert code == EXIT_OK
    assert lines[1] == "K=-1"
    assert sum("step d>" in line for line in lines) == 4
    assert any(line.startswith("D_(b,u) floor = 33203125") for line in lines)


def test_hypgeom():
    code, lines = run("hypgeom", "8", "4", "-1", "2", "--bits", "200")
    assert code == EXIT_OK
    rows = dict(line.split(" = ", 1) for line in lines)
    assert rows["D"] == "35" and rows["target_bits"] == "200"
    assert float(rows["residual"]) < 1e-50


def test_hypgeom_domain():
    code, _ = run("hypgeom", "2", "2", "-1", "1")
    assert code == EXIT_ERROR


def test_search_restricted():
    code, lines = run("search", "--b", "5", "--u", "1", "--t", "2", "--sign", "+")
    assert "c_b = 5, violations = 2" in lines
    assert code == EXIT_VIOLATION


def test_search_clean_block(tmp_path):
    csv = tmp_path / "r.csv"
    code, lines = run("search", "--b", "5", "--u", "7", "--norm", "1", "--csv", str(csv), "--threads", "2")
    assert code == EXIT_OK
    assert csv.read_text().splitlines()[0] == "b,U_b,D_b,c_b,violations,cpu_seconds"


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("seq", "--tuple", "1,1,4,4,2"),
    ("seq", "--tuple", "1,2,3"),
    ("seq", "--tuple", "1,1,5,1,1", "--range", "5..1"),
    ("search", "--b", "13"),
    ("search", "--b", "5", "--sign", "+", "--norm", "1"),
    ("census", "--tuple", "1,1,5,1,1", "--range", "-20000..0"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_fingerprint_stable():
    a = CliConfig("seq", {"tuple": "1,1,5,1,1"})
    b = CliConfig("seq", {"tuple": "1,1,5,1,1"})
    assert a.fingerprint() == b.fingerprint() != CliConfig("seq", {"tuple": "1,1,2,2,2"}).fingerprint()


def test_entry_point_exit_code():
    proc = subprocess.run([sys.executable, "-m", "pellsquares.cli", "seq", "--tuple", "x"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
