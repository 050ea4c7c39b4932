import csv
import io
import json
import subprocess
import sys

import pytest

from concave_majorant.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_simulate_single_row(capsys):
    code, out = run(capsys, "simulate", "--n", "1", "--samples", "1")
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert code == 0 and len(rows) == 1 and rows[0]["F"] == "1" and rows[0]["faces"] == "1"


def test_simulate_geometric_schema(capsys):
    code, out = run(capsys, "simulate", "--q", "0.5", "--model", "gaussian", "--samples", "1000")
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert code == 0 and len(rows) == 1000
    assert set(rows[0]) == {"n", "F", "H", "M", "L", "S_n", "faces", "touches"}
    for r in rows:
        n = int(r["n"])
        assert sum(map(int, r["faces"].split("-"))) == n if n else r["faces"] == ""


def test_invalid_q_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["simulate", "--q", "1.2"])
    assert e.value.code == 2


def test_reports_are_deterministic_across_threads(capsys):
    _, a = run(capsys, "simulate", "--n", "6", "--model", "rademacher", "--samples", "2500",
               "--format", "json", "--threads", "1")
    _, b = run(capsys, "simulate", "--n", "6", "--model", "rademacher", "--samples", "2500",
               "--format", "json", "--threads", "4")
    assert a.out == b.out
    rows = json.loads(a.out)["results"]
    assert all("/" in r["S_n"] or r["S_n"].lstrip("-").isdigit() for r in rows)


def test_gf_tables(capsys):
    code, out = run(capsys, "gf", "--order-s", "4", "--order-t", "4")
    tables = json.loads(out.out)["results"]
    assert tables["H"][2][:3] == ["0", "1/4", "3/4"]
    assert tables["K"][4] == ["0", "1/4", "11/24", "1/4", "1/24"]
    code, out = run(capsys, "gf", "--order-s", "0")
    assert json.loads(out.out)["results"]["H"] == [["1"]]


def test_transform_roundtrip(capsys):
    _, out = run(capsys, "transform", "2,-3,1", "--U", "2")
    res = json.loads(out.out)["results"]
    assert res["k"] == 2 and res["values"] == ["0", "1", "-2", "0"]
    _, out = run(capsys, "transform", "1,-3,2", "--inverse", "2")
    res = json.loads(out.out)["results"]
    assert res["U"] == 2 and res["values"] == ["0", "2", "-1", "0"]
    _, out = run(capsys, "transform", "3,-1,-2,5")
    res = json.loads(out.out)["results"]
    assert sorted(res["increments"]) == sorted(["3", "-1", "-2", "5"])


def test_experiment(capsys):
    _, out = run(capsys, "experiment", "--alphas", "")
    assert out.out.strip() == "alpha,two_p121,se,samples"
    _, out = run(capsys, "experiment", "--alphas", "1,2", "--samples", "100000")
    rows = list(csv.DictReader(io.StringIO(out.out)))
    for r, target in zip(rows, (1 / 6, 0.195913276)):
        assert abs(float(r["two_p121"]) - target) < 3 * float(r["se"])


def test_verify_suite_and_unknown(capsys):
    code, out = run(capsys, "verify", "criterion-10")
    report = json.loads(out.out)
    assert code == 0 and [r["criterion"] for r in report["results"]] == [10]
    assert all("threshold" in c for c in report["results"][0]["checks"])
    assert "[PASS] criterion 10" in out.err
    assert "wall_time" not in report
    with pytest.raises(SystemExit) as e:
        main(["verify", "no-such-suite"])
    assert e.value.code == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "gf.json"
    subprocess.run([sys.executable, "-m", "concave_majorant", "gf", "--order-s", "2", "--out", str(out)],
                   check=True)
    assert json.loads(out.read_text())["command"] == "gf"


def test_library_errors_exit_one(capsys):
    code, out = run(capsys, "transform", "--U", "2", "--", "-1,1,-1,1")
    assert code == 1 and "DegenerateInput" in out.err
