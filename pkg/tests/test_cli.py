import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from sracah.cli import main, matrix_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rep_build_writes_ten_files(tmp_path, capsys):
    out = tmp_path / "rep"
    code, stdout, _ = run(capsys, "rep", "build", "--j", "1,1,2,1,1", "--out", str(out))
    assert code == 0
    files = sorted(p.name for p in out.iterdir())
    assert len(files) == 11 and "manifest.json" in files
    man = json.loads((out / "manifest.json").read_text())
    assert man["dim"] == 6 and man["big_n"] == 2
    m = matrix_from_json(json.loads((out / "C23.json").read_text()))
    assert m.shape == (6, 6) and np.allclose(m, m.T)


def test_rep_build_csv_roundtrip(tmp_path, capsys):
    out = tmp_path / "rep"
    assert run(capsys, "rep", "build", "--j", "2,2,4,2,2", "--out", str(out), "--format", "csv")[0] == 0
    code, stdout, _ = run(capsys, "verify", "algebra", "--matrices", str(out))
    assert code == 0
    assert json.loads(stdout)["pass"] is True


def test_rep_build_lower_bound(capsys):
    code, _, err = run(capsys, "rep", "build", "--j", "2,2,3,2,2")
    assert code == 2
    assert "lower bound" in err


def test_rep_build_zero(capsys):
    code, _, err = run(capsys, "rep", "build", "--j", "0,0,0,0,0")
    assert code == 2 and "not positive" in err


def test_verify_group(capsys):
    code, out, _ = run(capsys, "verify", "group")
    assert code == 0
    rep = json.loads(out)
    line = next(c for c in rep["checks"] if c["name"] == "order:<s,t,i>=120")
    assert line["pass"] and line["note"] == "order 120"


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--j", "1,1,2,1,1")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"]
    assert {c["suite"] for c in rep["checks"]} == {
        "algebra", "casimir", "group", "transitions", "cycles", "racah", "tratnik", "griffiths"}
    for c in rep["checks"]:
        assert {"name", "residual", "tolerance", "pass"} <= set(c)


def test_verify_perturbed_fails(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--j", "1,1,2,1,1", "--perturb", "1e-3")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_perturb_site_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "algebra", "--j", "1,1,2,1,1", "--perturb", "1e-3",
                       "--perturb-at", "C23,0,9")
    assert code == 2


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "bogus", "--j", "1,1,2,1,1")
    assert code == 2 and "unknown suite" in err


def test_verify_needs_j(capsys):
    assert run(capsys, "verify", "cycles")[0] == 2


def test_tolerance_tightening_fails(capsys):
    code, _, _ = run(capsys, "verify", "transitions", "--j", "1,1,2,1,1", "--tol", "1e-30")
    assert code == 1


def test_transition_closed_and_oracle_agree(capsys):
    _, a, _ = run(capsys, "transition", "--j", "1,1,2,1,1", "--to", "r2")
    _, b, _ = run(capsys, "transition", "--j", "1,1,2,1,1", "--to", "r2", "--method", "oracle")
    ma, mb = matrix_from_json(json.loads(a)), matrix_from_json(json.loads(b))
    assert np.max(np.abs(ma - mb)) < 1e-9
    assert json.loads(a)["to"] == "isitisit"


def test_transition_bad_word(capsys):
    assert run(capsys, "transition", "--j", "1,1,2,1,1", "--to", "x")[0] == 2


def test_poly_racah_valid(capsys):
    # the t-edge parameters at J=(1,1,2,1,1), p=0
    code, out, _ = run(capsys, "poly", "racah", "--alpha", "-3", "--beta", "-3", "--big-n", "2",
                       "--delta", "5", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    t = np.zeros((3, 3))
    for r in rows:
        t[int(r["n"]), int(r["m"])] = float(r["value"])
    assert np.max(np.abs(t @ t.T - np.eye(3))) < 1e-12


def test_poly_racah_nonreal_normalization(capsys):
    # at (0,0,4,0) the product A_0 C_1 is negative, so the normalized table is not real
    code, _, err = run(capsys, "poly", "racah", "--alpha", "0", "--beta", "0", "--big-n", "4", "--delta", "0")
    assert code == 2 and "A_0*C_1" in err


def test_poly_tratnik_table(capsys):
    code, out, _ = run(capsys, "poly", "tratnik", "--j", "1,1,2,1,1")
    assert code == 0
    entries = json.loads(out)["entries"]
    assert len(entries) == 36
    assert any(e["value"] == 0.0 and e["n2"] + e["m1"] > 2 for e in entries)


def test_poly_griffiths_single(capsys):
    code, out, _ = run(capsys, "poly", "griffiths", "--j", "1,1,2,1,1", "--n", "0,0", "--m", "0,0")
    assert code == 0
    (entry,) = json.loads(out)["entries"]
    assert entry["value"] == pytest.approx(-1 / 6, abs=1e-14)


def test_poly_out_of_domain(capsys):
    assert run(capsys, "poly", "tratnik", "--j", "1,1,2,1,1", "--n", "2,1")[0] == 2


def test_graph_export(capsys):
    code, out, _ = run(capsys, "graph", "export")
    g = json.loads(out)
    assert code == 0
    assert len(g["vertices"]) == 15 and len(g["edges"]) == 30 and len(g["pentagons"]) == 6


def test_usage_error_exit_code(capsys):
    assert main(["rep"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sracah", "verify", "group"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"]
