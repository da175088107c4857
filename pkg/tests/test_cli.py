import json
import subprocess
import sys

import numpy as np
import pytest

from gaspt_rh import cli, io, oracles


def run(*args):
    return cli.main([str(a) for a in args])


@pytest.fixture
def oracle_file(tmp_path):
    def make(name, no_un=False):
        path = tmp_path / (name.replace("/", "_") + ".json")
        extra = ["--no-un"] if no_un else []
        assert run("oracle", "--name", name, "--out", path, *extra) == 0
        return path
    return make


def test_solve_laplace(oracle_file, tmp_path):
    src = oracle_file("x2-y2")
    out = tmp_path / "f.csv"
    assert run("solve", "--in", src, "--out", out, "--grid", "6,6,0.1") == 0
    rows = np.loadtxt(out, delimiter=",", skiprows=1)
    assert np.max(np.abs(rows[:, 2] - (rows[:, 0] ** 2 - rows[:, 1] ** 2))) < 1e-6
    meta = json.loads((tmp_path / "f.csv.meta.json").read_text())
    assert meta["n_circle"] == 256 and meta["path"] == "even"


def test_solve_constant_alpha1(tmp_path):
    d = oracles.boundary_trace(oracles.ExactSolution("1", 1), 2.0, 4)
    src = tmp_path / "c.json"
    io.save_data(d, src)
    out = tmp_path / "c.csv"
    assert run("solve", "--in", src, "--out", out, "--grid", "4,4,0.2") == 0
    rows = np.loadtxt(out, delimiter=",", skiprows=1)
    assert np.allclose(rows[:, 2], 1.0, atol=1e-12)


def test_dtn_then_solve_roundtrip(oracle_file, tmp_path):
    src = oracle_file("x3", no_un=True)
    mid = tmp_path / "x3_dtn.json"
    assert run("dtn", "--in", src, "--out", mid) == 0
    doc = json.loads(mid.read_text())
    assert doc["residual_norm"] < 1e-10
    out = tmp_path / "f.csv"
    assert run("solve", "--in", mid, "--out", out, "--grid", "5,5,0.1") == 0
    rows = np.loadtxt(out, delimiter=",", skiprows=1)
    assert np.max(np.abs(rows[:, 2] - rows[:, 0] ** 3)) < 1e-5


def test_dtn_positive_alpha(oracle_file, tmp_path):
    src = oracle_file("3x-3y2/x", no_un=True)
    out = tmp_path / "o.json"
    assert run("dtn", "--in", src, "--out", out) == 0
    ref = oracles.boundary_trace(oracles.named("3x-3y2/x"), 2.0, 32)
    got = io.load_data(out)
    assert (got.un - ref.un).norm() < 1e-8 * ref.un.norm()


def test_dtn_zero_input(tmp_path):
    from gaspt_rh.boundary import BoundaryData, TrigSeries
    src = tmp_path / "z.json"
    io.save_data(BoundaryData(0, 2.0, TrigSeries.zeros(4)), src)
    out = tmp_path / "zo.json"
    assert run("dtn", "--in", src, "--out", out) == 0
    assert io.load_data(out).un.norm() < 1e-14


def test_dtn_odd_exit4(oracle_file):
    assert run("dtn", "--in", oracle_file("x2")) == 4


def test_unsupported_m2_exit4(tmp_path):
    d = oracles.boundary_trace(oracles.poly_solutions(-3, 4)[-1], 2.0, 8)
    src = tmp_path / "m2.json"
    io.save_data(d, src)
    assert run("solve", "--in", src, "--grid", "3,3,0.2", "--out", tmp_path / "o.csv") == 4


def test_verify(oracle_file, tmp_path):
    src = oracle_file("x2-2y2")
    rep = tmp_path / "r.json"
    assert run("verify", "--in", src, "--out", rep) == 0
    r = json.loads(rep.read_text())
    assert r["pass"] and r["max_residual"] < 1e-8
    doc = json.loads(src.read_text())
    doc["un"][doc["N"] + 1][0] += 0.05
    doc["un"][doc["N"] - 1][0] += 0.05
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert run("verify", "--in", bad, "--out", rep) == 0
    assert not json.loads(rep.read_text())["pass"]


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("ut"),
    lambda d: d.update(alpha=1.5),
    lambda d: d.update(a=0.5),
    lambda d: d.update(ut=[[0, 0]]),
])
def test_schema_errors_exit2(oracle_file, tmp_path, mutate):
    doc = json.loads(oracle_file("x").read_text())
    mutate(doc)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert run("solve", "--in", p) == 2


def test_bad_margin_exit2(oracle_file):
    assert run("solve", "--in", oracle_file("x"), "--grid", "4,4,0.01") == 2


def test_missing_file_exit2(tmp_path):
    assert run("solve", "--in", tmp_path / "nope.json") == 2


def test_deterministic_output(oracle_file, tmp_path):
    src = oracle_file("x2", no_un=False)
    outs = []
    for i in range(2):
        p = tmp_path / f"o{i}.csv"
        run("solve", "--in", src, "--out", p, "--grid", "4,4,0.1")
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_convergence_table(tmp_path):
    out = tmp_path / "c.csv"
    assert run("convergence", "--name", "re-z-a-3", "--out", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "kind,n_or_h,max_error,order"
    rh = [line.split(",") for line in lines[1:] if line.startswith("rh")]
    fd = [line.split(",") for line in lines[1:] if line.startswith("fd")]
    assert float(rh[-1][2]) < 1e-8
    assert 1.7 < float(fd[-1][3]) < 2.3


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gaspt_rh", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip()
