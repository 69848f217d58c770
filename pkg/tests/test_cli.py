import json
import subprocess
import sys

import pytest

from whitkern.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "whitkern.cli", *args], capture_output=True, text=True)


def test_hankel_det_json(capsys):
    assert main(["hankel-det", "--N", "2", "--a", "0", "--b", "0", "--t", "0", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rows"][0]["det"] == pytest.approx(1 / 12, rel=1e-14)
    assert doc["params"]["N"] == 2


def test_csv_header(capsys):
    assert main(["moments", "--a", "0.5", "--b", "0.5", "--t", "0.3", "--m", "0,1", "--form", "all"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("# whitkern")
    assert any(line.startswith("# params:") for line in out)
    assert sum(not line.startswith("#") for line in out) == 3


def test_exit_codes():
    assert run("moments", "--a", "0").returncode == 2
    assert run("moments", "--a", "-2", "--b", "0").returncode == 1
    assert run("identity-check", "--which", "nonsense").returncode == 2
    assert run("eval-whittaker", "--kappa", "0.5", "--mu", "0.25", "--x", "1,2").returncode == 0


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"N": 1, "a": 0.0, "b": 0.0}))
    assert main(["hankel-det", "--config", str(cfg), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["rows"][0]["det"] == pytest.approx(1.0)
    cfg.write_text(json.dumps({"N": 1, "bogus": 3}))
    assert run("hankel-det", "--config", str(cfg)).returncode == 2


def test_identity_alias(capsys):
    assert main(["identity-check", "--which", "6.10", "--json"]) == 0
    named = capsys.readouterr().out
    assert main(["identity-check", "--which", "stieltjes-eigenrelation", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["rows"] == json.loads(named)["rows"]


def test_painleve_check(capsys):
    assert main(["painleve-check", "--eq", "pv", "--N", "1", "--t0", "0.5", "--json"]) == 0
    row = json.loads(capsys.readouterr().out)["rows"][0]
    assert float(row["residual"]) < 1e-8


def test_gap_prob_curve(capsys):
    assert main(["gap-prob", "--a", "0.2", "--smax", "4", "--steps", "4", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    p = [r["P"] for r in rows]
    assert all(b <= a for a, b in zip(p, p[1:]))


def test_dpp_sample_reproducible(tmp_path):
    outs = []
    for name in ("a", "b"):
        f = tmp_path / f"{name}.csv"
        assert run("dpp-sample", "--a", "0.2", "--n", "5", "--seed", "9", "--grid", "256",
                   "--nodes", "80", "--out", str(f)).returncode == 0
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]


def test_kernel_check(capsys):
    assert main(["kernel-check", "--kappa", "0.7", "--mu", "0.2", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert all(r["pass"] for r in rows)


def test_report_subset_bitwise(tmp_path):
    files = [tmp_path / "r1.csv", tmp_path / "r2.csv"]
    for f in files:
        assert run("report", "--criteria", "1,3", "--out", str(f)).returncode == 0
    assert files[0].read_bytes() == files[1].read_bytes()
