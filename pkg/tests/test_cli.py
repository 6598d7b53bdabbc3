import json
import math
import os
import subprocess
import sys

import pytest

from torsionlab import cli

D2 = 0.5 * math.log(math.pi) + 0.5


def run(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "torsionlab", *args], capture_output=True, text=True, env=full_env)


def test_compute_disc_json():
    r = run("compute", "disc", "--dim", "2", "--length", "1")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert list(data)[:6] == ["geometry", "bc", "method", "log_torsion", "log_rs_torsion", "breakdown"]
    assert "residuals" in data
    assert abs(data["log_torsion"] - D2) < 1e-13


def test_compute_cone_relative():
    r = run("compute", "cone", "--section", "circle", "--alpha", "30deg", "--length", "1", "--bc", "rel")
    assert r.returncode == 0, r.stderr
    assert abs(json.loads(r.stdout)["log_torsion"] + (0.5 * math.log(math.pi / 2) + 0.25)) < 1e-13


def test_compute_both_methods_and_formats():
    r = run("compute", "cone", "--section", "sphere", "--alpha", "pi/4", "--method", "both", "--format", "csv")
    assert r.returncode == 0, r.stderr
    lines = dict(line.split(",", 1) for line in r.stdout.strip().splitlines()[1:])
    assert abs(float(lines["residuals.pipeline_minus_closed"])) < 1e-7
    t = run("compute", "disc", "--dim", "3", "--format", "text", "--log10")
    assert t.returncode == 0 and "log_torsion" in t.stdout and "log10" in t.stdout


def test_exit_codes():
    assert run("compute", "disc", "--dim", "0").returncode == 2
    assert run("compute", "cone", "--section", "circle", "--alpha", "100deg").returncode == 2
    assert run("compute", "cone", "--alpha", "pi/3").returncode == 2
    assert run("compute", "disc", "--dim", "2", "--tol", "nonsense=1").returncode == 2
    assert run("bogus").returncode == 2
    r = run("compute", "cone", "--section", "sphere", "--alpha", "pi/3", "--tol", "fzero=1e-30")
    assert r.returncode == 3 and "differ" in r.stderr


def test_determinism():
    args = ("compute", "cone", "--section", "sphere", "--alpha", "0.7rad", "--method", "both")
    assert run(*args).stdout == run(*args).stdout


def test_spectrum_table_and_cache(tmp_path):
    cache = tmp_path / "zc.json"
    args = ("spectrum", "--section", "circle", "--degree", "0", "--alpha", "pi/2", "--cutoff", "40", "--format", "csv")
    cold = run(*args, env={"TORSIONLAB_CACHE": str(cache)})
    assert cold.returncode == 0, cold.stderr
    assert cache.exists()
    warm = run(*args, "--cache", str(cache))
    assert warm.stdout == cold.stdout
    rows = cold.stdout.strip().splitlines()
    assert rows[0] == "eigenvalue,multiplicity,band,n,k,order"
    first = rows[1].split(",")
    assert abs(float(first[0]) - 3.38996) < 1e-5 and first[1] == "2"


def test_spectrum_sphere_and_empty():
    r = run("spectrum", "--section", "sphere", "--degree", "0", "--cutoff", "20")
    data = json.loads(r.stdout)
    assert data["rows"][0]["band"] == "G-(mu_n)" and data["rows"][0]["order"] == 1.5
    r = run("spectrum", "--section", "circle", "--cutoff", "0.1")
    assert r.returncode == 0 and json.loads(r.stdout)["rows"] == []
    assert run("spectrum", "--section", "circle", "--cutoff", "-1").returncode == 2


def test_verify_subsets():
    r = run("verify", "engine")
    assert r.returncode == 0, r.stdout
    assert "engine.phi1" in r.stdout and "DISCREPANCY" in r.stdout
    r = run("verify", "torsion", "--format", "json")
    data = json.loads(r.stdout)
    assert data["failed"] == 0
    assert any(row["check"] == "torsion.D3_df" for row in data["rows"])


def test_verify_failure_exit_code(monkeypatch, capsys):
    from torsionlab import verify
    bad = verify.Check("specfun.broken", "specfun", "always fails", lambda: (1.0, 0.0))
    monkeypatch.setattr(verify, "_CHECKS", verify._CHECKS + [bad])
    assert cli.main(["verify", "specfun"]) == 1
    assert "FAIL" in capsys.readouterr().out


@pytest.mark.parametrize("text,value", [("pi/2", math.pi / 2), ("30deg", math.pi / 6), ("0.5rad", 0.5),
                                        ("2pi/5", 2 * math.pi / 5), ("1.2", 1.2)])
def test_parse_angle(text, value):
    assert cli.parse_angle(text) == pytest.approx(value, rel=1e-15)


def test_parse_angle_rejects_garbage():
    with pytest.raises(cli.UsageError):
        cli.parse_angle("thirty")
