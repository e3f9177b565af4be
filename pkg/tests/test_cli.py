"""The qbc executable: outputs, formats, exit codes, reproducibility."""

import json
import math
import os
import subprocess
import sys

import pytest

PKG_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
PI_2 = "1.5707963267948966"


def run_qbc(*args, env_extra=None):
    env = os.environ.copy()
    env.setdefault("PYTHONPATH", os.path.join(PKG_ROOT, "src"))
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "qbc", *args],
        capture_output=True,
        text=True,
        env=env,
    )


class TestDiscriminate:
    def test_orthogonal(self):
        out = run_qbc("discriminate", "--theta", PI_2)
        assert out.returncode == 0
        rep = json.loads(out.stdout)
        assert abs(rep["p_e"]) < 1e-12
        assert abs(rep["min_eigenvalue"] + 1.0) < 1e-12

    def test_identical(self):
        rep = json.loads(run_qbc("discriminate", "--theta", "0").stdout)
        assert rep["p_e"] == 0.5

    def test_pi_over_6(self):
        rep = json.loads(run_qbc("discriminate", "--theta", "0.5235987755982988").stdout)
        assert abs(rep["p_e"] - 0.25) < 1e-12

    def test_theta_deg(self):
        rep = json.loads(run_qbc("discriminate", "--theta-deg", "30").stdout)
        assert abs(rep["p_e"] - 0.25) < 1e-12

    def test_out_of_range_is_usage_error(self):
        out = run_qbc("discriminate", "--theta", "3.0")
        assert out.returncode == 2
        assert out.stderr != ""

    def test_missing_theta_is_usage_error(self):
        assert run_qbc("discriminate").returncode == 2


class TestClone:
    def test_orthogonal_point(self):
        rep = json.loads(run_qbc("clone", "--theta", PI_2, "--phi", "0").stdout)
        assert abs(rep["params"]["a0"] - 1.0) < 1e-12
        assert abs(rep["params"]["d1"] + 1.0) < 1e-12
        assert abs(rep["entanglement"]) < 1e-12

    def test_identical_inputs(self):
        rep = json.loads(run_qbc("clone", "--theta", "0", "--phi", "1.0").stdout)
        assert abs(rep["entanglement"] - math.log(2)) < 1e-12
        assert abs(rep["lambda"]) < 1e-12

    def test_residuals_small(self):
        rep = json.loads(run_qbc("clone", "--theta", "0.8", "--phi", "2.2").stdout)
        assert max(abs(r) for r in rep["constraint_residuals"]) < 1e-12


class TestOptimize:
    def test_recovers_reference(self):
        rep = json.loads(
            run_qbc("optimize", "--theta", "1.0471975511965976", "--seed", "7").stdout
        )
        assert rep["gap"] < 1e-6
        assert abs(rep["reference"] - 0.75) < 1e-12

    def test_same_seed_identical_bytes(self):
        a = run_qbc("optimize", "--theta", "0.9", "--seed", "3")
        b = run_qbc("optimize", "--theta", "0.9", "--seed", "3")
        assert a.stdout == b.stdout
        assert a.returncode == b.returncode == 0

    def test_fallback_path_agrees_bitwise(self):
        compiled = run_qbc("optimize", "--theta", "0.8", "--n-starts", "8", "--seed", "5")
        fallback = run_qbc(
            "optimize", "--theta", "0.8", "--n-starts", "8", "--seed", "5",
            env_extra={"QBC_DISABLE_NUMBA": "1"},
        )
        assert compiled.returncode == fallback.returncode == 0
        assert compiled.stdout == fallback.stdout


class TestRates:
    def test_noiseless_endpoint(self):
        rep = json.loads(run_qbc("rates", "--theta", PI_2, "--epsilon", "0").stdout)
        assert abs(rep["r1"]) < 1e-12
        assert abs(rep["r2"] - math.log(2)) < 1e-12

    def test_other_endpoint(self):
        rep = json.loads(run_qbc("rates", "--theta", PI_2, "--epsilon", "0.5").stdout)
        assert abs(rep["r1"] - math.log(2)) < 1e-12
        assert abs(rep["r2"]) < 1e-12

    def test_oracle_agreement_reported(self):
        rep = json.loads(
            run_qbc("rates", "--theta", "0.5235987755982988", "--epsilon", "0.1").stdout
        )
        assert rep["oracle_max_deviation"] < 1e-12

    def test_epsilon_out_of_range(self):
        assert run_qbc("rates", "--theta", "0.4", "--epsilon", "0.9").returncode == 2


class TestSweep:
    def test_csv_schema_and_rows(self, tmp_path):
        path = tmp_path / "sweep.csv"
        out = run_qbc(
            "sweep", "--theta-grid", f"0:{PI_2}:25", "--epsilon", "0.1",
            "--format", "csv", "--out", str(path),
        )
        assert out.returncode == 0
        text = path.read_text(encoding="utf-8")
        lines = text.split("\n")
        assert lines[0] == "theta,phi,epsilon,p_e,lambda_max,entanglement,r1,r2,seed"
        assert len([ln for ln in lines[1:] if ln]) == 25
        assert "\r" not in text

    def test_pe_column_monotone_nonincreasing(self, tmp_path):
        path = tmp_path / "sweep.csv"
        run_qbc("sweep", "--theta-grid", f"0:{PI_2}:40", "--format", "csv", "--out", str(path))
        rows = path.read_text().strip().split("\n")[1:]
        pes = [float(r.split(",")[3]) for r in rows]
        assert all(b <= a for a, b in zip(pes, pes[1:]))

    def test_two_step_endpoints(self):
        out = run_qbc("sweep", "--theta-grid", f"0:{PI_2}:2", "--format", "csv")
        rows = out.stdout.strip().split("\n")[1:]
        assert float(rows[0].split(",")[3]) == 0.5
        assert float(rows[1].split(",")[3]) == 0.0

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ("sweep", "--theta-grid", "0.1:1.3:7", "--phi", "0.4", "--format", "csv")
        run_qbc(*args, "--out", str(a))
        run_qbc(*args, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_json_records(self):
        out = run_qbc("sweep", "--theta-grid", "0:1:3")
        rep = json.loads(out.stdout)
        assert len(rep["records"]) == 3
        assert set(rep["records"][0]) == {
            "theta", "phi", "epsilon", "p_e", "lambda_max", "entanglement", "r1", "r2", "seed",
        }

    def test_unwritable_path(self, tmp_path):
        out = run_qbc("sweep", "--theta-grid", "0:1:3", "--out", str(tmp_path / "no" / "dir.csv"))
        assert out.returncode == 1

    def test_bad_grid_is_usage_error(self):
        assert run_qbc("sweep", "--theta-grid", "1:0:5").returncode == 2
        assert run_qbc("sweep", "--theta-grid", "0:1").returncode == 2


class TestVerifyHook:
    def test_corrupted_tolerance_fails(self):
        out = run_qbc("verify", "--seed", "1", env_extra={"QBC_VERIFY_CORRUPT": "1"})
        assert out.returncode == 1
        assert "FAIL" in out.stdout

    def test_unknown_command_usage_error(self):
        assert run_qbc("frobnicate").returncode == 2


class TestJsonRoundTrip:
    def test_doubles_survive(self):
        out = run_qbc("clone", "--theta", "0.77", "--phi", "1.9")
        rep = json.loads(out.stdout)
        redumped = json.loads(json.dumps(rep))
        assert redumped == rep
