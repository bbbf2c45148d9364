import json
import subprocess
import sys

import pytest

BASE = {
    "deformation": {"family": "su2", "mass": 2.0, "lambda": 0.5},
    "jet": {"degree": 3, "amplitude": 0.1, "seeds": [1]},
    "checks": ["gauge-invariance", "linearization"],
}


def run_cli(args):
    return subprocess.run([sys.executable, "-m", "ymft.cli"] + args,
                          capture_output=True, text=True)


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_verify_algebra_su2(tmp_path):
    cfg = write_config(tmp_path, {"algebra": {"family": "su2"}})
    proc = run_cli(["verify-algebra", "--config", cfg])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["passed"] is True
    assert report["killing_signature"] == [0, 0, 3]
    assert "conventions" in report


def test_verify_algebra_broken_jacobi(tmp_path):
    c = [0.0] * 27
    c[0 * 9 + 1 * 3 + 2] = 1.0   # c^1_{23}
    c[0 * 9 + 2 * 3 + 1] = -1.0
    c[1 * 9 + 0 * 3 + 2] = 0.7   # breaks antisymmetry and Jacobi
    cfg = write_config(tmp_path, {"algebra": {"dim": 3,
                                              "structure_constants": c}})
    proc = run_cli(["verify-algebra", "--config", cfg])
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    assert not report["checks"]["jacobi"]["passed"] \
        or not report["checks"]["antisymmetry"]["passed"]


def test_malformed_json_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ not json")
    proc = run_cli(["verify-algebra", "--config", str(path)])
    assert proc.returncode == 2


def test_unknown_key_exits_2(tmp_path):
    cfg = write_config(tmp_path, {"algebra": {"family": "su2"},
                                  "mystery": 1})
    proc = run_cli(["verify-algebra", "--config", cfg])
    assert proc.returncode == 2


def test_wrong_tensor_length_exits_2(tmp_path):
    cfg = write_config(tmp_path, {"algebra": {"dim": 3,
                                              "structure_constants": [1.0]}})
    proc = run_cli(["verify-algebra", "--config", cfg])
    assert proc.returncode == 2


def test_verify_deformation_families(tmp_path):
    cfg = write_config(tmp_path, dict(BASE))
    assert run_cli(["verify-deformation", "--config", cfg]).returncode == 0
    solv = dict(BASE)
    solv["deformation"] = {"family": "solvable", "v": [1, 0, 0],
                           "w": [0, 0, 1]}
    cfg = write_config(tmp_path, solv, "solv.json")
    assert run_cli(["verify-deformation", "--config", cfg]).returncode == 0


def test_verify_deformation_e_with_mass_fails(tmp_path):
    n = 3
    e = [0.0] * 27
    e[0 * 9 + 1 * 3 + 1] = 1.0
    payload = {"deformation": {
        "family": "explicit", "dims": [n, n],
        "a": [0.0] * 27, "b": [0.0] * 27, "j": [0.0] * 27, "k": [0.0] * 27,
        "e": e, "mass_matrix": [1.0, 0, 0, 0, 1.0, 0, 0, 0, 1.0]}}
    cfg = write_config(tmp_path, payload)
    proc = run_cli(["verify-deformation", "--config", cfg])
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    assert report["checks"]["e-mass-obstruction"]["passed"] is False


@pytest.mark.slow
def test_verify_theory_and_determinism(tmp_path):
    cfg = write_config(tmp_path, dict(BASE))
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    p1 = run_cli(["verify-theory", "--config", cfg, "--json", str(out1)])
    p2 = run_cli(["verify-theory", "--config", cfg, "--json", str(out2)])
    assert p1.returncode == 0 and p2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


@pytest.mark.slow
def test_verify_theory_singular_amplitude(tmp_path):
    payload = dict(BASE)
    payload["jet"] = {"degree": 3, "amplitude": 10.0, "seeds": [1]}
    payload["checks"] = ["gauge-invariance"]
    cfg = write_config(tmp_path, payload)
    proc = run_cli(["verify-theory", "--config", cfg])
    assert proc.returncode == 3
    assert "amplitude" in proc.stderr


def test_verify_theory_gate_blocks_bad_deformation(tmp_path):
    payload = {"deformation": {"family": "explicit", "dims": [3, 3],
                               "a": [0.0] * 27, "b": [0.0] * 27,
                               "j": [0.0] * 27, "k": [0.0] * 27,
                               "e": [0.0] * 27,
                               "mass_matrix": [0.0] * 9},
               "jet": {"degree": 3, "amplitude": 0.1, "seeds": [1]},
               "checks": ["linearization"]}
    payload["deformation"]["j"] = [0.1] * 27  # fails the mass-j link
    cfg = write_config(tmp_path, payload)
    proc = run_cli(["verify-theory", "--config", cfg])
    assert proc.returncode == 1
    # --force runs the suite anyway
    proc = run_cli(["verify-theory", "--config", cfg, "--force"])
    assert proc.returncode in (0, 1)


def test_observables_command(tmp_path):
    payload = {"observables": {"sampler": "coulomb", "parameter": 1.0,
                               "radius": 2.0, "grid": [32, 64],
                               "causality_samples": 50}}
    cfg = write_config(tmp_path, payload)
    proc = run_cli(["observables", "--config", cfg])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["checks"]["charge"]["passed"]
    assert report["checks"]["causality"]["passed"]
    assert report["checks"]["trace"]["passed"]


def test_observables_zero_sampler(tmp_path):
    payload = {"observables": {"sampler": "zero", "checks": ["charge"]}}
    cfg = write_config(tmp_path, payload)
    proc = run_cli(["observables", "--config", cfg])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["checks"]["charge"]["values"] == [0.0]


def test_unknown_sampler_exits_2(tmp_path):
    payload = {"observables": {"sampler": "vortex"}}
    cfg = write_config(tmp_path, payload)
    assert run_cli(["observables", "--config", cfg]).returncode == 2


def test_seed_and_degree_overrides(tmp_path):
    payload = dict(BASE)
    payload["checks"] = ["linearization"]
    cfg = write_config(tmp_path, payload)
    proc = run_cli(["verify-theory", "--config", cfg, "--seed", "9",
                    "--degree", "2"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    idents = report["checks"]["linearization"]["identities"]
    assert all(row["seeds"] == [9] for row in idents)
