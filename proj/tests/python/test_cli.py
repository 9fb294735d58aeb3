"""CLI contract tests: exit codes, report formats, config handling and the
export surfaces. The binary path arrives via the GKLANDAU_CLI environment
variable (set by ctest)."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("GKLANDAU_CLI")

pytestmark = pytest.mark.skipif(CLI is None,
                                reason="GKLANDAU_CLI not set")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True,
                          **kwargs)


def test_verify_algebra_exit_zero():
    result = run("verify", "algebra", "--dim", "24")
    assert result.returncode == 0
    lines = [json.loads(l) for l in result.stdout.splitlines()]
    assert len(lines) >= 10
    assert all(e["pass"] for e in lines)
    for key in ("check_id", "computed", "tol", "pass", "runtime_ms"):
        assert key in lines[0]


def test_verify_failing_branch_exit_one():
    result = run("verify", "gkcs", "--K1", "2.718")
    assert result.returncode == 1
    entries = {e["check_id"]: e for e in
               (json.loads(l) for l in result.stdout.splitlines())}
    assert entries["continuous_norm_paper_branch"]["pass"] is False
    assert entries["continuous_norm_general"]["pass"] is True


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample config\nK1 = 0.5\nlambda = 0.25\n")
    result = run("verify", "gkcs", "--config", str(cfg))
    assert result.returncode == 0
    entries = {e["check_id"]: e for e in
               (json.loads(l) for l in result.stdout.splitlines())}
    assert entries["continuous_norm_general"]["inputs"]["K1"] == "0.5"

    # Flags override file values.
    result = run("verify", "gkcs", "--config", str(cfg), "--K1", "0.9")
    entries = {e["check_id"]: e for e in
               (json.loads(l) for l in result.stdout.splitlines())}
    assert float(entries["continuous_norm_general"]["inputs"]["K1"]) == 0.9


def test_errored_entries_exit_one():
    # J far beyond the truncation budget: the coherent-state checks raise,
    # land as errored entries, and the run exits 1.
    result = run("verify", "gkcs", "--J", "3000")
    assert result.returncode == 1
    entries = [json.loads(l) for l in result.stdout.splitlines()]
    errored = [e for e in entries if e.get("errored")]
    assert errored
    assert all(not e["pass"] for e in errored)
    assert any("tail" in e.get("error", "") for e in errored)


def test_bad_config_exit_two(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("K1 = not-a-number\n")
    assert run("verify", "gkcs", "--config", str(cfg)).returncode == 2

    missing = tmp_path / "nope.cfg"
    assert run("verify", "gkcs", "--config", str(missing)).returncode == 2


def test_csv_report_format():
    result = run("verify", "algebra", "--csv", "--dim", "32")
    assert result.returncode == 0
    header = result.stdout.splitlines()[0]
    assert header.startswith("check_id,inputs,computed_re")


def test_unwritable_output_exit_three(tmp_path):
    result = run("verify", "algebra", "--dim", "16", "--out",
                 str(tmp_path / "no" / "such" / "dir" / "out.json"))
    assert result.returncode == 3


def test_export_spectrum():
    result = run("export", "spectrum", "--n-lo", "0", "--n-hi", "5",
                 "--alpha", "0", "--lambda", "0")
    assert result.returncode == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "n,alpha,energy"
    energies = [float(l.split(",")[2]) for l in lines[1:]]
    assert energies == [0.5, 1.5, 2.5, 3.5, 4.5, 5.5]


def test_export_cs_amplitudes_single_row_at_j_zero():
    result = run("export", "cs_amplitudes", "--J", "0", "--l", "2")
    assert result.returncode == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "n,l,re,im,prob"
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[0] == "0"
    assert fields[1] == "2"
    assert float(fields[4]) == pytest.approx(1.0, abs=1e-12)


def test_export_wigner_grid(tmp_path):
    out = tmp_path / "grid.csv"
    result = run("export", "wigner_grid", "--n", "0", "--l", "0", "--out",
                 str(out))
    assert result.returncode == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "x,y,re,im"
    origin = [r for r in rows[1:] if r.startswith("0,0,")]
    assert origin and "0.39894" in origin[0]


def test_thread_cap_does_not_change_results():
    env = dict(os.environ, GKLANDAU_THREADS="1")
    single = subprocess.run([CLI, "verify", "wigner", "--json"],
                            capture_output=True, text=True, env=env)
    default = run("verify", "wigner", "--json")
    assert single.returncode == 0 and default.returncode == 0

    def strip(text):
        return [json.loads(l) | {"runtime_ms": 0}
                for l in text.splitlines()]

    assert strip(single.stdout) == strip(default.stdout)


def test_invert_action_and_evolve_label():
    result = run("invert-action", "--J", "0.8", "--beta", "1")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["action"] == pytest.approx(0.8, abs=1e-6)

    result = run("evolve-label", "--t", "0.7", "--J", "1.5", "--gamma", "0.5",
                 "--theta1", "0.1")
    payload = json.loads(result.stdout)
    assert payload["gamma"] == pytest.approx(1.2)
    assert payload["theta1"] == pytest.approx(0.8)
    assert payload["J"] == pytest.approx(1.5)
