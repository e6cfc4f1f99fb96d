"""Command-line interface: report shapes, exit codes, and error handling."""
from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

C6 = {"n": 6, "edges": [[i, (i + 1) % 6] for i in range(6)], "k": 2}


def run_cli(args, stdin_text=None, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "voronoigame.cli", *args],
        input=stdin_text,
        capture_output=True,
        text=True,
        env=full_env,
    )


@pytest.fixture
def c6_path(tmp_path):
    p = tmp_path / "c6.json"
    p.write_text(json.dumps(C6))
    return str(p)


def test_analyze_report(c6_path):
    proc = run_cli(["analyze", "--instance", c6_path, "--profile", "0,3"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["payoffs"] == ["3", "3"]
    assert report["is_nash"] is True
    assert report["social_cost"] == 4
    assert report["delaunay_edges"] == [[0, 1]]


def test_analyze_not_nash_exits_1(tmp_path):
    p = tmp_path / "p5.json"
    p.write_text(json.dumps(
        {"n": 5, "edges": [[i, i + 1] for i in range(4)], "k": 2}))
    proc = run_cli(["analyze", "--instance", str(p), "--profile", "0,4"])
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["is_nash"] is False


def test_stdin_instance():
    proc = run_cli(["analyze", "--instance", "-", "--profile", "0,3"],
                   stdin_text=json.dumps(C6))
    assert proc.returncode == 0


def test_fractional_payoffs_serialize_as_strings(tmp_path):
    p = tmp_path / "p3.json"
    p.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2]], "k": 2}))
    proc = run_cli(["analyze", "--instance", str(p), "--profile", "0,2"])
    assert json.loads(proc.stdout)["payoffs"] == ["3/2", "3/2"]


def test_equilibria_counts(c6_path):
    proc = run_cli(["equilibria", "--instance", c6_path])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["count"] == 21
    assert len(report["equilibria"]) == 21
    assert report["discrepancy"] == "9/4"


def test_equilibria_none_exits_1(tmp_path):
    p = tmp_path / "c4k3.json"
    p.write_text(json.dumps(
        {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]], "k": 3}))
    proc = run_cli(["equilibria", "--instance", str(p)])
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["equilibria"] == []


def test_dynamics_convergence(c6_path):
    proc = run_cli(["dynamics", "--instance", c6_path, "--start", "0,1"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["outcome"] == "converged"
    assert isinstance(report["trace"], list)


def test_cycle_check_report():
    proc = run_cli(["cycle-check", "--n", "6", "--positions", "0,3"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["nash"] is True and report["violated"] == []
    assert report["gaps"] == [3, 3]


def test_cycle_check_violation_exits_1():
    proc = run_cli(["cycle-check", "--n", "10", "--positions", "0,5,5,5"])
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    assert report["nash"] is False and report["violated"]


def test_reduce_yes_instance():
    proc = run_cli(["reduce", "--m", "2", "--target", "9",
                    "--items", "3,3,3,3,3,3"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["c"] == 21 and report["d"] == 36
    assert report["oracle_partition"] == [[0, 1, 2], [3, 4, 5]]
    assert report["instance"]["n"] == 36


def test_reduce_rejects_bad_items():
    proc = run_cli(["reduce", "--m", "2", "--target", "9",
                    "--items", "1,1,1,1,1,1"])
    assert proc.returncode == 2


def test_family_report():
    proc = run_cli(["family", "--k", "2", "--a", "1", "--b", "1"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["instance"]["n"] == 10
    assert report["cost_low"] == 10 and report["cost_high"] == 12


def test_export_dot(c6_path, tmp_path):
    out = tmp_path / "c6.dot"
    proc = run_cli(["export-dot", "--instance", c6_path,
                    "--profile", "0,3", "--output", str(out)])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["written"] == str(out)
    text = out.read_text()
    assert text.startswith("graph") and "v0" in text


def test_invalid_json_exits_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{broken")
    proc = run_cli(["analyze", "--instance", str(p), "--profile", "0,1"])
    assert proc.returncode == 2


def test_invalid_profile_exits_2(c6_path):
    proc = run_cli(["analyze", "--instance", c6_path, "--profile", "0,9"])
    assert proc.returncode == 2


def test_missing_file_exits_2():
    proc = run_cli(["analyze", "--instance", "/nonexistent.json",
                    "--profile", "0,1"])
    assert proc.returncode == 2


def test_budget_env_var_exits_3(c6_path):
    proc = run_cli(["equilibria", "--instance", c6_path],
                   env={"VGG_BUDGET": "2"})
    assert proc.returncode == 3
    assert json.loads(proc.stdout)["error"] == "budget exceeded"


def test_budget_flag_overrides_env(c6_path):
    proc = run_cli(["equilibria", "--instance", c6_path, "--budget", "1000"],
                   env={"VGG_BUDGET": "2"})
    assert proc.returncode == 0


def test_single_json_object_per_invocation(c6_path):
    proc = run_cli(["equilibria", "--instance", c6_path])
    assert proc.stdout.endswith("\n")
    json.loads(proc.stdout)  # a single well-formed object
