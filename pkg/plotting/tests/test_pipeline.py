"""End-to-end: drive the primary CLI for real CSVs, then render them.

These tests exercise the same file-format contract the plotting package
documents; the primary toolkit must be installed (it is a sibling package,
not a dependency -- the interface is the files).
"""

import shutil
import subprocess

import pytest

from cogrowth_plots.cli import main

COGROWTH = shutil.which("cogrowth")
pytestmark = pytest.mark.skipif(COGROWTH is None, reason="primary CLI not on PATH")


def run(*argv):
    proc = subprocess.run([COGROWTH, *argv], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr + proc.stdout
    return proc


def test_gamma_from_real_estimate_pipeline(tmp_path):
    run("walk", "--preset", "zk:2", "--alpha", "0", "--beta", "0.30",
        "--steps", "2e6", "--segments", "10", "--seed", "99",
        "--max-word-len", "1e4", "--out-dir", str(tmp_path), "--out", "w")
    run("estimate", str(tmp_path / "w.csv"), "--max-len", "10",
        "--out-dir", str(tmp_path), "--out", "e")
    out = tmp_path / "gamma.png"
    assert main(["gamma", "--in", str(tmp_path / "e.gamma.csv"), "--out", str(out)]) == 0
    assert out.exists() and out.stat().st_size > 2000


def test_beta_sweep_from_real_walks(tmp_path):
    run("walk", "--preset", "bs:1:7", "--alpha", "3", "--beta",
        "0.30,0.32,0.34", "--steps", "4e5", "--segments", "4", "--seed", "5",
        "--max-word-len", "1e5", "--out-dir", str(tmp_path), "--out", "s")
    csvs = sorted(str(p) for p in tmp_path.glob("s_*.csv"))
    assert len(csvs) == 3
    out = tmp_path / "sweep.png"
    assert main(["beta-sweep", "--in", *csvs, "--out", str(out), "--beta-c", "0.3333"]) == 0
    assert out.exists()


def test_trace_from_real_walk(tmp_path):
    run("walk", "--preset", "bs:1:7", "--alpha", "3", "--beta", "0.34",
        "--steps", "4e5", "--segments", "4", "--seed", "8", "--trace-every", "1000",
        "--max-word-len", "1e5", "--out-dir", str(tmp_path), "--out", "w")
    out = tmp_path / "trace.png"
    assert main(["trace", "--in", str(tmp_path / "w.trace.csv"), "--out", str(out)]) == 0
    assert out.exists()


def test_model_hump_from_primary_model_command(tmp_path):
    for i, p in enumerate(("0.3", "0.39")):
        run("model", "--q", "1", "--p", p, "--alpha", "0", "--beta", "0.335",
            "--max-len", "300", "--out-dir", str(tmp_path), "--out", f"m{i}.csv")
    out = tmp_path / "hump.png"
    assert main(["model-hump", "--in", str(tmp_path / "m0.csv"), str(tmp_path / "m1.csv"),
                 "--out", str(out)]) == 0
    assert out.exists()
