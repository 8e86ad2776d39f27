import json
import math
from pathlib import Path

import pytest

from cogrowth.cli import (
    EXIT_COVERAGE_GAP,
    EXIT_DIVERGENCE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_WRONG_GROUP,
    main,
)


def run(tmp_path, *argv):
    return main([a.format(out=str(tmp_path)) if "{out}" in a else a for a in argv])


def test_walk_writes_record_diagnostics_and_manifest(tmp_path, capsys):
    code = main(["walk", "--preset", "zk:2", "--alpha", "0.5", "--beta", "0.25",
                 "--steps", "2e5", "--segments", "5", "--seed", "11",
                 "--max-word-len", "1e4", "--out-dir", str(tmp_path), "--out", "w"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "mean length" in out and "relator" in out
    assert (tmp_path / "w.csv").exists()
    assert (tmp_path / "w.json").exists()
    manifest = json.loads((tmp_path / "w.manifest.json").read_text())
    assert manifest["subcommand"] == "walk"
    assert manifest["parameters"]["grid"][0]["beta"] == 0.25
    assert manifest["argv"][0] == "walk" or manifest["argv"] == []  # argv captured from sys.argv


def test_walk_reruns_are_byte_identical(tmp_path):
    args = ["walk", "--preset", "thompson-f", "--alpha", "3", "--beta", "0.3",
            "--steps", "1e5", "--segments", "5", "--seed", "42",
            "--max-word-len", "1e4"]
    assert main(args + ["--out-dir", str(tmp_path / "r1"), "--out", "w"]) == EXIT_OK
    assert main(args + ["--out-dir", str(tmp_path / "r2"), "--out", "w"]) == EXIT_OK
    a = (tmp_path / "r1" / "w.csv").read_bytes()
    b = (tmp_path / "r2" / "w.csv").read_bytes()
    assert a == b


def test_walk_grid_fanout(tmp_path):
    code = main(["walk", "--preset", "zk:2", "--alpha", "0,1", "--beta", "0.2,0.25",
                 "--steps", "1e4", "--segments", "2", "--seed", "5",
                 "--max-word-len", "1e4", "--threads", "2",
                 "--out-dir", str(tmp_path), "--out", "g"])
    assert code == EXIT_OK
    csvs = sorted(tmp_path.glob("g_*.csv"))
    assert len(csvs) == 4
    sidecars = [json.loads(p.with_suffix(".json").read_text()) for p in csvs]
    assert len({s["params"]["seed"] for s in sidecars}) == 4


def test_walk_divergence_exit_code(tmp_path, capsys):
    code = main(["walk", "--preset", "zk:2", "--alpha", "0", "--beta", "0.6",
                 "--steps", "1e6", "--segments", "2", "--seed", "3",
                 "--max-word-len", "1e3", "--out-dir", str(tmp_path), "--out", "d"])
    assert code == EXIT_DIVERGENCE
    assert "DIVERGENCE ABORT" in capsys.readouterr().out


def test_walk_strict_wrong_group_exit_code(tmp_path, capsys):
    code = main(["walk", "--preset", "trivial-family:15", "--alpha", "1", "--beta", "0.3",
                 "--steps", "2e5", "--segments", "5", "--seed", "1", "--strict",
                 "--max-word-len", "1e4", "--out-dir", str(tmp_path), "--out", "t"])
    assert code == EXIT_WRONG_GROUP
    assert "WRONG-GROUP" in capsys.readouterr().out


def test_walk_presentation_file_and_parse_error(tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("gens: a b ; rels: abAB\n")
    code = main(["walk", "--presentation-file", str(src), "--steps", "1e4",
                 "--segments", "2", "--beta", "0.2", "--out-dir", str(tmp_path), "--out", "f"])
    assert code == EXIT_OK
    bad = tmp_path / "bad.txt"
    bad.write_text("gens: a ; rels: aA\n")
    code = main(["walk", "--presentation-file", str(bad), "--steps", "1e4",
                 "--segments", "2", "--out-dir", str(tmp_path), "--out", "x"])
    assert code == EXIT_PARSE


def test_estimate_pipeline_recovers_z2_coefficients(tmp_path):
    """End to end: walk zk:2, estimate, compare c_4 and c_6 with enumeration."""
    code = main(["walk", "--preset", "zk:2", "--alpha", "0", "--beta", "0.28",
                 "--steps", "4e6", "--segments", "10", "--seed", "2718",
                 "--max-word-len", "1e4", "--out-dir", str(tmp_path), "--out", "w"])
    assert code == EXIT_OK
    code = main(["estimate", str(tmp_path / "w.csv"), "--max-len", "8",
                 "--out-dir", str(tmp_path), "--out", "e"])
    assert code == EXIT_OK
    rows = {}
    lines = (tmp_path / "e.estimates.csv").read_text().splitlines()
    for line in lines[1:]:
        parts = line.split(",")
        rows[int(parts[0])] = (float(parts[1]), float(parts[3]))
    logc4, err4 = rows[4]
    assert math.exp(logc4) == pytest.approx(8.0, rel=max(3 * err4, 0.02))
    logc6, err6 = rows[6]
    assert math.exp(logc6) == pytest.approx(40.0, rel=max(3 * err6, 0.02))
    gamma_lines = (tmp_path / "e.gamma.csv").read_text().splitlines()
    assert gamma_lines[0] == "n,gamma_n,gamma_err,lower,upper"
    assert json.loads((tmp_path / "e.manifest.json").read_text())["subcommand"] == "estimate"


def test_estimate_rejects_mixed_presentations(tmp_path):
    for preset, name in (("zk:2", "a"), ("braid3", "b")):
        main(["walk", "--preset", preset, "--alpha", "0", "--beta", "0.2",
              "--steps", "1e4", "--segments", "2", "--seed", "1",
              "--out-dir", str(tmp_path), "--out", name])
    code = main(["estimate", str(tmp_path / "a.csv"), str(tmp_path / "b.csv"),
                 "--out-dir", str(tmp_path), "--out", "e"])
    assert code == EXIT_PARSE


def test_estimate_coverage_gap_exit(tmp_path):
    main(["walk", "--preset", "thompson-f", "--alpha", "3", "--beta", "0.3",
          "--steps", "2e5", "--segments", "4", "--seed", "9",
          "--max-word-len", "1e4", "--out-dir", str(tmp_path), "--out", "w"])
    # window 2 leaves even-parity targets without anchors: halts straight away
    code = main(["estimate", str(tmp_path / "w.csv"), "--window", "2",
                 "--max-len", "20", "--out-dir", str(tmp_path), "--out", "e"])
    assert code == EXIT_COVERAGE_GAP


def test_convert_round_trip_via_files(tmp_path):
    coeffs = tmp_path / "d.csv"
    coeffs.write_text("n,value_exact\n" + "\n".join(
        f"{n},{v}" for n, v in enumerate([1, 0, 4, 0, 36, 0, 400])) + "\n")
    code = main(["convert", "--direction", "d2c", "--p", "2", "--coeffs", str(coeffs),
                 "--out-dir", str(tmp_path), "--out", "c.csv"])
    assert code == EXIT_OK
    lines = (tmp_path / "c.csv").read_text().splitlines()
    assert lines[0] == "n,value_exact"
    values = [line.split(",")[1] for line in lines[1:]]
    assert values == ["1", "0", "0", "0", "8", "0", "40"]


def test_rfun_trivial_group_all_zero(tmp_path):
    S = 4
    coeffs = tmp_path / "c.csv"
    rows = [1] + [S * (S - 1) ** (k - 1) for k in range(1, 13)]
    coeffs.write_text("n,value_exact\n" + "\n".join(f"{n},{v}" for n, v in enumerate(rows)) + "\n")
    code = main(["rfun", "--coeffs", str(coeffs), "--limit-root", "3",
                 "--n-max", "10", "--out-dir", str(tmp_path), "--out", "r.csv"])
    assert code == EXIT_OK
    lines = (tmp_path / "r.csv").read_text().splitlines()[1:]
    assert all(line.endswith(",0") for line in lines)
    assert len(lines) == 10


def test_oracle_subcommand(tmp_path):
    code = main(["oracle", "--group", "zk:2", "--kind", "c", "--max-len", "6",
                 "--out-dir", str(tmp_path), "--out", "o.csv"])
    assert code == EXIT_OK
    lines = (tmp_path / "o.csv").read_text().splitlines()
    values = {int(l.split(",")[0]): int(l.split(",")[1]) for l in lines[1:]}
    assert values == {0: 1, 1: 0, 2: 0, 3: 0, 4: 8, 5: 0, 6: 40}
    code = main(["oracle", "--group", "f-paper", "--kind", "c", "--max-len", "48",
                 "--out-dir", str(tmp_path), "--out", "f.csv"])
    assert code == EXIT_OK
    ftab = (tmp_path / "f.csv").read_text()
    assert "10,20,c,thompson_f" in ftab


def test_model_subcommand(tmp_path):
    code = main(["model", "--q", "1", "--p", "0.39", "--alpha", "0", "--beta", "0.335",
                 "--max-len", "300", "--out-dir", str(tmp_path), "--out", "m.csv"])
    assert code == EXIT_OK
    lines = (tmp_path / "m.csv").read_text().splitlines()
    assert lines[0] == "n,log_c,log_weight"
    assert len(lines) == 302
    weights = [float(l.split(",")[2]) for l in lines[1:]]
    diffs = [b - a for a, b in zip(weights[1:], weights[2:])]
    assert max(diffs) > 0 > min(diffs)  # the hump


def test_diagnose_subcommand(tmp_path, capsys):
    main(["walk", "--preset", "trivial-family:1", "--alpha", "1", "--beta", "0.3",
          "--steps", "1e5", "--segments", "4", "--seed", "2",
          "--out-dir", str(tmp_path), "--out", "w"])
    capsys.readouterr()
    code = main(["diagnose", str(tmp_path / "w.csv")])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "share" in out


def test_unknown_preset_is_parse_error(tmp_path):
    code = main(["walk", "--preset", "nope:3", "--steps", "1e4", "--segments", "2",
                 "--out-dir", str(tmp_path), "--out", "w"])
    assert code == EXIT_PARSE


def test_estimate_with_anchors_file(tmp_path):
    main(["walk", "--preset", "zk:2", "--alpha", "0", "--beta", "0.28",
          "--steps", "1e6", "--segments", "10", "--seed", "2718",
          "--max-word-len", "1e4", "--out-dir", str(tmp_path), "--out", "w"])
    anchors = tmp_path / "anchors.csv"
    anchors.write_text("n,value\n4,8\n")  # pin the exact c_4
    code = main(["estimate", str(tmp_path / "w.csv"), "--max-len", "6",
                 "--anchors-file", str(anchors),
                 "--out-dir", str(tmp_path), "--out", "e"])
    assert code == EXIT_OK
    lines = (tmp_path / "e.estimates.csv").read_text().splitlines()
    row4 = next(l for l in lines if l.startswith("4,"))
    assert float(row4.split(",")[3]) == 0.0  # pinned anchors carry zero error
    assert abs(math.exp(float(row4.split(",")[1])) - 8.0) < 1e-9
