#!/usr/bin/env python3
"""Sweep beta for a preset and record mean word lengths (divergence scouting).

The classic use is the solvable Baumslag-Solitar family: beta_c = 1/3 for all
of them, yet for larger N the mean length stays finite well past 1/3 -- the
sub-dominant-growth pathology.  Compare `--preset zk:2`, which diverges on cue.

Usage:
    python scripts/run_beta_sweep.py --preset bs:1:7 --alphas 0,3 \
        --betas 0.28:0.40:0.01 --steps 1e7 --out-dir runs/bs17_sweep
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from cogrowth.cli import _resolve_presentation  # noqa: SLF001 - same toolkit
from cogrowth.rng import derive_seed
from cogrowth.walker import WalkParams, run_walk, save_record


def parse_betas(spec: str) -> list[float]:
    if ":" in spec:
        start, stop, step = (float(t) for t in spec.split(":"))
        return [float(b) for b in np.arange(start, stop + step / 2, step)]
    return [float(t) for t in spec.split(",")]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", required=True)
    ap.add_argument("--alphas", default="0,3")
    ap.add_argument("--betas", default="0.28:0.40:0.01")
    ap.add_argument("--steps", default="1e7")
    ap.add_argument("--max-word-len", default="1e5")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out-dir", type=Path, default=Path("runs/sweep"))
    args = ap.parse_args()

    class Shim:
        preset = args.preset
        presentation_file = None

    pres, _ = _resolve_presentation(Shim)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    print(f"presentation: {pres.render()}")

    i = 0
    for alpha in (float(a) for a in args.alphas.split(",")):
        for beta in parse_betas(args.betas):
            params = WalkParams(alpha=alpha, beta=beta, steps=int(float(args.steps)),
                                segments=5, seed=derive_seed(args.seed, i),
                                max_word_len=int(float(args.max_word_len)))
            rec = run_walk(pres, params)
            save_record(rec, args.out_dir / f"walk_{i:03d}")
            state = "DIVERGED" if rec.aborted else f"mean={rec.mean_length():9.2f}"
            print(f"alpha={alpha:g} beta={beta:.3f}: {state}", flush=True)
            i += 1
    print(f"records in {args.out_dir}; plot with: cogrowth-plot beta-sweep "
          f"--in {args.out_dir}/walk_*.csv --out sweep.png --beta-c 0.3333")
    return 0


if __name__ == "__main__":
    sys.exit(main())
