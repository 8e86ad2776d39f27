#!/usr/bin/env python3
"""Run a walk grid on Thompson's group F and estimate its cogrowth coefficients.

Desk-scale variant of the published 60-walk experiment.  Writes walk records,
estimate/gamma CSVs, and a comparison table against the known exact values.

Usage:
    python scripts/run_f_grid.py --out-dir runs/f_grid [--steps 2e8] [--max-len 48]
"""

import argparse
import math
import sys
import time
from pathlib import Path

from cogrowth.estimator import errr_estimate, gamma_series, write_estimates_csv, write_gamma_csv
from cogrowth.oracle import paper_exact_f_table
from cogrowth.presentation import builtin_presentation
from cogrowth.rng import derive_seed
from cogrowth.walker import WalkParams, run_walk, save_record


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("runs/f_grid"))
    ap.add_argument("--steps", default="2e8", help="steps per walk")
    ap.add_argument("--alphas", default="3,13,23")
    ap.add_argument("--betas", default="0.28,0.29,0.30,0.31")
    ap.add_argument("--max-len", type=int, default=48)
    ap.add_argument("--seed", type=int, default=20260810)
    args = ap.parse_args()

    pres = builtin_presentation("thompson_f")
    alphas = [float(a) for a in args.alphas.split(",")]
    betas = [float(b) for b in args.betas.split(",")]
    steps = int(float(args.steps))
    args.out_dir.mkdir(parents=True, exist_ok=True)

    records = []
    t0 = time.time()
    for i, (a, b) in enumerate((a, b) for a in alphas for b in betas):
        params = WalkParams(alpha=a, beta=b, steps=steps, segments=10,
                            seed=derive_seed(args.seed, i), max_word_len=100_000)
        rec = run_walk(pres, params)
        rec.label = f"a{a:g}_b{b:g}"
        save_record(rec, args.out_dir / f"walk_{rec.label}")
        records.append(rec)
        rate = rec.steps_done / max(rec.runtime_seconds, 1e-9) / 1e6
        print(f"[{i + 1}/{len(alphas) * len(betas)}] alpha={a:g} beta={b:g} "
              f"mean_len={rec.mean_length():.1f} ({rate:.0f}M steps/s)", flush=True)

    result = errr_estimate(records, window=100, cutoff=0.10,
                           max_len=args.max_len, burn_in_segments=1)
    write_estimates_csv(args.out_dir / "estimates.csv", result.estimates)
    write_gamma_csv(args.out_dir / "gamma.csv", gamma_series(result.estimates))

    exact = paper_exact_f_table().values
    print(f"\n{'n':>4} {'estimate':>16} {'exact':>16} {'err%':>8} {'pred%':>8}")
    for est in result.estimates:
        value = math.exp(est.log_value)
        if est.n in exact:
            err = abs(value / exact[est.n] - 1) * 100
            print(f"{est.n:>4} {value:>16.6g} {exact[est.n]:>16.6g} "
                  f"{err:>8.3f} {est.rel_error * 100:>8.2f}")
        else:
            print(f"{est.n:>4} {value:>16.6g} {'-':>16} {'-':>8} {est.rel_error * 100:>8.2f}")
    print(f"\ntotal {time.time() - t0:.0f}s; outputs in {args.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
