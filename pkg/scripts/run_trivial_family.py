#!/usr/bin/env python3
"""Relator-starvation study on the trivial-group family <a,b | aba=bab, a^n=b^(n+1)>.

Every member presents the trivial group, but as n grows the long relator is
accepted ever more rarely and the walk effectively samples the braid-group
sub-presentation.  This reproduces the accepted-insertion decline and prints
the per-n breakdown.

Usage:
    python scripts/run_trivial_family.py --n-values 1..8,15 --insertions 1e6
"""

import argparse
import sys
import time
from pathlib import Path

from cogrowth.presentation import builtin_presentation
from cogrowth.walker import WalkParams, diagnose_relator_balance, run_walk, save_record


def parse_n_values(spec: str) -> list[int]:
    out: list[int] = []
    for tok in spec.split(","):
        if ".." in tok:
            a, b = tok.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(tok))
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-values", default="1..8,15")
    ap.add_argument("--insertions", default="1e6", help="accepted insertions per walk")
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--beta", type=float, default=0.30)
    ap.add_argument("--out-dir", type=Path, default=Path("runs/trivial_family"))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    target = int(float(args.insertions))
    print(f"{'n':>3} {'steps':>12} {'short rel':>12} {'long rel':>12} {'long share':>11}")
    for n in parse_n_values(args.n_values):
        pres = builtin_presentation("trivial_family", n)
        params = WalkParams(alpha=args.alpha, beta=args.beta, steps=500 * target,
                            segments=10, seed=33 * n + 1, max_word_len=50_000,
                            target_insertions=target)
        t0 = time.time()
        rec = run_walk(pres, params)
        save_record(rec, args.out_dir / f"n{n:02d}")
        report = diagnose_relator_balance(rec)
        flag = "  <-- WRONG-GROUP warning" if report.wrong_group else ""
        print(f"{n:>3} {rec.steps_done:>12.3e} {rec.relator_acceptance[0]:>12} "
              f"{rec.relator_acceptance[1]:>12} {report.shares[1]:>11.5f}{flag}"
              f"   ({time.time() - t0:.0f}s)", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
