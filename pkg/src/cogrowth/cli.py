"""Command-line pipelines: walk, estimate, convert, rfun, oracle, model, diagnose.

Every invocation writes its outputs next to a ``<name>.manifest.json`` that
captures the resolved parameters, input digests, seeds and the exact argv;
re-running that argv reproduces the CSVs byte for byte.

Exit codes: 0 success, 2 input/parse error, 3 wrong-group warning (with
--strict), 4 divergence abort (word-length cap hit, suspected beta > beta_c),
5 coverage gap in estimation, 6 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import __version__, estimator, oracle, series
from .presentation import Presentation, PresentationError, builtin_presentation, parse_presentation
from .rng import derive_seed
from .walker import (
    WalkParams,
    diagnose_relator_balance,
    load_record,
    run_grid,
    save_record,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_WRONG_GROUP = 3
EXIT_DIVERGENCE = 4
EXIT_COVERAGE_GAP = 5
EXIT_IO = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(out_base: Path, subcommand: str, args_dict: dict,
                    inputs: list[Path], outputs: list[Path], started: float,
                    extra: dict | None = None, argv: list[str] | None = None) -> Path:
    manifest = {
        "tool": "cogrowth",
        "version": __version__,
        "subcommand": subcommand,
        "argv": argv if argv is not None else sys.argv[1:],
        "parameters": args_dict,
        "input_digests": {str(p): _sha256(p) for p in inputs},
        "outputs": [str(p) for p in outputs],
        "wall_seconds": time.perf_counter() - started,
    }
    if extra:
        manifest.update(extra)
    path = out_base.parent / (out_base.name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def _resolve_presentation(args) -> tuple[Presentation, list[Path]]:
    inputs: list[Path] = []
    if getattr(args, "presentation_file", None):
        path = Path(args.presentation_file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise CliError(f"cannot read presentation file: {exc}", EXIT_IO)
        inputs.append(path)
        return parse_presentation(text), inputs
    if getattr(args, "preset", None):
        parts = args.preset.replace("_", "-").split(":")
        name = parts[0]
        if name == "bs":
            if len(parts) != 3 or parts[1] != "1":
                raise CliError("bs preset is spelled bs:1:N", EXIT_PARSE)
            return builtin_presentation("bs", int(parts[2])), inputs
        n = int(parts[1]) if len(parts) > 1 else None
        return builtin_presentation(name, n), inputs
    raise CliError("need --preset or --presentation-file", EXIT_PARSE)


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def cmd_walk(args) -> int:
    started = time.perf_counter()
    pres, inputs = _resolve_presentation(args)
    alphas = _parse_float_list(args.alpha)
    betas = _parse_float_list(args.beta)
    base = WalkParams(
        alpha=alphas[0],
        beta=betas[0],
        steps=int(float(args.steps)),
        segments=args.segments,
        seed=args.seed,
        sampling_stride=args.stride,
        max_word_len=int(float(args.max_word_len)),
        target_insertions=int(float(args.target_insertions)),
        trace_every=int(float(args.trace_every)),
    )
    grid = []
    for a in alphas:
        for b in betas:
            seed = base.seed if len(alphas) * len(betas) == 1 else derive_seed(base.seed, len(grid))
            grid.append(replace(base, alpha=a, beta=b, seed=seed))
    records = run_grid(pres, grid, threads=args.threads)

    out_base = Path(args.out_dir) / args.out
    out_base.parent.mkdir(parents=True, exist_ok=True)
    outputs = []
    wrong_group = False
    diverged = False
    for i, rec in enumerate(records):
        name = out_base if len(records) == 1 else Path(f"{out_base}_{i:03d}")
        csv_path, json_path = save_record(rec, name)
        outputs += [csv_path, json_path]
        report = diagnose_relator_balance(rec, floor=args.balance_floor)
        tag = f"[{name.name}] alpha={rec.params.alpha} beta={rec.params.beta}"
        print(f"{tag}: {rec.steps_done} steps, mean length {rec.mean_length():.2f}")
        print(report.render())
        if rec.aborted:
            diverged = True
            print(f"{tag}: DIVERGENCE ABORT: word length exceeded "
                  f"{rec.params.max_word_len} (suspected beta > beta_c)")
        wrong_group |= report.wrong_group
    _write_manifest(out_base, "walk", {
        "presentation": pres.render(),
        "presentation_digest": pres.digest(),
        "grid": [p.to_dict() for p in grid],
        "balance_floor": args.balance_floor,
    }, inputs, outputs, started, argv=args.invoked_argv, extra={
        "walks": [
            {
                "alpha": rec.params.alpha,
                "beta": rec.params.beta,
                "seed": rec.params.seed,
                "steps_done": rec.steps_done,
                "runtime_seconds": rec.runtime_seconds,
                "steps_per_second": rec.steps_done / max(rec.runtime_seconds, 1e-9),
                "aborted": rec.aborted,
            }
            for rec in records
        ],
    })
    if diverged:
        return EXIT_DIVERGENCE
    if args.strict and wrong_group:
        return EXIT_WRONG_GROUP
    return EXIT_OK


def cmd_estimate(args) -> int:
    started = time.perf_counter()
    paths = [Path(p) for p in args.records]
    try:
        records = [load_record(p) for p in paths]
    except OSError as exc:
        raise CliError(f"cannot read walk record: {exc}", EXIT_IO)
    digests = {r.presentation_digest for r in records}
    if len(digests) != 1:
        raise CliError("walk records come from different presentations", EXIT_PARSE)
    aborted = [p.name for p, r in zip(paths, records) if r.aborted]
    if aborted and not args.allow_aborted:
        raise CliError(
            f"records {aborted} come from aborted (divergent) walks; "
            "pass --allow-aborted to use them anyway", EXIT_PARSE)
    anchors = estimator.load_anchors_csv(args.anchors_file) if args.anchors_file else None
    result = estimator.errr_estimate(
        records,
        window=args.window,
        cutoff=args.cutoff,
        max_len=args.max_len,
        burn_in_segments=args.burn_in_segments,
        anchors=anchors,
    )
    out_base = Path(args.out_dir) / args.out
    out_base.parent.mkdir(parents=True, exist_ok=True)
    est_path = out_base.parent / (out_base.name + ".estimates.csv")
    gamma_path = out_base.parent / (out_base.name + ".gamma.csv")
    estimator.write_estimates_csv(est_path, result.estimates)
    gammas = estimator.gamma_series(result.estimates) if result.estimates else []
    estimator.write_gamma_csv(gamma_path, gammas)
    _write_manifest(out_base, "estimate", {
        "window": args.window, "cutoff": args.cutoff, "max_len": args.max_len,
        "burn_in_segments": args.burn_in_segments,
        "n_records": len(records),
    }, paths, [est_path, gamma_path], started, argv=args.invoked_argv)
    print(f"estimated c_n up to n={result.last_m} from {len(records)} walks -> {est_path}")
    if result.message:
        print(result.message)
    if result.halted_on_gap:
        return EXIT_COVERAGE_GAP
    return EXIT_OK


def cmd_convert(args) -> int:
    started = time.perf_counter()
    path = Path(args.coeffs)
    try:
        values, log_scale = series.read_coeffs_csv(path)
    except OSError as exc:
        raise CliError(f"cannot read coefficients: {exc}", EXIT_IO)
    if log_scale:
        raise CliError("series conversion needs exact coefficients, not log-scale", EXIT_PARSE)
    order = args.order if args.order is not None else len(values) - 1
    poly = series.SeriesPoly.from_values(values[: order + 1], args.p)
    out = (series.cogrowth_from_reduced(poly) if args.direction == "c2d"
           else series.reduced_from_cogrowth(poly))
    out_path = Path(args.out_dir) / args.out
    out_path.parent.mkdir(parents=True, exist_ok=True)
    series.write_coeffs_csv(out_path, [str(v) for v in out.coefficients])
    _write_manifest(out_path, "convert", {
        "direction": args.direction, "p": args.p, "order": order,
    }, [path], [out_path], started, argv=args.invoked_argv)
    print(f"{args.direction} conversion at p={args.p}, order {order} -> {out_path}")
    return EXIT_OK


def cmd_rfun(args) -> int:
    started = time.perf_counter()
    path = Path(args.coeffs)
    try:
        values, log_scale = series.read_coeffs_csv(path)
    except OSError as exc:
        raise CliError(f"cannot read coefficients: {exc}", EXIT_IO)
    even = values[::2]
    limit_sq = (Fraction(args.limit_root) ** 2 if not log_scale
                else float(args.limit_root) ** 2)
    table = series.r_function(even, limit_sq, n_max=args.n_max, log_scale=log_scale)
    out_path = Path(args.out_dir) / args.out
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w") as fh:
        fh.write("n,R_n\n")
        for n, k in sorted(table.values.items()):
            fh.write(f"{n},{'beyond-horizon' if k is None else k}\n")
    _write_manifest(out_path, "rfun", {
        "limit_root": args.limit_root, "n_max": args.n_max, "log_scale": log_scale,
        "skipped_k": list(table.skipped),
    }, [path], [out_path], started, argv=args.invoked_argv)
    if table.skipped:
        print(f"note: skipped k={list(table.skipped)} (zero coefficients in scan range)")
    print(f"R table for n<=[{args.n_max}] -> {out_path}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    started = time.perf_counter()
    max_len = int(float(args.max_len))
    if args.group == "f-paper":
        if args.kind != "c":
            raise CliError("f-paper provides reduced (c) coefficients only", EXIT_PARSE)
        table = oracle.paper_exact_f_table()
    else:
        solver = oracle.solver_for(args.group)
        table = (oracle.enumerate_reduced_cogrowth(solver, max_len) if args.kind == "c"
                 else oracle.dp_return_counts(solver, max_len))
    out_path = Path(args.out_dir) / args.out
    out_path.parent.mkdir(parents=True, exist_ok=True)
    oracle.write_table_csv(out_path, table)
    _write_manifest(out_path, "oracle", {
        "group": args.group, "kind": args.kind, "max_len": max_len,
        "horizon": table.horizon, "partial": table.partial,
    }, [], [out_path], started, argv=args.invoked_argv)
    if table.partial:
        print(f"budget exceeded: partial table up to n={table.horizon}")
    print(f"{args.kind}_n for {args.group} -> {out_path}")
    return EXIT_OK


def cmd_model(args) -> int:
    started = time.perf_counter()
    max_len = int(float(args.max_len))
    log_c = series.model_cogrowth(args.q, args.p, max_len)
    log_w = series.model_weight_curve(args.q, args.p, args.alpha, args.beta, max_len)
    out_path = Path(args.out_dir) / args.out
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w") as fh:
        fh.write("n,log_c,log_weight\n")
        for n in range(max_len + 1):
            fh.write(f"{n},{float(log_c[n])!r},{float(log_w[n])!r}\n")
    _write_manifest(out_path, "model", {
        "q": args.q, "p": args.p, "alpha": args.alpha, "beta": args.beta,
        "max_len": max_len,
    }, [], [out_path], started, argv=args.invoked_argv)
    print(f"model curve (q={args.q}, p={args.p}) -> {out_path}")
    return EXIT_OK


def cmd_diagnose(args) -> int:
    try:
        rec = load_record(Path(args.record))
    except OSError as exc:
        raise CliError(f"cannot read walk record: {exc}", EXIT_IO)
    report = diagnose_relator_balance(rec, floor=args.balance_floor)
    print(f"record {args.record}: alpha={rec.params.alpha} beta={rec.params.beta} "
          f"steps={rec.steps_done}")
    print(report.render())
    if args.strict and report.wrong_group:
        return EXIT_WRONG_GROUP
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogrowth",
        description="Metropolis walks on trivial words and cogrowth-coefficient estimation",
    )
    parser.add_argument("--version", action="version", version=f"cogrowth {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out-dir", default=".", help="directory for outputs")
        p.add_argument("--strict", action="store_true",
                       help="nonzero exit on wrong-group warnings")

    w = sub.add_parser("walk", help="run one walk or a parameter grid")
    add_common(w)
    w.add_argument("--preset", help="builtin presentation, e.g. zk:2, bs:1:7, "
                                    "trivial-family:3, thompson-f, surface2, braid3")
    w.add_argument("--presentation-file", help="file in the gens/rels grammar")
    w.add_argument("--alpha", default="0.0", help="alpha value or comma list (grid)")
    w.add_argument("--beta", default="0.3", help="beta value or comma list (grid)")
    w.add_argument("--steps", default="1e6")
    w.add_argument("--segments", type=int, default=10)
    w.add_argument("--seed", type=int, default=1)
    w.add_argument("--stride", type=int, default=1)
    w.add_argument("--max-word-len", default="1e6")
    w.add_argument("--target-insertions", default="0",
                   help="stop after this many accepted insertions (0 = run all steps)")
    w.add_argument("--trace-every", default="0",
                   help="also record the current length every k steps to a trace CSV")
    w.add_argument("--threads", type=int, default=1)
    w.add_argument("--balance-floor", type=float, default=0.001)
    w.add_argument("--out", default="walk")
    w.set_defaults(func=cmd_walk)

    e = sub.add_parser("estimate", help="run the recursive estimator over walk records")
    add_common(e)
    e.add_argument("records", nargs="+", help="walk record CSVs (sidecar JSONs expected)")
    e.add_argument("--window", type=int, default=100)
    e.add_argument("--cutoff", type=float, default=0.10)
    e.add_argument("--max-len", type=int, default=100)
    e.add_argument("--burn-in-segments", type=int, default=1)
    e.add_argument("--anchors-file", help="CSV n,value[,rel_error] of known coefficients")
    e.add_argument("--allow-aborted", action="store_true")
    e.add_argument("--out", default="errr")
    e.set_defaults(func=cmd_estimate)

    c = sub.add_parser("convert", help="exact series conversion between c_n and d_n")
    add_common(c)
    c.add_argument("--direction", choices=("c2d", "d2c"), required=True)
    c.add_argument("--p", type=int, required=True, help="half the generating-set size")
    c.add_argument("--coeffs", required=True, help="input coefficient CSV (n,value_exact)")
    c.add_argument("--order", type=int, default=None)
    c.add_argument("--out", default="converted.csv")
    c.set_defaults(func=cmd_convert)

    r = sub.add_parser("rfun", help="ratio-crossing table R(n) from a coefficient CSV")
    add_common(r)
    r.add_argument("--coeffs", required=True)
    r.add_argument("--limit-root", required=True,
                   help="the limiting growth rate C (or D); squared internally")
    r.add_argument("--n-max", type=int, default=100)
    r.add_argument("--out", default="rfun.csv")
    r.set_defaults(func=cmd_rfun)

    o = sub.add_parser("oracle", help="exact desk-scale tables by enumeration or DP")
    add_common(o)
    o.add_argument("--group", required=True,
                   help="zk:K, free:K, bs:1:N, trivial-family:N, or f-paper")
    o.add_argument("--kind", choices=("c", "d"), required=True)
    o.add_argument("--max-len", default="10")
    o.add_argument("--out", default="oracle.csv")
    o.set_defaults(func=cmd_oracle)

    m = sub.add_parser("model", help="hypothetical cogrowth model curves")
    add_common(m)
    m.add_argument("--q", type=float, required=True)
    m.add_argument("--p", type=float, required=True)
    m.add_argument("--alpha", type=float, default=0.0)
    m.add_argument("--beta", type=float, default=0.335)
    m.add_argument("--max-len", default="300")
    m.add_argument("--out", default="model.csv")
    m.set_defaults(func=cmd_model)

    d = sub.add_parser("diagnose", help="relator-balance report for a saved record")
    add_common(d)
    d.add_argument("record", help="walk record CSV")
    d.add_argument("--balance-floor", type=float, default=0.001)
    d.set_defaults(func=cmd_diagnose)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.invoked_argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except PresentationError as exc:
        print(f"presentation error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE if isinstance(exc, ValueError) else EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
