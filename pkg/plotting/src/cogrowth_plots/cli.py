"""cogrowth-plot <kind> --in <csv...> --out <img>"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import plots, readers


def cmd_beta_sweep(args):
    walks = [readers.load_walk_summary(p) for p in args.inputs]
    fig, _ = plots.plot_beta_sweep(walks, beta_c=args.beta_c)
    return fig


def cmd_trace(args):
    fig, _ = plots.plot_trace([readers.load_trace(p) for p in args.inputs])
    return fig


def cmd_model_hump(args):
    fig, _ = plots.plot_model_hump([readers.load_model_curve(p) for p in args.inputs])
    return fig


def cmd_gamma(args):
    if len(args.inputs) != 1:
        raise readers.InputError("gamma plot takes exactly one estimates gamma CSV")
    fig, _ = plots.plot_gamma(readers.load_gamma(args.inputs[0]), hlines=args.hline)
    return fig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cogrowth-plot",
                                     description="render figures from cogrowth CSV outputs")
    sub = parser.add_subparsers(dest="kind", required=True)

    def common(p):
        p.add_argument("--in", dest="inputs", nargs="+", required=True)
        p.add_argument("--out", required=True, help="output image (.png or .svg)")

    b = sub.add_parser("beta-sweep", help="mean word length against beta")
    common(b)
    b.add_argument("--beta-c", type=float, default=None,
                   help="draw a vertical reference line at this beta")
    b.set_defaults(func=cmd_beta_sweep)

    t = sub.add_parser("trace", help="word length against step count")
    common(t)
    t.set_defaults(func=cmd_trace)

    m = sub.add_parser("model-hump", help="model visit-weight curves")
    common(m)
    m.set_defaults(func=cmd_model_hump)

    g = sub.add_parser("gamma", help="n-th root estimates with error band")
    common(g)
    g.add_argument("--hline", type=float, action="append",
                   help="horizontal reference line (repeatable), e.g. known bounds")
    g.set_defaults(func=cmd_gamma)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fig = args.func(args)
    except readers.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
