"""The four figure kinds: beta-sweep, trace, model-hump, gamma.

Each function takes already-loaded data plus an axes object, so the CSV
parsing (with header validation) lives in :mod:`cogrowth_plots.readers` and
the functions stay testable without touching the filesystem.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .readers import GammaTable, ModelCurve, TraceData, WalkSummary


def plot_beta_sweep(walks: list[WalkSummary], beta_c: float | None = None):
    """Mean visited word length against beta, one point per walk."""
    if len({w.beta for w in walks}) < 1 or not walks:
        raise ValueError("beta sweep needs at least one walk record")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    alphas = sorted({w.alpha for w in walks})
    for a in alphas:
        xs = [w.beta for w in walks if w.alpha == a]
        ys = [w.mean_length for w in walks if w.alpha == a]
        ax.scatter(xs, ys, s=22, label=f"alpha = {a:g}")
    diverged = [w for w in walks if w.aborted]
    if diverged:
        ax.scatter([w.beta for w in diverged], [w.mean_length for w in diverged],
                   marker="x", c="red", s=40, label="diverged (length cap)")
    if beta_c is not None:
        ax.axvline(beta_c, color="grey", ls="--", lw=1, label=f"beta_c candidate {beta_c:g}")
    ax.set_xlabel("beta")
    ax.set_ylabel("mean word length")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig, ax


def plot_trace(traces: list[TraceData]):
    """Word length against step count, walks overlaid."""
    if not traces:
        raise ValueError("no trace data")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for t in traces:
        ax.plot(t.steps, t.lengths, lw=0.6, alpha=0.8, label=t.label)
    ax.set_xlabel("step")
    ax.set_ylabel("word length")
    if len(traces) <= 10:
        ax.legend(loc="best", fontsize=7)
    fig.tight_layout()
    return fig, ax


def plot_model_hump(curves: list[ModelCurve]):
    """The visit-weight shapes c_n (n+1)^(1+alpha) beta^n of the model family."""
    if not curves:
        raise ValueError("no model curves")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for c in curves:
        ax.plot(c.n, c.log_weight, lw=1.2, label=c.label)
    ax.set_xlabel("word length n")
    ax.set_ylabel("log weight")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig, ax


def plot_gamma(table: GammaTable, hlines: list[float] | None = None):
    """gamma_n = c_n^(1/n) with its upper/lower bound band."""
    if len(table.n) == 0:
        raise ValueError("empty gamma table")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.fill_between(table.n, table.lower, table.upper, alpha=0.3, color="tab:blue",
                    label="error band")
    ax.plot(table.n, table.gamma, lw=1.0, color="tab:blue", label="gamma_n")
    for y in hlines or []:
        ax.axhline(y, color="grey", ls=":", lw=1)
    ax.set_xlabel("n")
    ax.set_ylabel("n-th root of c_n")
    lo = float(np.min(table.lower))
    hi = float(np.max(table.upper))
    pad = 0.05 * (hi - lo) if hi > lo else 0.1
    ax.set_ylim(lo - pad, hi + pad)
    ax.set_xlim(float(table.n[0]), float(table.n[-1]))
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig, ax
