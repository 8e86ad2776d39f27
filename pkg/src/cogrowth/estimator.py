"""Recursive cogrowth-coefficient estimation from walk histograms.

One walk at (alpha, beta) visits length n with stationary probability
proportional to c_n (n+1)^(1+alpha) beta^n, so visit-count ratios convert a
known coefficient into an estimate of another:

    c_m ~= c_n (W_m / W_n) ((n+1)/(m+1))^(1+alpha) beta^(n-m)

and the proportional error of one such step is the sum of the proportional
errors of c_n, W_m and W_n.  The recursion starts from c_0 = 1, walks m
upward respecting the presentation's length parity, pools one candidate per
(record, anchor) pair inside a window behind m, discards tail data below a
per-record height cutoff, and combines candidates by inverse-error weighted
averaging (the combined error is the same weighted average of the candidate
errors, a deliberately conservative choice).

Everything is carried in log space: coefficients reach 1e14 by n = 48 and
the recursion is meant to run to thousands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


from .walker import WalkRecord

_UNUSABLE = None


@dataclass(frozen=True)
class CogrowthEstimate:
    n: int
    log_value: float
    rel_error: float
    provenance: tuple[tuple[str, int], ...] = ()  # (walk label, anchor length)

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    def __post_init__(self):
        if not math.isfinite(self.log_value):
            raise ValueError("estimate must have a finite log value")
        if self.rel_error < 0:
            raise ValueError("relative error must be nonnegative")


@dataclass(frozen=True)
class GammaEstimate:
    n: int
    gamma: float
    gamma_error: float


def wn_with_error(rec: WalkRecord, n: int, burn_in_segments: int = 0):
    """Segment-mean visit count and its standard error, or ``None`` if unusable.

    W_n is the mean of the per-segment tallies x_{i,n}; the error is
    sqrt(var{x_{i,n}} / (M-1)) with the population variance, i.e. the
    standard error of the segment mean.  Lengths never visited in the kept
    segments are unusable rather than an error.
    """
    xs = rec.segment_histogram(n)[burn_in_segments:]
    M = len(xs)
    if M < 2:
        raise ValueError("need at least 2 segments after burn-in")
    if not xs.any():
        return _UNUSABLE
    w = float(xs.mean())
    dw = math.sqrt(float(((xs - w) ** 2).mean()) / (M - 1))
    return w, dw


def estimate_from_anchor(
    anchor: CogrowthEstimate,
    rec: WalkRecord,
    m: int,
    burn_in_segments: int = 0,
) -> CogrowthEstimate | None:
    """One application of the ratio formula from anchor length ``anchor.n`` to ``m``."""
    n = anchor.n
    if m == n:
        return anchor
    wn = wn_with_error(rec, n, burn_in_segments)
    wm = wn_with_error(rec, m, burn_in_segments)
    if wn is _UNUSABLE or wm is _UNUSABLE:
        return None
    (w_n, dw_n), (w_m, dw_m) = wn, wm
    a, b = rec.params.alpha, rec.params.beta
    log_value = (
        anchor.log_value
        + math.log(w_m) - math.log(w_n)
        + (1.0 + a) * (math.log(n + 1) - math.log(m + 1))
        + (n - m) * math.log(b)
    )
    rel_error = anchor.rel_error + dw_m / w_m + dw_n / w_n
    return CogrowthEstimate(
        n=m,
        log_value=log_value,
        rel_error=rel_error,
        provenance=anchor.provenance + ((rec.label or "walk", n),),
    )


def _provenance(cands: list[CogrowthEstimate]) -> tuple[tuple[str, int], ...]:
    return tuple(c.provenance[-1] for c in cands if c.provenance)


def _combine(cands: list[CogrowthEstimate], m: int) -> CogrowthEstimate:
    """Inverse-error weighted average in linear space, done stably via logs."""
    if any(c.rel_error == 0.0 for c in cands):
        exact = [c for c in cands if c.rel_error == 0.0]
        logs = [c.log_value for c in exact]
        peak = max(logs)
        mean = peak + math.log(sum(math.exp(lv - peak) for lv in logs) / len(logs))
        return CogrowthEstimate(m, mean, 0.0, _provenance(exact))
    weights = [1.0 / c.rel_error for c in cands]
    peak = max(c.log_value for c in cands)
    total_w = sum(weights)
    mean = peak + math.log(
        sum(w * math.exp(c.log_value - peak) for w, c in zip(weights, cands)) / total_w
    )
    err = sum(w * c.rel_error for w, c in zip(weights, cands)) / total_w
    return CogrowthEstimate(m, mean, err, _provenance(cands))


@dataclass
class ErrrResult:
    estimates: list[CogrowthEstimate]
    last_m: int                 # largest length with an estimate (0 if none)
    halted_on_gap: bool         # True when reachable data exists beyond a hole
    message: str = ""

    def by_n(self) -> dict[int, CogrowthEstimate]:
        return {e.n: e for e in self.estimates}


def errr_estimate(
    records: list[WalkRecord],
    window: int = 100,
    cutoff: float = 0.10,
    max_len: int = 100,
    burn_in_segments: int = 1,
    anchors: dict[int, CogrowthEstimate] | None = None,
) -> ErrrResult:
    """Run the recursive estimator over one or more walk records.

    For each target length m (in parity steps), a candidate estimate is made
    from every record and every already-estimated anchor n with
    m - window < n < m, skipping (record, length) pairs whose tally falls
    below ``cutoff`` times that record's peak tally.  Candidates are pooled
    by inverse-error weighting.  Lengths nowhere usable are skipped (no
    trivial words of that length, or all data below the cutoff); if a length
    *is* usable somewhere but no anchor lies inside the window, estimation
    halts and the result is flagged as a coverage gap.
    """
    if not records:
        raise ValueError("need at least one walk record")
    if window < 2:
        raise ValueError("window must be >= 2")
    if not 0.0 < cutoff < 1.0:
        raise ValueError("cutoff must lie in (0,1)")
    digests = {r.presentation_digest for r in records}
    if len(digests) != 1:
        raise ValueError("records come from different presentations")

    for i, rec in enumerate(records):
        if not rec.label:
            rec.label = f"walk{i}"

    # per-record usability: cutoff against the record's own peak tally
    usable: list[dict[int, bool]] = []
    max_usable_n = 0
    for rec in records:
        kept = rec.segment_counts[burn_in_segments:]
        totals = kept.sum(axis=0)
        floor = cutoff * totals.max() if totals.size else 0
        ok = {}
        for j, n in enumerate(rec.lengths):
            ok[int(n)] = bool(totals[j] > 0 and totals[j] >= floor)
            if ok[int(n)]:
                max_usable_n = max(max_usable_n, int(n))
        usable.append(ok)

    base = CogrowthEstimate(0, 0.0, 0.0)  # c_0 = 1 exactly
    estimates: dict[int, CogrowthEstimate] = {0: base}
    pinned = set()
    if anchors:
        for n, est in anchors.items():
            estimates[n] = est
            pinned.add(n)

    parity_step = 2 if records[0].parity_even else 1
    out: list[CogrowthEstimate] = []
    halted_on_gap = False
    message = ""
    last_m = 0

    for m in range(parity_step, max_len + 1, parity_step):
        if m in pinned:
            out.append(estimates[m])
            last_m = m
            continue
        cands: list[CogrowthEstimate] = []
        m_visible = False
        for rec, ok in zip(records, usable):
            if not ok.get(m, False):
                continue
            m_visible = True
            for n in range(max(0, m - window + 1), m):
                if n not in estimates or not ok.get(n, False):
                    continue
                cand = estimate_from_anchor(estimates[n], rec, m, burn_in_segments)
                if cand is not None:
                    cands.append(cand)
        if cands:
            est = _combine(cands, m)
            estimates[m] = est
            out.append(est)
            last_m = m
        elif m_visible:
            halted_on_gap = True
            message = (
                f"coverage gap at length {m}: data exists but no usable anchor lies "
                f"within the window; last completed length is {last_m}"
            )
            break
        elif m > max_usable_n:
            message = f"no usable data beyond length {max_usable_n}"
            break
    return ErrrResult(out, last_m, halted_on_gap, message)


def gamma_series(estimates: list[CogrowthEstimate]) -> list[GammaEstimate]:
    """n-th roots gamma_n = c_n^(1/n) with errors via d(gamma)/gamma = (1/n) dc/c."""
    if not estimates:
        raise ValueError("no estimates to take roots of")
    out = []
    for e in estimates:
        if e.n == 0:
            continue
        gamma = math.exp(e.log_value / e.n)
        out.append(GammaEstimate(e.n, gamma, gamma * e.rel_error / e.n))
    return out


# ---------------------------------------------------------------------------
# CSV output shared by the CLI and the plotting package

def write_estimates_csv(path, estimates: list[CogrowthEstimate]) -> None:
    gammas = {g.n: g for g in gamma_series(estimates)} if estimates else {}
    with open(path, "w") as fh:
        fh.write("n,log_c_n,c_n,rel_error,gamma_n,gamma_err,n_candidates\n")
        for e in estimates:
            g = gammas[e.n]
            fh.write(
                f"{e.n},{e.log_value!r},{math.exp(e.log_value):.5e},{e.rel_error!r},"
                f"{g.gamma!r},{g.gamma_error!r},{len(e.provenance)}\n"
            )


def write_gamma_csv(path, gammas: list[GammaEstimate]) -> None:
    with open(path, "w") as fh:
        fh.write("n,gamma_n,gamma_err,lower,upper\n")
        for g in gammas:
            fh.write(
                f"{g.n},{g.gamma!r},{g.gamma_error!r},"
                f"{g.gamma - g.gamma_error!r},{g.gamma + g.gamma_error!r}\n"
            )


def load_anchors_csv(path) -> dict[int, CogrowthEstimate]:
    """Known exact coefficients: CSV with header n,value[,rel_error]."""
    anchors = {}
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header[:2] != ["n", "value"]:
            raise ValueError("anchors file must have header n,value[,rel_error]")
        for line in fh:
            parts = line.strip().split(",")
            if not parts or parts == [""]:
                continue
            n = int(parts[0])
            val = float(parts[1])
            err = float(parts[2]) if len(parts) > 2 else 0.0
            anchors[n] = CogrowthEstimate(n, math.log(val), err)
    return anchors
