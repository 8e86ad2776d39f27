"""The Metropolis walk on trivial words, its record format, and diagnostics.

Moves (conjugation / relator insertion, proposed 50/50) and acceptance rules
follow the stationary distribution pi(u) ~ (|u|+1)^(1+alpha) beta^|u| on the
set of trivial words:

* conjugation by x, uniform over the 2p signed letters, accepted with
  probability min{1, ((|w'|+1)/(|w|+1))^(1+alpha) beta^(|w'|-|w|)};
* left insertion of a relator chosen uniformly from the cyclic-and-inverse
  closure, at a uniform position, accepted with probability
  min{1, ((|w'|+1)/(|w|+1))^alpha beta^(|w'|-|w|)} -- the missing +1 in the
  exponent compensates the position-count asymmetry of the proposal.

Insertions whose result is not freely reduced are rejected outright (they
could not be undone in one move); every rejected proposal still consumes a
step.  All acceptance tests run in log space.

Walks are reproducible: a (presentation, params) pair fixes the whole
trajectory bit for bit.  Two engines exist -- the numba kernel and a pure
Python reference -- consuming identical random streams; tests assert they
produce identical records.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import rng as _rng
from .presentation import Presentation, parse_presentation
from .words import conjugate, left_insert

_STAT_KEYS = (
    "proposed_conjugations",
    "accepted_conjugations",
    "proposed_insertions",
    "accepted_insertions",
    "rejected_unreduced",
)


@dataclass(frozen=True)
class WalkParams:
    alpha: float
    beta: float
    steps: int
    segments: int = 10
    seed: int = 0
    sampling_stride: int = 1
    max_word_len: int = 1_000_000
    target_insertions: int = 0  # optional early stop: accepted insertions
    trace_every: int = 0        # optional trace of current length every k steps

    def validate(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0,1), got {self.beta}")
        if self.segments < 2:
            raise ValueError("need at least 2 segments for error estimation")
        if self.steps < self.segments:
            raise ValueError("steps must be >= segments")
        if self.sampling_stride < 1:
            raise ValueError("sampling_stride must be >= 1")
        if self.steps % self.sampling_stride != 0:
            raise ValueError("sampling_stride must divide steps")
        if self.max_word_len < 1:
            raise ValueError("max_word_len must be positive")
        if self.target_insertions < 0 or self.trace_every < 0:
            raise ValueError("target_insertions and trace_every must be >= 0")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "steps": self.steps,
            "segments": self.segments,
            "seed": self.seed,
            "sampling_stride": self.sampling_stride,
            "max_word_len": self.max_word_len,
            "target_insertions": self.target_insertions,
            "trace_every": self.trace_every,
        }


@dataclass
class WalkRecord:
    """Segmented length histogram plus per-relator accounting for one walk."""

    params: WalkParams
    presentation_text: str
    presentation_digest: str
    parity_even: bool
    lengths: np.ndarray            # sorted visited lengths, shape (K,)
    segment_counts: np.ndarray     # int64, shape (segments, K); x_{i,n}
    relator_acceptance: tuple[int, ...]
    proposal_stats: dict[str, int]
    final_word: str
    steps_done: int
    aborted: bool
    runtime_seconds: float = 0.0
    trace: np.ndarray | None = None
    label: str = ""

    @property
    def totals(self) -> np.ndarray:
        """W_n for each entry of ``lengths``."""
        return self.segment_counts.sum(axis=0)

    @property
    def n_samples(self) -> int:
        return int(self.segment_counts.sum())

    def histogram(self) -> dict[int, int]:
        return {int(n): int(w) for n, w in zip(self.lengths, self.totals)}

    def segment_histogram(self, n: int) -> np.ndarray:
        """x_{i,n} over segments i (zeros when n was never visited)."""
        pos = np.searchsorted(self.lengths, n)
        if pos < len(self.lengths) and self.lengths[pos] == n:
            return self.segment_counts[:, pos].copy()
        return np.zeros(self.params.segments, dtype=np.int64)

    def mean_length(self) -> float:
        tot = self.totals
        return float((self.lengths * tot).sum() / tot.sum()) if tot.sum() else 0.0


def _pack_relators(pres: Presentation):
    flat: list[int] = []
    offsets = [0]
    origins: list[int] = []
    for rel in pres.closed_relators:
        flat.extend(rel.word)
        offsets.append(len(flat))
        origins.append(rel.origin)
    return (
        np.asarray(flat, dtype=np.int16),
        np.asarray(offsets, dtype=np.int64),
        np.asarray(origins, dtype=np.int64),
    )


def _log_length_table(limit: int) -> np.ndarray:
    # log(L + 1) for L = 0..limit; shared by both engines so the acceptance
    # arithmetic is bit-identical
    return np.array([math.log(L + 1) for L in range(limit + 1)], dtype=np.float64)


@dataclass(frozen=True)
class MoveOutcome:
    """What one proposal did: the move kind and how it resolved."""

    move: str                    # "conjugation" or "insertion"
    accepted: bool
    candidate_length: int | None  # None when the insertion was not reducible
    relator_origin: int | None = None  # user relator index, insertions only
    over_length_cap: bool = False


def propose_and_step(word, pres: Presentation, params: WalkParams,
                     rng: "_rng.Xoshiro256PP"):
    """One Metropolis step from ``word``; returns (new word, MoveOutcome).

    Draws, in order: the move selector, then the generator letter (or the
    relator index and position), then an acceptance uniform only when the
    log-acceptance is negative.  The numba kernel consumes the identical
    stream.
    """
    word = tuple(word)
    log_beta = math.log(params.beta)
    if rng.uniform() < 0.5:
        idx = rng.below(2 * pres.alphabet.p)
        g = (idx >> 1) + 1
        x = g if (idx & 1) == 0 else -g
        cand = conjugate(word, x)
        la = (1.0 + params.alpha) * (math.log(len(cand) + 1) - math.log(len(word) + 1)) + (
            len(cand) - len(word)
        ) * log_beta
        ok = la >= 0.0 or math.log(rng.uniform()) < la
        if not ok:
            return word, MoveOutcome("conjugation", False, len(cand))
        if len(cand) > params.max_word_len:
            return word, MoveOutcome("conjugation", False, len(cand), over_length_cap=True)
        return cand, MoveOutcome("conjugation", True, len(cand))
    rels = pres.closed_relators
    ridx = rng.below(len(rels))
    pos = rng.below(len(word) + 1)
    origin = rels[ridx].origin
    cand = left_insert(word, rels[ridx].word, pos)
    if cand is None:
        return word, MoveOutcome("insertion", False, None, origin)
    la = params.alpha * (math.log(len(cand) + 1) - math.log(len(word) + 1)) + (
        len(cand) - len(word)
    ) * log_beta
    ok = la >= 0.0 or math.log(rng.uniform()) < la
    if not ok:
        return word, MoveOutcome("insertion", False, len(cand), origin)
    if len(cand) > params.max_word_len:
        return word, MoveOutcome("insertion", False, len(cand), origin, over_length_cap=True)
    return cand, MoveOutcome("insertion", True, len(cand), origin)


def _run_python(pres: Presentation, params: WalkParams):
    """Reference engine: same draws, same branches, tuples instead of buffers."""
    gen = _rng.Xoshiro256PP(params.seed)
    word: tuple[int, ...] = ()
    M = params.segments
    stride = params.sampling_stride
    total_samples = params.steps // stride
    seg_counts: list[dict[int, int]] = [dict() for _ in range(M)]
    user_acc = [0] * len(pres.user_relators)
    stats = dict.fromkeys(_STAT_KEYS, 0)
    trace: list[int] = []
    sample_idx = 0
    steps_done = params.steps
    aborted = False

    for step in range(params.steps):
        word, outcome = propose_and_step(word, pres, params, gen)
        if outcome.move == "conjugation":
            stats["proposed_conjugations"] += 1
            stats["accepted_conjugations"] += outcome.accepted
        else:
            stats["proposed_insertions"] += 1
            stats["accepted_insertions"] += outcome.accepted
            if outcome.candidate_length is None:
                stats["rejected_unreduced"] += 1
            if outcome.accepted:
                user_acc[outcome.relator_origin] += 1
        if outcome.over_length_cap:
            aborted = True
            steps_done = step + 1
            break

        if (step + 1) % stride == 0:
            seg = sample_idx * M // total_samples
            n = len(word)
            seg_counts[seg][n] = seg_counts[seg].get(n, 0) + 1
            sample_idx += 1
        if params.trace_every > 0 and (step + 1) % params.trace_every == 0:
            trace.append(len(word))
        if params.target_insertions > 0 and stats["accepted_insertions"] >= params.target_insertions:
            steps_done = step + 1
            break

    lengths = np.array(sorted({n for seg in seg_counts for n in seg}), dtype=np.int64)
    counts = np.zeros((M, len(lengths)), dtype=np.int64)
    index = {int(n): j for j, n in enumerate(lengths)}
    for i, seg in enumerate(seg_counts):
        for n, c in seg.items():
            counts[i, index[n]] = c
    trace_arr = np.array(trace, dtype=np.int32) if params.trace_every > 0 else None
    return lengths, counts, user_acc, stats, word, steps_done, aborted, trace_arr


def _run_numba(pres: Presentation, params: WalkParams):
    from .kernel import run_kernel

    p2 = 2 * pres.alphabet.p
    rel_flat, rel_off, rel_user = _pack_relators(pres)
    max_rel = int((rel_off[1:] - rel_off[:-1]).max())
    log_len = _log_length_table(params.max_word_len + max_rel + 2)
    state = np.array(_rng.seed_state(params.seed), dtype=np.uint64)
    buf = np.zeros(2 * params.max_word_len + 4 * (max_rel + 2), dtype=np.int16)
    seg_hist = np.zeros((params.segments, params.max_word_len + 1), dtype=np.int64)
    user_acc = np.zeros(len(pres.user_relators), dtype=np.int64)
    stats = np.zeros(8, dtype=np.int64)
    n_trace = params.steps // params.trace_every if params.trace_every > 0 else 0
    trace = np.zeros(n_trace, dtype=np.int32)

    lo, hi = run_kernel(
        state, p2, rel_flat, rel_off, rel_user,
        float(params.alpha), math.log(params.beta),
        params.steps, params.sampling_stride, params.segments,
        params.max_word_len, params.target_insertions, params.trace_every,
        buf, seg_hist, user_acc, stats, trace, log_len,
    )

    visited = np.nonzero(seg_hist.sum(axis=0))[0]
    lengths = visited.astype(np.int64)
    counts = seg_hist[:, visited].copy()
    word = tuple(int(v) for v in buf[lo:hi])
    stat_map = dict(zip(_STAT_KEYS, (int(v) for v in stats[:5])))
    steps_done = int(stats[5])
    aborted = bool(stats[6])
    trace_arr = trace if params.trace_every > 0 else None
    return lengths, counts, list(int(v) for v in user_acc), stat_map, word, steps_done, aborted, trace_arr


def run_walk(pres: Presentation, params: WalkParams, engine: str = "numba") -> WalkRecord:
    """Run one walk from the empty word; deterministic in (pres, params)."""
    params.validate()
    start = time.perf_counter()
    if engine == "python":
        out = _run_python(pres, params)
    elif engine == "numba":
        out = _run_numba(pres, params)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    lengths, counts, user_acc, stats, word, steps_done, aborted, trace = out
    return WalkRecord(
        params=params,
        presentation_text=pres.render(),
        presentation_digest=pres.digest(),
        parity_even=pres.parity_even,
        lengths=lengths,
        segment_counts=counts,
        relator_acceptance=tuple(user_acc),
        proposal_stats=stats,
        final_word=pres.alphabet.spell(word),
        steps_done=steps_done,
        aborted=aborted,
        runtime_seconds=time.perf_counter() - start,
        trace=trace,
    )


def run_grid(pres: Presentation, grid: list[WalkParams], threads: int = 1,
             engine: str = "numba") -> list[WalkRecord]:
    """Run independent walks; output order matches input order.

    Aborted walks come back flagged rather than raising, so one divergent
    parameter combination cannot cancel its siblings.
    """
    for p in grid:
        p.validate()
    if not grid:
        return []
    if threads <= 1 or len(grid) == 1:
        return [run_walk(pres, p, engine=engine) for p in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: run_walk(pres, p, engine=engine), grid))


def grid_params(alphas, betas, base: WalkParams) -> list[WalkParams]:
    """Cartesian parameter grid with per-walk seeds derived from the base seed."""
    out = []
    for a in alphas:
        for b in betas:
            out.append(replace(base, alpha=float(a), beta=float(b),
                               seed=_rng.derive_seed(base.seed, len(out))))
    return out


@dataclass
class RelatorBalanceReport:
    counts: tuple[int, ...]
    shares: tuple[float, ...]
    floor: float
    starved: tuple[int, ...]  # user relator indices below the floor

    @property
    def wrong_group(self) -> bool:
        return bool(self.starved)

    def render(self) -> str:
        lines = ["relator  accepted-insertions  share"]
        for i, (c, s) in enumerate(zip(self.counts, self.shares)):
            flag = "  <-- starved" if i in self.starved else ""
            lines.append(f"{i:>7}  {c:>19}  {s:>6.2%}{flag}")
        if self.wrong_group:
            lines.append(
                "WRONG-GROUP WARNING: some relators are (almost) never inserted; "
                "the walk is effectively sampling a different presentation"
            )
        return "\n".join(lines)


def diagnose_relator_balance(rec: WalkRecord, floor: float = 0.001) -> RelatorBalanceReport:
    """Per-user-relator share of accepted insertions, with a starvation flag."""
    total = sum(rec.relator_acceptance)
    shares = tuple((c / total) if total else 0.0 for c in rec.relator_acceptance)
    starved = tuple(i for i, s in enumerate(shares) if s < floor)
    return RelatorBalanceReport(tuple(rec.relator_acceptance), shares, floor, starved)


# ---------------------------------------------------------------------------
# serialization: histogram CSV plus a JSON sidecar

def save_record(rec: WalkRecord, base: str | Path) -> tuple[Path, Path]:
    """Write ``<base>.csv`` (n, W_n, x_1..x_M) and ``<base>.json``."""
    base = Path(base)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    M = rec.params.segments
    with open(csv_path, "w") as fh:
        fh.write("n,W_n," + ",".join(f"x_{i + 1}" for i in range(M)) + "\n")
        for j, n in enumerate(rec.lengths):
            row = rec.segment_counts[:, j]
            fh.write(f"{int(n)},{int(row.sum())}," + ",".join(str(int(v)) for v in row) + "\n")
    sidecar = {
        "params": rec.params.to_dict(),
        "presentation": rec.presentation_text,
        "presentation_digest": rec.presentation_digest,
        "parity_even": rec.parity_even,
        "relator_acceptance": list(rec.relator_acceptance),
        "proposal_stats": rec.proposal_stats,
        "final_word": rec.final_word,
        "steps_done": rec.steps_done,
        "aborted": rec.aborted,
        "runtime_seconds": rec.runtime_seconds,
    }
    json_path.write_text(json.dumps(sidecar, indent=2) + "\n")
    if rec.trace is not None:
        trace_path = base.parent / (base.name + ".trace.csv")
        with open(trace_path, "w") as fh:
            fh.write("step,length\n")
            for i, v in enumerate(rec.trace):
                fh.write(f"{(i + 1) * rec.params.trace_every},{int(v)}\n")
    return csv_path, json_path


def load_record(path: str | Path) -> WalkRecord:
    """Load a record saved by :func:`save_record` (pass the .csv or base path)."""
    path = Path(path)
    csv_path = path if path.suffix == ".csv" else path.with_suffix(".csv")
    json_path = csv_path.with_suffix(".json")
    sidecar = json.loads(json_path.read_text())
    params = WalkParams(**sidecar["params"])
    rows = []
    with open(csv_path) as fh:
        header = fh.readline().strip().split(",")
        n_cols = len(header)
        for line in fh:
            rows.append([int(v) for v in line.strip().split(",")])
    lengths = np.array([r[0] for r in rows], dtype=np.int64)
    counts = np.zeros((params.segments, len(rows)), dtype=np.int64)
    for j, r in enumerate(rows):
        if len(r) != n_cols:
            raise ValueError(f"malformed row in {csv_path}")
        counts[:, j] = r[2:]
        if r[1] != sum(r[2:]):
            raise ValueError(f"W_n column inconsistent with segments in {csv_path}")
    return WalkRecord(
        params=params,
        presentation_text=sidecar["presentation"],
        presentation_digest=sidecar["presentation_digest"],
        parity_even=sidecar["parity_even"],
        lengths=lengths,
        segment_counts=counts,
        relator_acceptance=tuple(sidecar["relator_acceptance"]),
        proposal_stats=sidecar["proposal_stats"],
        final_word=sidecar["final_word"],
        steps_done=sidecar["steps_done"],
        aborted=sidecar["aborted"],
        runtime_seconds=sidecar.get("runtime_seconds", 0.0),
        label=csv_path.stem,
    )


def presentation_of_record(rec: WalkRecord) -> Presentation:
    return parse_presentation(rec.presentation_text)
