"""Loaders for the toolkit's CSV formats, with header validation up front."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class InputError(ValueError):
    """Missing file or unexpected CSV header."""


def _read_rows(path: Path, expected_header: list[str]) -> list[list[str]]:
    if not path.exists():
        raise InputError(f"input file {path} does not exist")
    with open(path) as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][: len(expected_header)] != expected_header:
        raise InputError(
            f"{path}: expected header starting with {','.join(expected_header)}, "
            f"got {','.join(rows[0]) if rows else 'empty file'}"
        )
    return rows[1:]


@dataclass
class WalkSummary:
    label: str
    alpha: float
    beta: float
    mean_length: float
    aborted: bool


def load_walk_summary(csv_path: str | Path) -> WalkSummary:
    """Histogram CSV (n, W_n, x_i...) plus its JSON sidecar for the parameters."""
    csv_path = Path(csv_path)
    rows = _read_rows(csv_path, ["n", "W_n"])
    sidecar_path = csv_path.with_suffix(".json")
    if not sidecar_path.exists():
        raise InputError(f"sidecar {sidecar_path} does not exist")
    sidecar = json.loads(sidecar_path.read_text())
    n = np.array([int(r[0]) for r in rows])
    w = np.array([int(r[1]) for r in rows])
    mean = float((n * w).sum() / w.sum()) if w.sum() else 0.0
    return WalkSummary(
        label=csv_path.stem,
        alpha=float(sidecar["params"]["alpha"]),
        beta=float(sidecar["params"]["beta"]),
        mean_length=mean,
        aborted=bool(sidecar.get("aborted", False)),
    )


@dataclass
class TraceData:
    label: str
    steps: np.ndarray
    lengths: np.ndarray


def load_trace(path: str | Path) -> TraceData:
    rows = _read_rows(Path(path), ["step", "length"])
    return TraceData(
        label=Path(path).stem,
        steps=np.array([int(r[0]) for r in rows]),
        lengths=np.array([int(r[1]) for r in rows]),
    )


@dataclass
class ModelCurve:
    label: str
    n: np.ndarray
    log_c: np.ndarray
    log_weight: np.ndarray


def load_model_curve(path: str | Path) -> ModelCurve:
    rows = _read_rows(Path(path), ["n", "log_c", "log_weight"])
    return ModelCurve(
        label=Path(path).stem,
        n=np.array([int(r[0]) for r in rows]),
        log_c=np.array([float(r[1]) for r in rows]),
        log_weight=np.array([float(r[2]) for r in rows]),
    )


@dataclass
class GammaTable:
    n: np.ndarray
    gamma: np.ndarray
    lower: np.ndarray
    upper: np.ndarray


def load_gamma(path: str | Path) -> GammaTable:
    rows = _read_rows(Path(path), ["n", "gamma_n", "gamma_err", "lower", "upper"])
    return GammaTable(
        n=np.array([int(r[0]) for r in rows]),
        gamma=np.array([float(r[1]) for r in rows]),
        lower=np.array([float(r[3]) for r in rows]),
        upper=np.array([float(r[4]) for r in rows]),
    )
