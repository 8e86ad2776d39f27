"""Exact series conversions between the two trivial-word counts, and the
ratio-crossing functions that quantify sub-dominant growth.

With |S| = 2p, the generating functions C(z) = sum c_n z^n (reduced count)
and D(z) = sum d_n z^n (all words) determine each other:

    C(z) = (1 - z^2) / (1 + (2p-1) z^2) * D( z / (1 + (2p-1) z^2) )

    D(z) = (1 - p + p sqrt(1 - 4(2p-1) z^2)) / (1 - 4 p^2 z^2)
           * C( (1 - sqrt(1 - 4(2p-1) z^2)) / (2 (2p-1) z) )

Both are implemented on truncated series with Fraction coefficients -- no
floating point anywhere, since rounding noise is indistinguishable from the
sub-dominant behaviour these conversions are used to study.  The square-root
and reciprocal factors expand with integer coefficients (Catalan numbers),
and the inner substitution arguments vanish at z = 0, so composition is
well-defined order by order and the z in the denominator cancels at the
series level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

#: Result value for R(n) when the crossing lies beyond the available data.
BEYOND_HORIZON = None


@dataclass(frozen=True)
class SeriesPoly:
    """Truncated power series with exact rational coefficients."""

    coefficients: tuple[Fraction, ...]
    p: int  # half the generating-set size the series refers to

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    @classmethod
    def from_values(cls, values: Sequence, p: int) -> "SeriesPoly":
        return cls(tuple(Fraction(v) for v in values), p)


def _mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        top = order - i
        for j, bj in enumerate(b[: top + 1]):
            if bj:
                out[i + j] += ai * bj
    return out


def _reciprocal(a: list[Fraction], order: int) -> list[Fraction]:
    if not a or a[0] == 0:
        raise ZeroDivisionError("series has no reciprocal (zero constant term)")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / a[0]
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                acc += a[k] * out[n - k]
        out[n] = -acc / a[0]
    return out


def _compose(outer: list[Fraction], inner: list[Fraction], order: int) -> list[Fraction]:
    # Horner over truncated series; inner must have zero constant term
    if inner and inner[0] != 0:
        raise ValueError("composition needs an inner series with zero constant term")
    out = [Fraction(0)] * (order + 1)
    for c in reversed(outer[: order + 1]):
        out = _mul(out, inner, order)
        out[0] += c
    return out


def _catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def _sqrt_one_minus_4kz2(kappa: int, order: int) -> list[Fraction]:
    # sqrt(1 - 4 kappa z^2) = 1 - 2 sum_{j>=1} Catalan(j-1) kappa^j z^(2j)
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for j in range(1, order // 2 + 1):
        out[2 * j] = Fraction(-2 * _catalan(j - 1) * kappa**j)
    return out


def reduced_from_cogrowth(d: SeriesPoly) -> SeriesPoly:
    """C(z) from D(z), exactly, truncated at the input's order."""
    order, p = d.order, d.p
    kappa = 2 * p - 1
    denom = [Fraction(0)] * (order + 1)
    denom[0] = Fraction(1)
    if order >= 2:
        denom[2] = Fraction(kappa)
    inv_denom = _reciprocal(denom, order)
    numer = [Fraction(1), Fraction(0)] + [Fraction(0)] * max(0, order - 1)
    if order >= 2:
        numer[2] = Fraction(-1)
    prefactor = _mul(numer[: order + 1], inv_denom, order)
    inner = _mul([Fraction(0), Fraction(1)], inv_denom, order)  # z / (1 + kappa z^2)
    comp = _compose(list(d.coefficients), inner, order)
    return SeriesPoly(tuple(_mul(prefactor, comp, order)), p)


def cogrowth_from_reduced(c: SeriesPoly) -> SeriesPoly:
    """D(z) from C(z), exactly, truncated at the input's order."""
    order, p = c.order, c.p
    kappa = 2 * p - 1
    sqrt_series = _sqrt_one_minus_4kz2(kappa, order)
    numer = [Fraction(1 - p) + Fraction(p) * v if i == 0 else Fraction(p) * v
             for i, v in enumerate(sqrt_series)]
    denom = [Fraction(0)] * (order + 1)
    denom[0] = Fraction(1)
    if order >= 2:
        denom[2] = Fraction(-4 * p * p)
    prefactor = _mul(numer, _reciprocal(denom, order), order)
    # (1 - sqrt(1 - 4 kappa z^2)) / (2 kappa z) = sum_j Catalan(j-1) kappa^(j-1) z^(2j-1);
    # the division by z is a series-level cancellation, never a numeric division
    inner = [Fraction(0)] * (order + 1)
    for j in range(1, (order + 1) // 2 + 1):
        if 2 * j - 1 <= order:
            inner[2 * j - 1] = Fraction(_catalan(j - 1) * kappa ** (j - 1))
    comp = _compose(list(c.coefficients), inner, order)
    return SeriesPoly(tuple(_mul(prefactor, comp, order)), p)


# ---------------------------------------------------------------------------
# ratio-crossing functions R(n), R'(n)

@dataclass
class RFunctionTable:
    """R(n) = min{ k : a_{2k+2} / a_{2k} > limit^2 - 1/n }, per n.

    ``values[n]`` is the minimising k, or :data:`BEYOND_HORIZON` when the
    available coefficients never cross the threshold.  ``skipped`` lists k
    whose ratio was undefined (zero coefficient) and had to be passed over.
    """

    values: dict[int, Optional[int]]
    limit_root_squared: float
    skipped: tuple[int, ...] = ()

    def items(self):
        return self.values.items()


def r_function(
    coeffs: Sequence,
    limit_root_squared,
    n_max: int = 100,
    log_scale: bool = False,
) -> RFunctionTable:
    """Scan the even-index coefficient sequence for the threshold crossings.

    ``coeffs[k]`` holds the coefficient of word length 2k (either exact
    numbers, or natural logs when ``log_scale`` is set).  The crossing index
    is non-decreasing in n, so the scan over n resumes where it left off.
    """
    horizon = len(coeffs) - 1  # largest k with a ratio needs k+1 <= horizon
    skipped: set[int] = set()
    values: dict[int, Optional[int]] = {}
    k = 0
    for n in range(1, n_max + 1):
        if log_scale:
            threshold = math.log(float(limit_root_squared) - 1.0 / n)
        else:
            threshold = Fraction(limit_root_squared) - Fraction(1, n)
        found = None
        while k + 1 <= horizon:
            num, den = coeffs[k + 1], coeffs[k]
            if log_scale:
                crossed = (num - den) > threshold
            else:
                if den == 0:
                    skipped.add(k)
                    k += 1
                    continue
                crossed = Fraction(num, 1) / Fraction(den, 1) > threshold
            if crossed:
                found = k
                break
            k += 1
        values[n] = found if found is not None else BEYOND_HORIZON
        if found is None:
            # everything past this n is beyond the data too
            for rest in range(n + 1, n_max + 1):
                values[rest] = BEYOND_HORIZON
            break
    return RFunctionTable(values, float(limit_root_squared), tuple(sorted(skipped)))


# ---------------------------------------------------------------------------
# the hypothetical cogrowth model c_n = 3^(n - q n^p)

LOG3 = math.log(3.0)


def model_cogrowth(q: float, p: float, max_len: int) -> np.ndarray:
    """log c_n = (n - q n^p) log 3 for n = 0..max_len."""
    if q <= 0:
        raise ValueError("q must be positive")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0,1)")
    n = np.arange(max_len + 1, dtype=np.float64)
    return (n - q * np.power(n, p)) * LOG3


def model_weight_curve(q: float, p: float, alpha: float, beta: float, max_len: int) -> np.ndarray:
    """log of c_n (n+1)^(1+alpha) beta^n: the shape the walk's visit counts follow."""
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0,1)")
    n = np.arange(max_len + 1, dtype=np.float64)
    return model_cogrowth(q, p, max_len) + (1.0 + alpha) * np.log(n + 1) + n * math.log(beta)


def model_r_closed_form(n: float, q: float, p: float) -> float:
    """First-order closed form for the model's R(n); asymptotic in n."""
    return (9.0 * LOG3 * q * p * 2.0**p * n) ** (1.0 / (1.0 - p))


# ---------------------------------------------------------------------------
# coefficient CSV: format is flagged in the header column name

def write_coeffs_csv(path, values: Sequence, log_scale: bool = False) -> None:
    col = "value_log" if log_scale else "value_exact"
    with open(path, "w") as fh:
        fh.write(f"n,{col}\n")
        for n, v in enumerate(values):
            fh.write(f"{n},{v!r}\n" if log_scale else f"{n},{v}\n")


def read_coeffs_csv(path) -> tuple[list, bool]:
    """Returns (values, log_scale)."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if len(header) != 2 or header[0] != "n" or header[1] not in ("value_exact", "value_log"):
            raise ValueError(f"bad coefficient CSV header in {path}")
        log_scale = header[1] == "value_log"
        values = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            n_str, v = line.split(",")
            if int(n_str) != len(values):
                raise ValueError("coefficient rows must be consecutive from n=0")
            values.append(float(v) if log_scale else Fraction(v))
    return values, log_scale
