"""Empirical score-distribution machinery.

Jittered per-group score lists, piecewise-constant threshold curves
(positive rate and its label-conditioned variants), rank-statistic AUC,
and the exact 1-D Wasserstein-1 distance between empirical
distributions on [0, 1].
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dataset import GroupId, ScoreDataset
from .errors import (
    EmptyGroupError,
    EmptyInputError,
    EmptyStratumError,
    MalformedCurveError,
    SingleClassError,
    UnlabeledDatasetError,
)

DEFAULT_SIGMA = 0.05


def add_jitter(scores: Sequence[float], sigma: float, seed: int) -> np.ndarray:
    """Add Gaussian noise N(0, sigma^2) to each score and clamp to [0, 1].

    Deterministic for a given seed (numpy PCG64).  With ``sigma == 0``
    the input is returned unchanged (as a copy).
    """
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    out = np.asarray(scores, dtype=float).copy()
    if sigma == 0 or out.size == 0:
        return out
    rng = np.random.default_rng(seed)
    out += rng.normal(0.0, sigma, out.shape)
    np.clip(out, 0.0, 1.0, out=out)
    return out


@dataclass(frozen=True, eq=False)
class GroupScores:
    """Per-group descending score lists plus the minority weight alpha.

    ``alpha`` is the minority share of the fit data,
    ``len(scores_a) / (len(scores_a) + len(scores_b))``.
    """

    scores_a: np.ndarray  # minority, sorted descending
    scores_b: np.ndarray  # majority, sorted descending
    alpha: float
    sigma: float
    seed: int

    def __post_init__(self):
        a = np.asarray(self.scores_a, dtype=float)
        b = np.asarray(self.scores_b, dtype=float)
        if a.size == 0 or b.size == 0:
            raise EmptyGroupError("both group score lists must be non-empty")
        for name, arr in (("scores_a", a), ("scores_b", b)):
            if np.any(np.diff(arr) > 0):
                raise ValueError(f"{name} must be sorted non-increasing")
            if arr.min() < 0.0 or arr.max() > 1.0:
                raise ValueError(f"{name} values must lie in [0, 1]")
        expected = a.size / (a.size + b.size)
        if abs(self.alpha - expected) > 1e-12:
            raise ValueError(f"alpha {self.alpha} != |scores_a|/|D| = {expected}")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "scores_a", a)
        object.__setattr__(self, "scores_b", b)

    @property
    def n_a(self) -> int:
        return self.scores_a.size

    @property
    def n_b(self) -> int:
        return self.scores_b.size


def build_group_scores(d: ScoreDataset, sigma: float, seed: int) -> GroupScores:
    """Jitter all scores (one stream, dataset order), split and sort.

    Raises :class:`EmptyGroupError` if either group has no pairs.
    """
    if len(d) == 0:
        raise EmptyGroupError("empty dataset")
    jittered = add_jitter(d.scores(), sigma, seed)
    is_minority = np.array([p.group is GroupId.MINORITY for p in d.pairs], dtype=bool)
    a = jittered[is_minority]
    b = jittered[~is_minority]
    if a.size == 0 or b.size == 0:
        missing = "minority" if a.size == 0 else "majority"
        raise EmptyGroupError(f"no {missing} pairs in dataset")
    a = np.sort(a)[::-1]
    b = np.sort(b)[::-1]
    return GroupScores(a, b, alpha=a.size / (a.size + b.size), sigma=sigma, seed=seed)


@dataclass(frozen=True, eq=False)
class StepCurve:
    """Piecewise-constant function of the threshold on [0, 1].

    ``values[0]`` holds on ``[0, breakpoints[0]]`` and ``values[i]`` on
    ``(breakpoints[i-1], breakpoints[i]]``; the last value extends to 1.
    The value AT a breakpoint is the one on the interval ending there,
    so a positive-rate curve still counts a score at its own threshold.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        va = np.asarray(self.values, dtype=float)
        if va.size != bp.size + 1:
            raise ValueError(
                f"need {bp.size + 1} values for {bp.size} breakpoints, got {va.size}"
            )
        if bp.size:
            if np.any(np.diff(bp) <= 0):
                raise ValueError("breakpoints must be strictly increasing")
            if bp[0] < 0.0 or bp[-1] > 1.0:
                raise ValueError("breakpoints must lie in [0, 1]")
        bp.setflags(write=False)
        va.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", va)

    def __call__(self, theta):
        """Evaluate at threshold(s) in [0, 1]."""
        idx = np.searchsorted(self.breakpoints, theta, side="left")
        result = self.values[idx]
        return float(result) if np.isscalar(theta) else result

    def to_csv(self, dest) -> None:
        """Write ``theta,value`` rows: one for theta=0, one per breakpoint."""
        close = False
        if isinstance(dest, (str, Path)):
            dest = open(dest, "w", encoding="utf-8", newline="")
            close = True
        try:
            writer = csv.writer(dest, lineterminator="\n")
            writer.writerow(("theta", "value"))
            writer.writerow(("0", repr(float(self.values[0]))))
            for bp, val in zip(self.breakpoints, self.values[1:]):
                writer.writerow((repr(float(bp)), repr(float(val))))
        finally:
            if close:
                dest.close()

    @classmethod
    def from_csv(cls, source) -> "StepCurve":
        if isinstance(source, (str, Path)):
            text = Path(source).read_text(encoding="utf-8")
        elif isinstance(source, bytes):
            text = source.decode("utf-8")
        else:
            text = source.read()
        reader = csv.reader(io.StringIO(text))
        rows = [row for row in reader if row]
        if not rows or tuple(rows[0]) != ("theta", "value"):
            raise MalformedCurveError("curve CSV must start with header 'theta,value'")
        if len(rows) < 2:
            raise MalformedCurveError("curve CSV has no data rows")
        try:
            thetas = [float(r[0]) for r in rows[1:]]
            values = [float(r[1]) for r in rows[1:]]
        except (ValueError, IndexError):
            raise MalformedCurveError("curve CSV has a malformed row") from None
        if thetas[0] != 0.0:
            raise MalformedCurveError("first curve row must be for theta=0")
        try:
            return cls(np.array(thetas[1:]), np.array(values))
        except ValueError as exc:
            raise MalformedCurveError(str(exc)) from None


def pr_curve(scores: Sequence[float]) -> StepCurve:
    """Fraction of scores >= theta, as a step function of theta.

    Non-increasing; equals 1 on [0, min(scores)] and 0 above max(scores).
    """
    arr = np.asarray(scores, dtype=float)
    if arr.size == 0:
        raise EmptyInputError("cannot build a curve from an empty score list")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("scores must lie in [0, 1]")
    asc = np.sort(arr)
    distinct = np.unique(asc)
    n = arr.size
    # value above each breakpoint = fraction strictly greater than it
    greater = n - np.searchsorted(asc, distinct, side="right")
    values = np.concatenate(([n], greater)) / n
    return StepCurve(distinct, values)


def conditional_curve(d: ScoreDataset, group: GroupId, label: int) -> StepCurve:
    """Positive-rate curve restricted to one (group, label) stratum."""
    if not d.labeled:
        raise UnlabeledDatasetError(
            "label-conditioned curves require a fully labeled dataset"
        )
    stratum = d.stratum_scores(group, label)
    if stratum.size == 0:
        raise EmptyStratumError(f"no pairs with group={group.value}, label={label}")
    return pr_curve(stratum)


def auc(d: ScoreDataset) -> float:
    """Probability a positive outranks a negative, ties at half credit.

    Equals the area under the empirical ROC curve.
    """
    if not d.labeled:
        raise UnlabeledDatasetError("AUC requires a fully labeled dataset")
    scores = d.scores()
    labels = d.labels()
    pos = np.sort(scores[labels == 1])
    neg = np.sort(scores[labels == 0])
    if pos.size == 0 or neg.size == 0:
        raise SingleClassError("AUC requires both label classes")
    below = np.searchsorted(neg, pos, side="left")
    below_or_equal = np.searchsorted(neg, pos, side="right")
    wins = below.sum() + 0.5 * (below_or_equal - below).sum()
    return float(wins / (pos.size * neg.size))


def integrate_abs_difference(c1: StepCurve, c2: StepCurve) -> float:
    """Exact integral of |c1 - c2| over [0, 1] via merged breakpoints."""
    merged = np.union1d(c1.breakpoints, c2.breakpoints)
    edges = np.concatenate((merged, [1.0])) if (merged.size == 0 or merged[-1] < 1.0) else merged
    widths = np.diff(np.concatenate(([0.0], edges)))
    gaps = np.abs(c1(edges) - c2(edges))
    return float(np.sum(gaps * widths))


def gap_curve(c1: StepCurve, c2: StepCurve) -> StepCurve:
    """|c1 - c2| as a step curve on the merged breakpoint grid."""
    merged = np.union1d(c1.breakpoints, c2.breakpoints)
    eval_at = np.concatenate((merged, [1.0]))
    gaps = np.abs(c1(eval_at) - c2(eval_at))
    return StepCurve(merged, gaps)


def w1_distance(x: Sequence[float], y: Sequence[float]) -> float:
    """Wasserstein-1 distance between empirical distributions on [0, 1].

    Computed exactly as the integral of |F_x - F_y| over the merged
    support grid.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.size == 0 or ys.size == 0:
        raise EmptyInputError("w1_distance requires non-empty samples")
    for arr in (xs, ys):
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("values must lie in [0, 1]")
    xs = np.sort(xs)
    ys = np.sort(ys)
    grid = np.union1d(xs, ys)
    f_x = np.searchsorted(xs, grid, side="right") / xs.size
    f_y = np.searchsorted(ys, grid, side="right") / ys.size
    # F is constant on [grid[j], grid[j+1]); the tail [grid[-1], 1] has F_x = F_y = 1
    widths = np.diff(grid)
    return float(np.sum(np.abs(f_x[:-1] - f_y[:-1]) * widths))
