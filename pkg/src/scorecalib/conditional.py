"""Label-conditioned calibration.

Splits the fit data at a pseudo-label threshold gamma into predicted
matches (score >= gamma) and non-matches, fits an independent
quantile-barycenter model on each side, and routes every query to the
model of its own side.  Aligning group distributions within each
predicted class targets label-dependent bias (equal opportunity and
equalized odds) instead of plain demographic parity.

Gamma defaults to the midpoint between the two heaviest modes found by
1-D Gaussian-kernel mean shift over the fit scores; matching scores
cluster near 0 and 1, so the midpoint falls in the gap between the
clusters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .calibration import CalibModel, calibrate_scores, model_from_dict, model_to_dict
from .dataset import GroupId, ScoreDataset
from .empirical import GroupScores, add_jitter
from .errors import (
    EmptyGroupInPartitionError,
    EmptyInputError,
    ScoreOutOfRangeError,
    SingleModeError,
)


@dataclass(frozen=True)
class MeanshiftConfig:
    """Knobs for 1-D mode finding; all strictly positive.

    ``merge_radius`` defaults to half the bandwidth.
    """

    bandwidth: float = 0.1
    max_iterations: int = 500
    convergence_tol: float = 1e-4
    merge_radius: float | None = None

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be > 0")
        if self.merge_radius is None:
            object.__setattr__(self, "merge_radius", self.bandwidth / 2.0)
        if self.merge_radius <= 0 or self.merge_radius > self.bandwidth:
            raise ValueError("merge_radius must be in (0, bandwidth]")


def _mean_shift_modes(data: np.ndarray, cfg: MeanshiftConfig):
    """Run mean shift from every point; return (modes, attracted counts).

    Equal starting points share one trajectory, so the iteration runs
    over distinct values with multiplicities.  Modes within
    ``merge_radius`` of each other are merged; a merged mode's center
    is the mass-weighted mean of its members.
    """
    positions, weights_per_start = np.unique(data.astype(float), return_counts=True)
    active = np.ones(positions.size, dtype=bool)
    inv_two_h2 = 1.0 / (2.0 * cfg.bandwidth**2)
    for _ in range(cfg.max_iterations):
        if not active.any():
            break
        current = positions[active]
        kernel = np.exp(-((current[:, None] - data[None, :]) ** 2) * inv_two_h2)
        shifted = (kernel @ data) / kernel.sum(axis=1)
        moved = np.abs(shifted - current)
        positions[active] = shifted
        active[active] = moved >= cfg.convergence_tol

    order = np.argsort(positions, kind="stable")
    centers: list[float] = []
    counts: list[int] = []
    for pos, mass in zip(positions[order], weights_per_start[order]):
        if centers and pos - centers[-1] <= cfg.merge_radius:
            total = counts[-1] + mass
            centers[-1] = (centers[-1] * counts[-1] + pos * mass) / total
            counts[-1] = total
        else:
            centers.append(float(pos))
            counts.append(int(mass))
    return np.array(centers), np.array(counts)


def meanshift_threshold(
    scores: Sequence[float], cfg: MeanshiftConfig = MeanshiftConfig()
) -> float:
    """Midpoint between the centers of the two heaviest score modes.

    Raises :class:`SingleModeError` when fewer than two modes survive
    merging; callers may supply a threshold explicitly instead.
    """
    data = np.asarray(scores, dtype=float)
    if data.size == 0:
        raise EmptyInputError("meanshift requires at least two scores")
    if data.size < 2:
        raise SingleModeError("meanshift requires at least two scores")
    centers, counts = _mean_shift_modes(data, cfg)
    if centers.size < 2:
        raise SingleModeError(
            "score distribution has a single mode; pass an explicit gamma"
        )
    top_two = np.sort(np.argsort(counts, kind="stable")[-2:])
    return float((centers[top_two[0]] + centers[top_two[1]]) / 2.0)


@dataclass(frozen=True, eq=False)
class CondCalibModel:
    """Gamma threshold plus one calibration model per predicted class."""

    gamma: float
    matched: CalibModel
    unmatched: CalibModel
    meanshift: MeanshiftConfig = MeanshiftConfig()


def _partition_group_scores(
    jittered: np.ndarray,
    is_minority: np.ndarray,
    mask: np.ndarray,
    name: str,
    sigma: float,
    seed: int,
) -> GroupScores:
    a = jittered[mask & is_minority]
    b = jittered[mask & ~is_minority]
    if a.size == 0 or b.size == 0:
        group = "minority" if a.size == 0 else "majority"
        raise EmptyGroupInPartitionError(
            f"{name} partition has no {group} pairs; adjust gamma"
        )
    a = np.sort(a)[::-1]
    b = np.sort(b)[::-1]
    return GroupScores(a, b, alpha=a.size / (a.size + b.size), sigma=sigma, seed=seed)


def fit_conditional(
    d: ScoreDataset,
    sigma: float,
    seed: int,
    gamma_override: float | None = None,
    cfg: MeanshiftConfig = MeanshiftConfig(),
    use_true_labels: bool = False,
) -> CondCalibModel:
    """Find gamma (unless overridden), split the data, fit both sides.

    The gamma split uses the raw scores; jitter is applied to the
    stored fit scores only.  Each side's minority weight is computed
    within its own partition.  With ``use_true_labels`` a labeled fit
    set is partitioned by its labels instead of by gamma; queries are
    still routed by gamma, which is needed either way.
    """
    raw = d.scores()
    gamma = float(gamma_override) if gamma_override is not None else meanshift_threshold(raw, cfg)
    jittered = add_jitter(raw, sigma, seed)
    is_minority = np.array([p.group is GroupId.MINORITY for p in d.pairs], dtype=bool)
    if use_true_labels:
        matched_mask = d.labels() == 1
    else:
        matched_mask = raw >= gamma
    matched = _partition_group_scores(
        jittered, is_minority, matched_mask, "matched", sigma, seed
    )
    unmatched = _partition_group_scores(
        jittered, is_minority, ~matched_mask, "unmatched", sigma, seed
    )
    return CondCalibModel(gamma, CalibModel(matched), CalibModel(unmatched), cfg)


def cond_calibrate_scores(
    model: CondCalibModel, scores: Sequence[float], groups: Sequence[GroupId]
) -> np.ndarray:
    """Route each query by score >= gamma, then calibrate within its side."""
    scores = np.asarray(scores, dtype=float)
    if scores.size == 0:
        return scores.copy()
    if np.isnan(scores).any() or scores.min() < 0.0 or scores.max() > 1.0:
        raise ScoreOutOfRangeError("query scores must lie in [0, 1]")
    groups = list(groups)
    matched_mask = scores >= model.gamma
    out = np.empty(scores.size, dtype=float)
    for sub, mask in ((model.matched, matched_mask), (model.unmatched, ~matched_mask)):
        if mask.any():
            out[mask] = calibrate_scores(
                sub, scores[mask], [g for g, m in zip(groups, mask) if m]
            )
    return out


def cond_calibrate(model: CondCalibModel, score: float, group: GroupId) -> float:
    return float(cond_calibrate_scores(model, [score], [group])[0])


def cond_calibrate_dataset(model: CondCalibModel, d: ScoreDataset) -> ScoreDataset:
    return d.with_scores(cond_calibrate_scores(model, d.scores(), d.groups()))


def model_to_dict_conditional(model: CondCalibModel) -> dict:
    return {
        "gamma": model.gamma,
        "matched": model_to_dict(model.matched),
        "unmatched": model_to_dict(model.unmatched),
        "meanshift": {
            "bandwidth": model.meanshift.bandwidth,
            "tol": model.meanshift.convergence_tol,
            "max_iter": model.meanshift.max_iterations,
            "merge_radius": model.meanshift.merge_radius,
        },
    }


def model_from_dict_conditional(data: dict) -> CondCalibModel:
    ms = data["meanshift"]
    return CondCalibModel(
        gamma=float(data["gamma"]),
        matched=model_from_dict(data["matched"]),
        unmatched=model_from_dict(data["unmatched"]),
        meanshift=MeanshiftConfig(
            bandwidth=float(ms["bandwidth"]),
            max_iterations=int(ms["max_iter"]),
            convergence_tol=float(ms["tol"]),
            merge_radius=float(ms["merge_radius"]),
        ),
    )


def save_model_conditional(model: CondCalibModel, dest) -> None:
    text = json.dumps(model_to_dict_conditional(model), indent=2, sort_keys=True)
    Path(dest).write_text(text + "\n", encoding="utf-8")


def load_model_conditional(source) -> CondCalibModel:
    return model_from_dict_conditional(
        json.loads(Path(source).read_text(encoding="utf-8"))
    )
