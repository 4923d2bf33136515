"""Synthetic scored-pair datasets from per-(group, label) Beta mixtures.

Matching scores in the wild pile up near 0 and 1; a Beta distribution
per (group, label) cell reproduces that shape at any size, with fully
seeded draws so suites are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import GroupId, ScoredPair, ScoreDataset
from .errors import InvalidSpecError


@dataclass(frozen=True)
class BetaParams:
    shape1: float
    shape2: float

    def __post_init__(self):
        if self.shape1 <= 0 or self.shape2 <= 0:
            raise InvalidSpecError(
                f"Beta shapes must be > 0, got ({self.shape1}, {self.shape2})"
            )


@dataclass(frozen=True)
class SynthSpec:
    """Counts, positive rates, and score distributions per (group, label)."""

    n_minority: int
    n_majority: int
    pos_rate_a: float
    pos_rate_b: float
    minority_pos: BetaParams
    minority_neg: BetaParams
    majority_pos: BetaParams
    majority_neg: BetaParams
    seed: int

    def __post_init__(self):
        if self.n_minority < 1 or self.n_majority < 1:
            raise InvalidSpecError("group counts must be >= 1")
        for name, rate in (("pos_rate_a", self.pos_rate_a), ("pos_rate_b", self.pos_rate_b)):
            if not (0.0 <= rate <= 1.0):
                raise InvalidSpecError(f"{name} must lie in [0, 1], got {rate}")

    @classmethod
    def from_dict(cls, data: dict) -> "SynthSpec":
        def beta(key):
            try:
                s1, s2 = data[key]
            except (KeyError, TypeError, ValueError):
                raise InvalidSpecError(
                    f"spec field {key!r} must be a [shape1, shape2] pair"
                ) from None
            return BetaParams(float(s1), float(s2))

        try:
            return cls(
                n_minority=int(data["n_minority"]),
                n_majority=int(data["n_majority"]),
                pos_rate_a=float(data["pos_rate_a"]),
                pos_rate_b=float(data["pos_rate_b"]),
                minority_pos=beta("minority_pos"),
                minority_neg=beta("minority_neg"),
                majority_pos=beta("majority_pos"),
                majority_neg=beta("majority_neg"),
                seed=int(data["seed"]),
            )
        except KeyError as exc:
            raise InvalidSpecError(f"spec is missing field {exc.args[0]!r}") from None


def generate(spec: SynthSpec) -> ScoreDataset:
    """Draw a labeled dataset; identical spec (incl. seed) => identical data."""
    rng = np.random.default_rng(spec.seed)
    pairs: list[ScoredPair] = []
    width = len(str(spec.n_minority + spec.n_majority))
    plan = (
        (GroupId.MINORITY, spec.n_minority, spec.pos_rate_a, spec.minority_pos, spec.minority_neg),
        (GroupId.MAJORITY, spec.n_majority, spec.pos_rate_b, spec.majority_pos, spec.majority_neg),
    )
    serial = 0
    for group, n, rate, pos, neg in plan:
        labels = (rng.random(n) < rate).astype(int)
        shape1 = np.where(labels == 1, pos.shape1, neg.shape1)
        shape2 = np.where(labels == 1, pos.shape2, neg.shape2)
        scores = rng.beta(shape1, shape2)
        for label, score in zip(labels, scores):
            serial += 1
            pairs.append(ScoredPair(f"p{serial:0{width}d}", float(score), group, int(label)))
    return ScoreDataset(tuple(pairs))
