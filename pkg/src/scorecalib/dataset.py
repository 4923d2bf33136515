"""Scored record pairs: domain types, validation, and CSV ingestion.

A pair carries a matching score in [0, 1], a binary group membership
(minority/majority), and an optional binary label.  Pair-level files
give the group directly; record-level files give one group token per
record and the pair counts as minority if either record does.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    MalformedRowError,
    ScoreOutOfRangeError,
    UnknownGroupError,
)


class GroupId(enum.Enum):
    """Demographic group of a record pair."""

    MINORITY = "minority"
    MAJORITY = "majority"

    def other(self) -> "GroupId":
        return GroupId.MAJORITY if self is GroupId.MINORITY else GroupId.MINORITY


class Schema(enum.Enum):
    """CSV layouts accepted by :func:`load_dataset`."""

    PAIR_LEVEL = "pair"
    RECORD_LEVEL = "record"


PAIR_HEADER = ("id", "score", "group", "label")
RECORD_HEADER = ("id", "score", "group_left", "group_right", "label")


def _check_score(score: float, context: str = "") -> float:
    score = float(score)
    # a NaN fails both comparisons, so it is rejected here too
    if not (0.0 <= score <= 1.0):
        raise ScoreOutOfRangeError(f"score {score!r} outside [0, 1]{context}")
    return score


@dataclass(frozen=True)
class ScoredPair:
    """One record pair: opaque id, score in [0, 1], group, optional label."""

    id: str
    score: float
    group: GroupId
    label: int | None = None

    def __post_init__(self):
        _check_score(self.score, f" (pair {self.id!r})")
        if self.label not in (None, 0, 1):
            raise MalformedRowError(
                f"label must be 0, 1 or missing, got {self.label!r} (pair {self.id!r})"
            )


@dataclass(frozen=True)
class RecordPairRaw:
    """A pair before group derivation: one group token per record side."""

    id: str
    score: float
    group_left: GroupId
    group_right: GroupId
    label: int | None = None

    def __post_init__(self):
        _check_score(self.score, f" (pair {self.id!r})")
        if self.label not in (None, 0, 1):
            raise MalformedRowError(
                f"label must be 0, 1 or missing, got {self.label!r} (pair {self.id!r})"
            )


def derive_pair_group(raw: RecordPairRaw) -> GroupId:
    """A pair is a minority pair iff either of its records is minority."""
    if GroupId.MINORITY in (raw.group_left, raw.group_right):
        return GroupId.MINORITY
    return GroupId.MAJORITY


@dataclass(frozen=True)
class ScoreDataset:
    """Immutable, validated collection of scored pairs.

    ``labeled`` is true iff every pair carries a label; mixed labeling is
    permitted and simply yields an unlabeled dataset.
    """

    pairs: tuple[ScoredPair, ...]
    labeled: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "labeled", all(p.label is not None for p in self.pairs)
        )

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def scores(self) -> np.ndarray:
        return np.array([p.score for p in self.pairs], dtype=float)

    def groups(self) -> list[GroupId]:
        return [p.group for p in self.pairs]

    def labels(self) -> np.ndarray:
        from .errors import UnlabeledDatasetError

        if not self.labeled:
            raise UnlabeledDatasetError("dataset has pairs with missing labels")
        return np.array([p.label for p in self.pairs], dtype=int)

    def group_scores(self, group: GroupId) -> np.ndarray:
        return np.array([p.score for p in self.pairs if p.group is group], dtype=float)

    def stratum_scores(self, group: GroupId, label: int) -> np.ndarray:
        from .errors import UnlabeledDatasetError

        if not self.labeled:
            raise UnlabeledDatasetError("dataset has pairs with missing labels")
        return np.array(
            [p.score for p in self.pairs if p.group is group and p.label == label],
            dtype=float,
        )

    def count(self, group: GroupId) -> int:
        return sum(1 for p in self.pairs if p.group is group)

    def subset(self, group: GroupId) -> "ScoreDataset":
        return ScoreDataset(tuple(p for p in self.pairs if p.group is group))

    def with_scores(self, new_scores: Sequence[float]) -> "ScoreDataset":
        """Same pairs (ids, groups, labels) with scores replaced."""
        from .errors import LengthMismatchError

        if len(new_scores) != len(self.pairs):
            raise LengthMismatchError(
                f"{len(new_scores)} scores for {len(self.pairs)} pairs"
            )
        return ScoreDataset(
            tuple(
                ScoredPair(p.id, float(s), p.group, p.label)
                for p, s in zip(self.pairs, new_scores)
            )
        )


class GroupVocabulary:
    """Maps raw group tokens to :class:`GroupId`.

    One token is declared minority.  When a majority token is declared,
    the vocabulary is closed and any other token is rejected; otherwise
    every non-minority, non-empty token counts as majority.
    """

    def __init__(self, minority_token: str, majority_token: str | None = None):
        if not minority_token:
            raise UnknownGroupError("minority token must be a non-empty string")
        if majority_token == minority_token:
            raise UnknownGroupError("minority and majority tokens must differ")
        self.minority_token = minority_token
        self.majority_token = majority_token

    def resolve(self, token: str) -> GroupId:
        if token == self.minority_token:
            return GroupId.MINORITY
        if self.majority_token is None:
            if token == "":
                raise UnknownGroupError("empty group token")
            return GroupId.MAJORITY
        if token == self.majority_token:
            return GroupId.MAJORITY
        raise UnknownGroupError(
            f"group token {token!r} not in vocabulary "
            f"({self.minority_token!r}, {self.majority_token!r})"
        )


def _read_text(source) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    if isinstance(source, bytes):
        return source.decode("utf-8")
    return source.read()


def parse_rows(source, schema: Schema) -> list[list[str]]:
    """Read and shape-check CSV rows, keeping raw string fields.

    Returns data rows only (header consumed).  Raises
    :class:`MalformedRowError` on a missing/mismatched header or a row
    with the wrong column count.
    """
    expected = PAIR_HEADER if schema is Schema.PAIR_LEVEL else RECORD_HEADER
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRowError("empty file: header row required") from None
    if tuple(h.strip() for h in header) != expected:
        raise MalformedRowError(
            f"expected header {','.join(expected)!r}, got {','.join(header)!r}"
        )
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(expected):
            raise MalformedRowError(
                f"line {lineno}: expected {len(expected)} columns, got {len(row)}"
            )
        rows.append(row)
    return rows


def _parse_score(text: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise MalformedRowError(f"line {lineno}: bad score {text!r}") from None
    if not (0.0 <= value <= 1.0):
        raise ScoreOutOfRangeError(f"line {lineno}: score {value!r} outside [0, 1]")
    return value


def _parse_label(text: str, lineno: int) -> int | None:
    text = text.strip()
    if text == "":
        return None
    if text in ("0", "1"):
        return int(text)
    raise MalformedRowError(f"line {lineno}: label must be 0, 1 or empty, got {text!r}")


def dataset_from_rows(
    rows: Iterable[Sequence[str]], schema: Schema, vocab: GroupVocabulary
) -> ScoreDataset:
    pairs = []
    for lineno, row in enumerate(rows, start=2):
        if schema is Schema.PAIR_LEVEL:
            pid, score, group, label = row
            pairs.append(
                ScoredPair(
                    pid,
                    _parse_score(score, lineno),
                    vocab.resolve(group.strip()),
                    _parse_label(label, lineno),
                )
            )
        else:
            pid, score, left, right, label = row
            raw = RecordPairRaw(
                pid,
                _parse_score(score, lineno),
                vocab.resolve(left.strip()),
                vocab.resolve(right.strip()),
                _parse_label(label, lineno),
            )
            pairs.append(
                ScoredPair(raw.id, raw.score, derive_pair_group(raw), raw.label)
            )
    return ScoreDataset(tuple(pairs))


def load_dataset(
    source,
    schema: Schema,
    minority_token: str,
    majority_token: str | None = None,
) -> ScoreDataset:
    """Parse a CSV file (path, bytes, or file object) into a dataset."""
    vocab = GroupVocabulary(minority_token, majority_token)
    return dataset_from_rows(parse_rows(source, schema), schema, vocab)


def dump_dataset(dataset: ScoreDataset, dest) -> None:
    """Write a dataset as pair-level CSV with canonical group tokens.

    Round-trips: re-loading with ``minority_token="minority"`` yields an
    identical dataset.  Scores are written at full (repr) precision.
    """
    close = False
    if isinstance(dest, (str, Path)):
        dest = open(dest, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(dest, lineterminator="\n")
        writer.writerow(PAIR_HEADER)
        for p in dataset.pairs:
            writer.writerow(
                [p.id, repr(p.score), p.group.value, "" if p.label is None else p.label]
            )
    finally:
        if close:
            dest.close()
