"""Per-sentence feature scoring and linear fusion.

Five features per sentence, in fixed column order: position prior, TF-IDF
mass, aggregate cosine similarity, centroid weight, sentiment strength.
Columns are normalized independently (raw / L2 / max per column) and fused
as a weighted sum into one salience score per sentence.
"""

from __future__ import annotations

import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import sentiment as sentiment_mod
from .errors import DimensionMismatch, InvalidIndex
from .textcore import Document, Sentence, binary_cosine

COLUMN_NAMES = ("position", "tfidf", "aggregate_sim", "centroid", "sentiment")

#: Profile under which every column keeps the scale its scorer produces in
#: [0, 1] (position, sentiment raw; centroid max-scaled) while the two
#: unbounded columns are L2-normalized.
DEFAULT_NORMALIZATION: Mapping[str, str] = {
    "position": "raw",
    "tfidf": "l2",
    "aggregate_sim": "l2",
    "centroid": "max",
    "sentiment": "raw",
}

POSITION_MODES = ("eq2", "table1")


@dataclass(frozen=True)
class FeatureConfig:
    """Knobs for building a feature matrix."""

    position_mode: str = "table1"
    normalization: Mapping[str, str] = field(
        default_factory=lambda: dict(DEFAULT_NORMALIZATION)
    )
    centroid_keep_threshold: float = 0.0

    def __post_init__(self):
        if self.position_mode not in POSITION_MODES:
            raise ValueError(f"unknown position mode {self.position_mode!r}")
        for name in COLUMN_NAMES:
            tag = self.normalization.get(name, "raw")
            if tag not in ("raw", "l2", "max"):
                raise ValueError(f"unknown normalization {tag!r} for column {name!r}")


@dataclass(frozen=True)
class FeatureWeights:
    """Per-feature weights and on/off mask, in :data:`COLUMN_NAMES` order."""

    w: tuple[float, float, float, float, float] = (1.0, 1.0, 1.0, 1.0, 1.0)
    mask: tuple[bool, bool, bool, bool, bool] = (True, True, True, True, True)

    def __post_init__(self):
        if len(self.w) != 5 or len(self.mask) != 5:
            raise DimensionMismatch("weights and mask must have 5 entries")
        if any(x < 0 for x in self.w):
            raise ValueError("feature weights must be non-negative")
        if not any(self.mask):
            raise ValueError("at least one feature must be enabled")

    def effective(self) -> tuple[float, ...]:
        """Weights with masked-out features forced to 0."""
        return tuple(w if on else 0.0 for w, on in zip(self.w, self.mask))


@dataclass(frozen=True)
class ScoredSentence:
    index: int
    total: float
    per_feature: tuple[float, float, float, float, float]


@dataclass(frozen=True)
class FeatureMatrix:
    """M x 5 matrix of per-sentence feature scores.

    ``normalization`` records, per column, which rescaling produced the
    stored values.
    """

    values: np.ndarray
    normalization: tuple[str, str, str, str, str]

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[1] != len(COLUMN_NAMES):
            raise DimensionMismatch(
                f"expected an M x {len(COLUMN_NAMES)} matrix, got {self.values.shape}"
            )
        self.values.setflags(write=False)

    @property
    def row_count(self) -> int:
        return self.values.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, COLUMN_NAMES.index(name)]

    def row(self, i: int) -> tuple[float, ...]:
        return tuple(float(x) for x in self.values[i])

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema_version": 1,
                "columns": list(COLUMN_NAMES),
                "normalization": dict(zip(COLUMN_NAMES, self.normalization)),
                "rows": [[float(x) for x in row] for row in self.values],
            },
            indent=2,
        )

    def to_csv(self) -> str:
        out = io.StringIO()
        tags = ",".join(f"{n}={t}" for n, t in zip(COLUMN_NAMES, self.normalization))
        out.write(f"# normalization: {tags}\n")
        out.write("sentence," + ",".join(COLUMN_NAMES) + "\n")
        for i, row in enumerate(self.values):
            out.write(f"{i}," + ",".join(repr(float(x)) for x in row) + "\n")
        return out.getvalue()


def position_score(i: int, m: int, mode: str = "table1") -> float:
    """Leading-sentence prior for the sentence at 1-based rank ``i`` of ``m``.

    ``eq2`` divides by the sentence count; ``table1`` divides by count + 1,
    the convention the bundled calibration fixtures were produced with.
    Strictly decreasing in ``i``, always in (0, 1].
    """
    if mode not in POSITION_MODES:
        raise ValueError(f"unknown position mode {mode!r}")
    if i < 1 or i > m:
        raise InvalidIndex(f"rank {i} outside 1..{m}")
    denom = m + 1 if mode == "table1" else m
    return 1.0 - (i - 1) / denom


def tfidf_word_weight(term: str, sentence_tf: int, sentence_count: int, df: int) -> float:
    """tf * ln(M/df), treating each sentence as a document.

    Zero when the term is absent; a term present in every sentence gets
    idf ln(1) = 0.
    """
    if sentence_tf == 0:
        return 0.0
    if df < 1:
        raise ValueError(f"term {term!r} occurs but df={df}")
    if df > sentence_count:
        raise ValueError(f"df={df} exceeds sentence count {sentence_count}")
    return sentence_tf * math.log(sentence_count / df)


@lru_cache(maxsize=64)
def document_frequencies(doc: Document) -> Mapping[str, int]:
    """Per-term count of sentences whose filtered tokens contain the term."""
    df: Counter[str] = Counter()
    for s in doc.sentences:
        df.update(set(s.filtered_tokens))
    return dict(df)


def tfidf_sentence_score(sentence: Sentence, doc: Document) -> float:
    """Sum of tf*idf weights over the sentence's distinct filtered terms."""
    m = len(doc.sentences)
    df = document_frequencies(doc)
    counts = Counter(sentence.filtered_tokens)
    return sum(
        tfidf_word_weight(t, tf, m, df[t]) for t, tf in counts.items()
    )


def aggregate_similarity_score(i: int, doc: Document) -> float:
    """Summed binary-vector cosine of sentence ``i`` against all others."""
    if i < 0 or i >= len(doc.sentences):
        raise InvalidIndex(f"sentence index {i} outside 0..{len(doc.sentences) - 1}")
    sets = [frozenset(s.filtered_tokens) for s in doc.sentences]
    own = sets[i]
    return sum(binary_cosine(own, other) for j, other in enumerate(sets) if j != i)


def _centroid_word_values(doc: Document, keep_threshold: float) -> dict[str, float]:
    m = len(doc.sentences)
    df = document_frequencies(doc)
    totals: Counter[str] = Counter()
    for s in doc.sentences:
        for t, tf in Counter(s.filtered_tokens).items():
            totals[t] += tf * math.log(m / df[t])
    return {
        t: v / m for t, v in totals.items() if v / m >= keep_threshold
    }


def _centroid_raw(doc: Document, keep_threshold: float = 0.0) -> list[float]:
    words = _centroid_word_values(doc, keep_threshold)
    # Sorted distinct terms: float addition order must not depend on set
    # iteration order, or results drift across interpreter runs.
    return [
        sum(words.get(t, 0.0) for t in sorted(set(s.filtered_tokens)))
        for s in doc.sentences
    ]


def centroid_scores(doc: Document, keep_threshold: float = 0.0) -> list[float]:
    """Per-sentence centroid column, max-scaled so the best sentence scores 1.

    A word's centroid value is its tf*idf weight averaged over all
    sentences; words below ``keep_threshold`` are dropped. A sentence sums
    the values of its distinct filtered terms. An all-zero column (every
    word in every sentence) stays all-zero.
    """
    return max_normalize_column(_centroid_raw(doc, keep_threshold))


def normalize_column(values: Sequence[float]) -> list[float]:
    """Scale a column by 1/sqrt(sum of squares); all-zero input is unchanged."""
    norm = math.sqrt(sum(v * v for v in values))
    if norm == 0.0:
        return list(values)
    return [v / norm for v in values]


def max_normalize_column(values: Sequence[float]) -> list[float]:
    """Scale a column so its maximum is exactly 1; all-zero input is unchanged."""
    top = max(values, default=0.0)
    if top == 0.0:
        return list(values)
    return [v / top for v in values]


_NORMALIZERS = {
    "raw": lambda vals: list(vals),
    "l2": normalize_column,
    "max": max_normalize_column,
}


def build_feature_matrix(
    doc: Document,
    sentiment_provider,
    config: FeatureConfig | None = None,
) -> FeatureMatrix:
    """Score every sentence on all five features and normalize per column."""
    config = config or FeatureConfig()
    m = len(doc.sentences)
    sets = [frozenset(s.filtered_tokens) for s in doc.sentences]

    position = [position_score(i + 1, m, config.position_mode) for i in range(m)]
    tfidf = [tfidf_sentence_score(s, doc) for s in doc.sentences]
    aggregate = [
        sum(binary_cosine(sets[i], sets[j]) for j in range(m) if j != i)
        for i in range(m)
    ]
    centroid = _centroid_raw(doc, config.centroid_keep_threshold)
    senti = [
        sentiment_mod.sentence_sentiment_score(s, sentiment_provider)
        for s in doc.sentences
    ]

    columns = dict(
        zip(COLUMN_NAMES, (position, tfidf, aggregate, centroid, senti))
    )
    tags = tuple(config.normalization.get(name, "raw") for name in COLUMN_NAMES)
    normalized = [
        _NORMALIZERS[tag](columns[name]) for name, tag in zip(COLUMN_NAMES, tags)
    ]
    values = np.column_stack([np.asarray(col, dtype=np.float64) for col in normalized])
    return FeatureMatrix(values=values, normalization=tags)


def total_scores(matrix: FeatureMatrix, weights: FeatureWeights) -> list[ScoredSentence]:
    """Fuse matrix rows into per-sentence totals; output is unsorted."""
    effective = np.asarray(weights.effective(), dtype=np.float64)
    if matrix.values.shape[1] != effective.shape[0]:
        raise DimensionMismatch(
            f"matrix has {matrix.values.shape[1]} columns, weights {effective.shape[0]}"
        )
    totals = matrix.values @ effective
    return [
        ScoredSentence(index=i, total=float(totals[i]), per_feature=matrix.row(i))
        for i in range(matrix.row_count)
    ]
