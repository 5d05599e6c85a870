"""Experiment driver: feature-combination sweeps and the scoring pipeline.

Feature numbering for masks and labels follows the experiment convention:
1 = TF-IDF, 2 = aggregate similarity, 3 = position, 4 = centroid,
5 = sentiment. Labels such as ``"1+2+5"`` list the enabled features.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Sequence

from . import sentiment as sentiment_mod
from .errors import EmptyReference
from .extract import Summary, SummaryConfig, rank_sentences, render_summary, select_sentences
from .features import (
    COLUMN_NAMES,
    FeatureConfig,
    FeatureMatrix,
    FeatureWeights,
    ScoredSentence,
    build_feature_matrix,
    total_scores,
)
from .rouge import RougeReport, score_all
from .textcore import Document, tokenize

#: Feature names in experiment numbering order (1-based positions).
EXPERIMENT_FEATURE_ORDER = ("tfidf", "aggregate_sim", "position", "centroid", "sentiment")
_NUMBERING_TO_COLUMN = tuple(COLUMN_NAMES.index(name) for name in EXPERIMENT_FEATURE_ORDER)

#: Metric set reported per ablation row.
ABLATION_METRICS = ("rouge1", "rouge2", "rougeL", "rougeW", "rougeS*", "rougeSU*")


@dataclass(frozen=True)
class FeatureMask:
    """Subset of features, as booleans in experiment numbering order."""

    bits: tuple[bool, ...]

    def __post_init__(self):
        if not self.bits:
            raise ValueError("mask needs at least one feature slot")
        if not any(self.bits):
            raise ValueError("mask must enable at least one feature")

    @property
    def label(self) -> str:
        return "+".join(str(i + 1) for i, on in enumerate(self.bits) if on)

    @property
    def value(self) -> int:
        return sum(1 << i for i, on in enumerate(self.bits) if on)

    @classmethod
    def from_label(cls, label: str, k: int = 5) -> "FeatureMask":
        bits = [False] * k
        for part in label.replace(",", "+").split("+"):
            part = part.strip()
            if not part.isdigit() or not 1 <= int(part) <= k:
                raise ValueError(f"bad feature id {part!r} in mask {label!r}")
            bits[int(part) - 1] = True
        return cls(bits=tuple(bits))


def enumerate_masks(k: int) -> list[FeatureMask]:
    """All 2**k - 1 non-empty masks, ordered by (feature count, numeric value)."""
    if not 1 <= k <= 16:
        raise ValueError(f"feature count must be in 1..16, got {k}")
    masks = [
        FeatureMask(bits=tuple(bool(value >> i & 1) for i in range(k)))
        for value in range(1, 1 << k)
    ]
    masks.sort(key=lambda m: (sum(m.bits), m.value))
    return masks


def reorder_from_experiment_numbering(values: Sequence) -> tuple:
    """Rearrange five values from experiment numbering into column order."""
    if len(values) != 5:
        raise ValueError(f"expected 5 values, got {len(values)}")
    out = [None] * 5
    for slot, value in enumerate(values):
        out[_NUMBERING_TO_COLUMN[slot]] = value
    return tuple(out)


def mask_to_weights(mask: FeatureMask, base: FeatureWeights | None = None) -> FeatureWeights:
    """Convert an experiment-numbered mask to column-ordered feature weights."""
    if len(mask.bits) != 5:
        raise ValueError(f"expected a 5-feature mask, got {len(mask.bits)} bits")
    base = base or FeatureWeights()
    return FeatureWeights(w=base.w, mask=reorder_from_experiment_numbering(mask.bits))


@dataclass(frozen=True)
class PipelineResult:
    document: Document
    matrix: FeatureMatrix
    ranked: tuple[ScoredSentence, ...]
    summary: Summary
    text: str


def summarize_document(
    doc: Document,
    provider=None,
    config: SummaryConfig | None = None,
    feature_config: FeatureConfig | None = None,
) -> PipelineResult:
    """Score, rank, select, and render one document."""
    config = config or SummaryConfig()
    provider = provider if provider is not None else sentiment_mod.default_provider()
    feature_config = feature_config or FeatureConfig(position_mode=config.position_mode)
    matrix = build_feature_matrix(doc, provider, feature_config)
    ranked = rank_sentences(total_scores(matrix, config.weights))
    summary = select_sentences(ranked, doc, config)
    return PipelineResult(
        document=doc,
        matrix=matrix,
        ranked=tuple(ranked),
        summary=summary,
        text=render_summary(summary, doc),
    )


def summarize_text(
    raw: str,
    stopwords=None,
    provider=None,
    config: SummaryConfig | None = None,
    feature_config: FeatureConfig | None = None,
) -> PipelineResult:
    doc = Document.from_text(raw, stopwords)
    return summarize_document(doc, provider, config, feature_config)


@dataclass(frozen=True)
class AblationConfig:
    """Sweep parameters: summary budget, scoring limits, metric set."""

    theta: float = 0.1
    budget: int | str = 100
    limit_words: int | None = 100
    w_exponent: float = 1.2
    base_weights: FeatureWeights = field(default_factory=FeatureWeights)
    position_mode: str = "table1"
    similarity_mode: str = "pool"
    metrics: tuple[str, ...] = ABLATION_METRICS


@dataclass(frozen=True)
class AblationRow:
    """One feature combination and its summary's evaluation scores.

    ``error`` is set (and ``scores`` is None) when the row failed; a failed
    row never aborts the sweep.
    """

    mask: FeatureMask
    label: str
    scores: RougeReport | None
    summary_text: str = ""
    error: str | None = None


def run_ablation(
    doc: Document,
    references: Sequence[str],
    config: AblationConfig | None = None,
    provider=None,
) -> list[AblationRow]:
    """Summarize and score the document once per non-empty feature subset.

    ``references`` are reference summary texts. The system summary and all
    references are truncated to ``config.limit_words`` before scoring.
    """
    config = config or AblationConfig()
    provider = provider if provider is not None else sentiment_mod.default_provider()
    ref_tokens = [tokenize(r) for r in references]
    if not ref_tokens or any(not r for r in ref_tokens):
        raise EmptyReference("ablation needs at least one non-empty reference")

    matrix = build_feature_matrix(
        doc, provider, FeatureConfig(position_mode=config.position_mode)
    )
    rows: list[AblationRow] = []
    for mask in enumerate_masks(5):
        try:
            weights = mask_to_weights(mask, config.base_weights)
            ranked = rank_sentences(total_scores(matrix, weights))
            summary = select_sentences(
                ranked,
                doc,
                SummaryConfig(
                    theta=config.theta,
                    budget=config.budget,
                    weights=weights,
                    position_mode=config.position_mode,
                    similarity_mode=config.similarity_mode,
                ),
            )
            text = render_summary(summary, doc)
            report = score_all(
                tokenize(text),
                ref_tokens,
                metrics=config.metrics,
                w=config.w_exponent,
                limit_words=config.limit_words,
            )
            rows.append(
                AblationRow(mask=mask, label=mask.label, scores=report, summary_text=text)
            )
        except Exception as exc:  # failed rows are recorded, not fatal
            rows.append(
                AblationRow(mask=mask, label=mask.label, scores=None, error=str(exc))
            )
    return rows


def ablation_to_csv(rows: Sequence[AblationRow], metrics: Sequence[str] = ABLATION_METRICS) -> str:
    out = io.StringIO()
    headers = ["label"]
    for name in metrics:
        headers += [f"{name}_recall", f"{name}_precision", f"{name}_f"]
    headers.append("error")
    out.write(",".join(headers) + "\n")
    for row in rows:
        cells = [row.label]
        for name in metrics:
            if row.scores is not None and name in row.scores.scores:
                s = row.scores.scores[name]
                cells += [repr(s.recall), repr(s.precision), repr(s.f)]
            else:
                cells += ["", "", ""]
        cells.append(row.error or "")
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def ablation_to_json(rows: Sequence[AblationRow]) -> str:
    payload = {
        "schema_version": 1,
        "rows": [
            {
                "label": row.label,
                "bits": list(row.mask.bits),
                "scores": None
                if row.scores is None
                else {
                    name: {"recall": s.recall, "precision": s.precision, "f": s.f}
                    for name, s in row.scores.scores.items()
                },
                "summary": row.summary_text,
                "error": row.error,
            }
            for row in rows
        ],
    }
    return json.dumps(payload, indent=2)


def cli_main(argv: Sequence[str] | None = None) -> int:
    """Command-line entry point; see :mod:`salientsum.cli`."""
    from .cli import cli_main as _cli_main

    return _cli_main(argv)
