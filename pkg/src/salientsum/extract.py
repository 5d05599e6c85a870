"""Greedy salient-sentence selection under a redundancy threshold and budget.

Candidates are visited in descending salience order. The top sentence is
always taken; each later candidate joins the summary only while the word
budget is open and its cosine similarity to the growing summary stays
below the threshold theta. Selected sentences are finally re-ordered as in
the source document.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetTooSmall, EmptyDocument, InvalidBudget
from .features import FeatureWeights, ScoredSentence
from .textcore import Document, binary_cosine

#: Redundancy threshold used in the worked single-document run.
THETA_DEFAULT = 0.1
#: Stricter alternative threshold recommended when long stopword lists are
#: in play; kept as a named preset.
THETA_STRICT = 0.04

SIMILARITY_MODES = ("pool", "max_pairwise")


@dataclass(frozen=True)
class SummaryConfig:
    """Extraction parameters.

    ``budget`` is either an absolute word count (int) or a percentage
    string like ``"15%"``. ``similarity_mode`` chooses what a candidate is
    compared against: the pooled tokens of the summary so far (default) or
    the maximum over per-sentence similarities.
    """

    theta: float = THETA_DEFAULT
    budget: int | str = "15%"
    weights: FeatureWeights = field(default_factory=FeatureWeights)
    position_mode: str = "table1"
    similarity_mode: str = "pool"

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta {self.theta} outside [0, 1]")
        if self.similarity_mode not in SIMILARITY_MODES:
            raise ValueError(f"unknown similarity mode {self.similarity_mode!r}")


@dataclass(frozen=True)
class TraceEntry:
    """One selection decision: candidate, its similarity, and the outcome."""

    index: int
    similarity: float
    accepted: bool
    reason: str


@dataclass(frozen=True)
class Summary:
    """Selected sentence indices in source order plus the decision log."""

    selected: tuple[int, ...]
    word_count: int
    trace: tuple[TraceEntry, ...]


def rank_sentences(scored: Sequence[ScoredSentence]) -> list[ScoredSentence]:
    """Descending by total score; ties broken by smaller source index."""
    return sorted(scored, key=lambda s: (-s.total, s.index))


def resolve_budget(budget: int | str, doc: Document) -> int:
    """Turn a word count or percentage budget into a word count.

    Percentages are taken against the document's total (pre-stopword)
    word count and rounded up.
    """
    total = sum(s.word_count for s in doc.sentences)
    if isinstance(budget, bool):
        raise InvalidBudget(f"bad budget {budget!r}")
    if isinstance(budget, int):
        if budget <= 0:
            raise InvalidBudget(f"budget must be positive, got {budget}")
        return budget
    if isinstance(budget, str):
        text = budget.strip()
        if text.endswith("%"):
            try:
                pct = float(text[:-1])
            except ValueError as exc:
                raise InvalidBudget(f"bad percentage {budget!r}") from exc
            if pct <= 0:
                raise InvalidBudget(f"percentage must be positive, got {budget!r}")
            return math.ceil(pct / 100.0 * total)
        try:
            words = int(text)
        except ValueError as exc:
            raise InvalidBudget(f"bad budget {budget!r}") from exc
        if words <= 0:
            raise InvalidBudget(f"budget must be positive, got {budget!r}")
        return words
    raise InvalidBudget(f"budget must be an int or a string, got {type(budget).__name__}")


def _candidate_similarity(
    candidate: frozenset,
    pool: set,
    selected_sets: list[frozenset],
    mode: str,
) -> float:
    if mode == "pool":
        return binary_cosine(candidate, pool)
    return max((binary_cosine(candidate, s) for s in selected_sets), default=0.0)


def select_sentences(
    ranked: Sequence[ScoredSentence],
    doc: Document,
    config: SummaryConfig,
) -> Summary:
    """Greedy selection over pre-ranked sentences.

    ``ranked`` must cover every sentence of ``doc`` exactly once, sorted by
    descending total (ties by source index). The scan stops once the word
    budget is reached; the budget can be exceeded only by the sentence that
    crosses it.
    """
    if not doc.sentences:
        raise EmptyDocument("document has no sentences")
    if not ranked:
        raise EmptyDocument("no ranked sentences to select from")
    indices = sorted(s.index for s in ranked)
    if indices != list(range(len(doc.sentences))):
        raise ValueError("ranked list must cover each document sentence exactly once")

    limit = resolve_budget(config.budget, doc)
    top = doc.sentences[ranked[0].index]
    if top.word_count > limit:
        warnings.warn(
            f"top sentence has {top.word_count} words, budget is {limit}; "
            "selecting it anyway",
            BudgetTooSmall,
        )
    selected = [top.index]
    selected_sets = [frozenset(top.filtered_tokens)]
    pool = set(top.filtered_tokens)
    word_count = top.word_count
    trace = [TraceEntry(top.index, 0.0, True, "top_ranked")]

    for cand in ranked[1:]:
        if word_count >= limit:
            break
        sent = doc.sentences[cand.index]
        cand_set = frozenset(sent.filtered_tokens)
        sim = _candidate_similarity(cand_set, pool, selected_sets, config.similarity_mode)
        if sim < config.theta:
            selected.append(cand.index)
            selected_sets.append(cand_set)
            pool |= cand_set
            word_count += sent.word_count
            trace.append(TraceEntry(cand.index, sim, True, "accepted"))
        else:
            trace.append(TraceEntry(cand.index, sim, False, "redundant"))

    selected.sort()
    return Summary(selected=tuple(selected), word_count=word_count, trace=tuple(trace))


def render_summary(summary: Summary, doc: Document) -> str:
    """Selected sentences joined with single spaces, in source order."""
    for i in summary.selected:
        if i < 0 or i >= len(doc.sentences):
            raise ValueError(f"summary index {i} not in document")
    return " ".join(doc.sentences[i].raw for i in summary.selected)
