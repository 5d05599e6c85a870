"""Self-contained ROUGE metric suite.

Fourteen metrics: rouge1..rouge10 (n-gram overlap), rougeL (longest common
subsequence), rougeW (run-weighted LCS), rougeS* (skip-bigrams, unlimited
gap) and rougeSU* (skip-bigrams plus unigrams). Scoring uses the same
tokenizer as document ingestion but never removes stopwords.

Multi-reference handling: counting metrics (n-gram and skip-bigram) pool
match and reference-gram counts across references for recall, and
macro-average per-reference precision; the subsequence metrics (L, W)
macro-average both components. F is always the harmonic mean of the
stored precision and recall.
"""

from __future__ import annotations

import io
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .errors import EmptyInput, EmptyReference, InvalidExponent
from .textcore import tokenize

METRIC_NAMES = tuple(f"rouge{n}" for n in range(1, 11)) + (
    "rougeL",
    "rougeW",
    "rougeS*",
    "rougeSU*",
)

#: Run-weighting exponent used by the evaluation protocol.
DEFAULT_W_EXPONENT = 1.5
#: Run-weighting exponent used by the feature-ablation experiment.
ABLATION_W_EXPONENT = 1.2

# Begin-of-text marker for rougeSU*: pairing it with each token turns
# unigram matches into skip-bigram matches. A unique object can never
# collide with a real token.
_BOS = object()


class RougeScore(NamedTuple):
    recall: float
    precision: float
    f: float


def _score(precision: float, recall: float) -> RougeScore:
    denom = precision + recall
    f = 2.0 * precision * recall / denom if denom > 0.0 else 0.0
    return RougeScore(recall, precision, f)


def _check_references(references: Sequence[Sequence[str]]) -> None:
    if not references or any(len(r) == 0 for r in references):
        raise EmptyReference("at least one non-empty reference is required")


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    """Multiset of contiguous n-grams as tuples; empty when the text is short."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if len(tokens) < n:
        return Counter()
    return Counter(zip(*(tokens[i:] for i in range(n))))


def _clipped_match(a: Counter, b: Counter) -> int:
    if len(b) < len(a):
        a, b = b, a
    total = 0
    for gram, count in a.items():
        other = b.get(gram)
        if other:
            total += count if count < other else other
    return total


def rouge_n(
    system_tokens: Sequence[str],
    references: Sequence[Sequence[str]],
    n: int,
) -> RougeScore:
    """N-gram co-occurrence score with clipped counts."""
    if not 1 <= n <= 10:
        raise ValueError(f"n must be in 1..10, got {n}")
    _check_references(references)
    sys_counts = ngrams(system_tokens, n)
    sys_total = len(system_tokens) - n + 1
    match_total = 0
    ref_total = 0
    precision_sum = 0.0
    for ref in references:
        ref_counts = ngrams(ref, n)
        m = _clipped_match(sys_counts, ref_counts)
        match_total += m
        ref_total += max(len(ref) - n + 1, 0)
        if sys_total > 0:
            precision_sum += m / sys_total
    recall = match_total / ref_total if ref_total > 0 else 0.0
    precision = precision_sum / len(references)
    return _score(precision, recall)


def _lcs_len(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        append = cur.append
        best = 0
        for j, y in enumerate(b):
            if x == y:
                v = prev[j] + 1
            else:
                v = prev[j + 1]
                if cur[j] > v:
                    v = cur[j]
            append(v)
        prev = cur
    return prev[-1]


def rouge_l(
    system_tokens: Sequence[str],
    references: Sequence[Sequence[str]],
) -> RougeScore:
    """Longest-common-subsequence score, per-reference components averaged."""
    _check_references(references)
    sys_len = len(system_tokens)
    recall_sum = 0.0
    precision_sum = 0.0
    for ref in references:
        lcs = _lcs_len(system_tokens, ref)
        recall_sum += lcs / len(ref)
        if sys_len > 0:
            precision_sum += lcs / sys_len
    k = len(references)
    return _score(precision_sum / k, recall_sum / k)


def _wlcs(a: Sequence[str], b: Sequence[str], powers: Sequence[float]) -> float:
    """Maximum run-weighted common-subsequence score.

    A common subsequence scores sum f(k) over its maximal runs that are
    consecutive in both texts, f(k) = k**w. Bottom-up over suffixes; at a
    matching cell every run length starting there is tried, which keeps
    the result the true maximum (a greedy always-extend rule is not).
    """
    m, n = len(a), len(b)
    if m == 0 or n == 0:
        return 0.0
    rows = [[0.0] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row = rows[i]
        below = rows[i + 1]
        ai = a[i]
        for j in range(n - 1, -1, -1):
            best = below[j] if below[j] >= row[j + 1] else row[j + 1]
            if ai == b[j]:
                r = 1
                while True:
                    cand = powers[r] + rows[i + r][j + r]
                    if cand > best:
                        best = cand
                    if i + r < m and j + r < n and a[i + r] == b[j + r]:
                        r += 1
                    else:
                        break
            row[j] = best
    return rows[0][0]


def rouge_w(
    system_tokens: Sequence[str],
    references: Sequence[Sequence[str]],
    w: float = DEFAULT_W_EXPONENT,
) -> RougeScore:
    """Weighted-LCS score favoring consecutive matches, exponent ``w`` > 1.

    Components are normalized back to [0, 1] with the inverse weight
    function x**(1/w).
    """
    if w <= 1.0:
        raise InvalidExponent(f"w must be > 1, got {w}")
    _check_references(references)
    sys_len = len(system_tokens)
    max_run = max([sys_len, *(len(r) for r in references)])
    powers = [float(k) ** w for k in range(max_run + 1)]
    inv = 1.0 / w
    recall_sum = 0.0
    precision_sum = 0.0
    for ref in references:
        score = _wlcs(system_tokens, ref, powers)
        recall_sum += (score / powers[len(ref)]) ** inv
        if sys_len > 0:
            precision_sum += (score / powers[sys_len]) ** inv
    k = len(references)
    return _score(precision_sum / k, recall_sum / k)


def _skip_bigrams(tokens: Sequence[str], max_skip: int | None = None) -> Counter:
    counts: Counter = Counter()
    size = len(tokens)
    for i in range(size):
        ti = tokens[i]
        stop = size if max_skip is None else min(size, i + 1 + max_skip)
        for j in range(i + 1, stop):
            counts[(ti, tokens[j])] += 1
    return counts


def _rouge_skip(
    system_tokens: Sequence[str],
    references: Sequence[Sequence[str]],
    max_skip: int | None,
    with_unigrams: bool,
) -> RougeScore:
    _check_references(references)
    if with_unigrams:
        system_tokens = [_BOS, *system_tokens]
        references = [[_BOS, *r] for r in references]
    sys_counts = _skip_bigrams(system_tokens, max_skip)
    sys_total = sum(sys_counts.values())
    match_total = 0
    ref_total = 0
    precision_sum = 0.0
    for ref in references:
        ref_counts = _skip_bigrams(ref, max_skip)
        m = _clipped_match(sys_counts, ref_counts)
        match_total += m
        ref_total += sum(ref_counts.values())
        if sys_total > 0:
            precision_sum += m / sys_total
    recall = match_total / ref_total if ref_total > 0 else 0.0
    precision = precision_sum / len(references)
    return _score(precision, recall)


def rouge_s(
    system_tokens: Sequence[str],
    references: Sequence[Sequence[str]],
    max_skip: int | None = None,
) -> RougeScore:
    """Skip-bigram score over all ordered in-text pairs (unlimited gap)."""
    return _rouge_skip(system_tokens, references, max_skip, with_unigrams=False)


def rouge_su(
    system_tokens: Sequence[str],
    references: Sequence[Sequence[str]],
    max_skip: int | None = None,
) -> RougeScore:
    """Skip-bigram score extended with unigrams via a begin-of-text marker."""
    return _rouge_skip(system_tokens, references, max_skip, with_unigrams=True)


def truncate_words(tokens: Sequence[str], limit: int) -> list[str]:
    """First ``limit`` tokens; shorter inputs pass through whole."""
    if limit <= 0:
        raise ValueError(f"word limit must be positive, got {limit}")
    return list(tokens[:limit])


def sentence_overlap_pr(
    system_sentences: Sequence[str],
    reference_sentences: Sequence[str],
) -> RougeScore:
    """Exact-sentence overlap: precision over system, recall over reference.

    Sentences match when their token sequences are identical after
    tokenization.
    """
    if not system_sentences or not reference_sentences:
        raise EmptyInput("both sentence lists must be non-empty")
    ref_keys = {tuple(tokenize(s)) for s in reference_sentences}
    match = sum(1 for s in system_sentences if tuple(tokenize(s)) in ref_keys)
    precision = match / len(system_sentences)
    recall = match / len(reference_sentences)
    return _score(precision, recall)


@dataclass(frozen=True)
class RougeReport:
    """Named metric scores for one system-vs-references comparison."""

    scores: Mapping[str, RougeScore]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.scores) - set(METRIC_NAMES)
        if unknown:
            raise ValueError(f"unknown metric names: {sorted(unknown)}")


def score_all(
    system_tokens: Sequence[str],
    references: Sequence[Sequence[str]],
    metrics: Sequence[str] = METRIC_NAMES,
    w: float = DEFAULT_W_EXPONENT,
    limit_words: int | None = None,
) -> RougeReport:
    """Compute the requested metrics, optionally truncating texts first."""
    _check_references(references)
    unknown = set(metrics) - set(METRIC_NAMES)
    if unknown:
        raise ValueError(f"unknown metric names: {sorted(unknown)}")
    if limit_words is not None:
        system_tokens = truncate_words(system_tokens, limit_words)
        references = [truncate_words(r, limit_words) for r in references]
        _check_references(references)
    scores: dict[str, RougeScore] = {}
    for name in metrics:
        if name == "rougeL":
            scores[name] = rouge_l(system_tokens, references)
        elif name == "rougeW":
            scores[name] = rouge_w(system_tokens, references, w=w)
        elif name == "rougeS*":
            scores[name] = rouge_s(system_tokens, references)
        elif name == "rougeSU*":
            scores[name] = rouge_su(system_tokens, references)
        else:
            scores[name] = rouge_n(system_tokens, references, int(name[5:]))
    return RougeReport(
        scores=scores,
        metadata={
            "word_limit": limit_words,
            "w_exponent": w,
            "reference_count": len(references),
        },
    )


def report_to_json(report: RougeReport) -> str:
    return json.dumps(
        {
            "schema_version": 1,
            "metadata": dict(report.metadata),
            "scores": {
                name: {"recall": s.recall, "precision": s.precision, "f": s.f}
                for name, s in report.scores.items()
            },
        },
        indent=2,
    )


def report_from_json(text: str) -> RougeReport:
    data = json.loads(text)
    scores = {
        name: RougeScore(v["recall"], v["precision"], v["f"])
        for name, v in data["scores"].items()
    }
    return RougeReport(scores=scores, metadata=data.get("metadata", {}))


def report_to_csv(report: RougeReport) -> str:
    out = io.StringIO()
    out.write("metric,recall,precision,f\n")
    for name in METRIC_NAMES:
        if name in report.scores:
            s = report.scores[name]
            out.write(f"{name},{s.recall!r},{s.precision!r},{s.f!r}\n")
    return out.getvalue()
