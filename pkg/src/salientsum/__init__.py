"""Single-document extractive summarization with statistical and sentiment features."""

from .errors import (
    BudgetTooSmall,
    DimensionMismatch,
    EmptyDocument,
    EmptyInput,
    EmptyReference,
    FixtureMissingSentence,
    InvalidBudget,
    InvalidExponent,
    InvalidIndex,
    ParseError,
    RangeError,
    SummarizerError,
)
from .extract import (
    Summary,
    SummaryConfig,
    TraceEntry,
    rank_sentences,
    render_summary,
    resolve_budget,
    select_sentences,
)
from .features import (
    COLUMN_NAMES,
    FeatureConfig,
    FeatureMatrix,
    FeatureWeights,
    ScoredSentence,
    aggregate_similarity_score,
    build_feature_matrix,
    centroid_scores,
    max_normalize_column,
    normalize_column,
    position_score,
    tfidf_sentence_score,
    tfidf_word_weight,
    total_scores,
)
from .harness import (
    ABLATION_METRICS,
    AblationConfig,
    AblationRow,
    FeatureMask,
    PipelineResult,
    enumerate_masks,
    mask_to_weights,
    run_ablation,
    summarize_document,
    summarize_text,
)
from .rouge import (
    METRIC_NAMES,
    RougeReport,
    RougeScore,
    ngrams,
    rouge_l,
    rouge_n,
    rouge_s,
    rouge_su,
    rouge_w,
    score_all,
    sentence_overlap_pr,
    truncate_words,
)
from .sentiment import (
    EntitySentiment,
    FixtureSentimentProvider,
    LexiconSentimentProvider,
    NullSentimentProvider,
    SentimentLexicon,
    entity_sentiments,
    load_lexicon,
    sentence_sentiment_score,
)
from .textcore import (
    CorpusStats,
    Document,
    Sentence,
    TermVector,
    corpus_stats,
    cosine_similarity,
    load_stopwords,
    remove_stopwords,
    sample_corpus_path,
    segment_sentences,
    tokenize,
)

__version__ = "0.1.0"
