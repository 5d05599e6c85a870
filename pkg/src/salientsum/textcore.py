"""Document ingestion: segmentation, tokenization, stopwords, term vectors.

A :class:`Document` is immutable once built, so scoring code can share it
freely across workers. Sentence indices are 0-based and follow source order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import EmptyDocument

# Maximal runs of letters/digits/apostrophes; everything else is dropped.
# Commas split digit groups, so "3,064" tokenizes as ["3", "064"].
_TOKEN_RE = re.compile(r"(?:[^\W_]|')+")
_HAS_WORD_CHAR_RE = re.compile(r"[^\W_]")

# Titles and measure abbreviations whose trailing period must not end a
# sentence. Single capital initials ("A. B.") are deliberately absent: a
# lone letter before ". Capital" is treated as a sentence end.
_ABBREVIATIONS = frozenset(
    """dr mr mrs ms st prof gen lt col capt sgt maj rev hon gov sen rep
    jr sr vs mt ft""".split()
)

# Terminal punctuation, optional closing quotes/brackets (kept with their
# sentence), whitespace, then a capital that may open with quotes/brackets.
_BOUNDARY_RE = re.compile(
    r"([.!?]+)([\"'”’)\]]*)\s+(?=[\"'“‘(\[]*[A-Z])"
)
_WORD_BEFORE_RE = re.compile(r"([^\W\d_]+)$")
_PARAGRAPH_RE = re.compile(r"\n\s*\n")

_DATA_PACKAGE = "salientsum"
_STOPWORD_FILE = "data/stopwords_mysql.txt"
_SAMPLE_CORPUS = "data/sample/flood_report.txt"


@dataclass(frozen=True)
class Sentence:
    """One source sentence with its token views.

    ``word_count`` counts all tokens before stopword removal and is the
    length unit used by summary budgets.
    """

    index: int
    raw: str
    tokens: tuple[str, ...]
    filtered_tokens: tuple[str, ...]
    word_count: int


@dataclass(frozen=True)
class Document:
    """Segmented, tokenized text plus its non-stopword vocabulary."""

    sentences: tuple[Sentence, ...]
    vocabulary: tuple[str, ...]
    raw_text: str

    @classmethod
    def from_text(cls, raw: str, stopwords: Iterable[str] | None = None) -> "Document":
        """Build a document from plain text; ``stopwords=None`` uses the bundled list."""
        stopset = default_stopwords() if stopwords is None else frozenset(stopwords)
        sentences = segment_sentences(raw, stopset)
        vocabulary = tuple(
            dict.fromkeys(t for s in sentences for t in s.filtered_tokens)
        )
        return cls(sentences=tuple(sentences), vocabulary=vocabulary, raw_text=raw)

    @classmethod
    def from_file(cls, path: str | Path, stopwords: Iterable[str] | None = None) -> "Document":
        return cls.from_text(Path(path).read_text(encoding="utf-8"), stopwords)

    def __len__(self) -> int:
        return len(self.sentences)


@dataclass(frozen=True)
class TermVector:
    """Sparse term-weight vector; ``mode`` records how weights were derived."""

    weights: Mapping[str, float]
    mode: str = "binary"

    def __post_init__(self):
        if self.mode not in ("binary", "tf", "tfidf"):
            raise ValueError(f"unknown term vector mode: {self.mode!r}")
        for term, w in self.weights.items():
            if w < 0:
                raise ValueError(f"negative weight for {term!r}")
            if self.mode == "binary" and w not in (0.0, 1.0, 0, 1):
                raise ValueError(f"binary vector has non-binary weight for {term!r}")

    @classmethod
    def binary(cls, tokens: Iterable[str]) -> "TermVector":
        return cls(weights={t: 1.0 for t in tokens}, mode="binary")


@dataclass(frozen=True)
class CorpusStats:
    """Document-level statistics over raw and stopword-filtered tokens."""

    sentence_count: int
    distinct_words: int
    min_sentence_len: int
    max_sentence_len: int
    avg_sentence_len: float
    filtered_length: int

    def as_dict(self) -> dict:
        return {
            "sentence_count": self.sentence_count,
            "distinct_words": self.distinct_words,
            "min_sentence_len": self.min_sentence_len,
            "max_sentence_len": self.max_sentence_len,
            "avg_sentence_len": self.avg_sentence_len,
            "filtered_length": self.filtered_length,
        }


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens: maximal runs of letters, digits, apostrophes.

    Runs containing no letter or digit (stray apostrophes) are dropped.
    """
    return [
        t for t in _TOKEN_RE.findall(text.lower()) if _HAS_WORD_CHAR_RE.search(t)
    ]


def remove_stopwords(tokens: Sequence[str], stopwords: Iterable[str]) -> list[str]:
    """Order-preserving stopword filter."""
    stopset = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    return [t for t in tokens if t not in stopset]


def _is_abbreviation_boundary(text: str, punct_start: int, punct: str) -> bool:
    """True when a single '.' follows a known abbreviation, so no sentence ends."""
    if punct != ".":
        return False
    m = _WORD_BEFORE_RE.search(text, 0, punct_start)
    return bool(m) and m.group(1).lower() in _ABBREVIATIONS


def _split_paragraph(text: str) -> list[str]:
    pieces = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        if _is_abbreviation_boundary(text, m.start(1), m.group(1)):
            continue
        pieces.append(text[start : m.end(2)])
        start = m.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def segment_sentences(
    raw: str, stopwords: Iterable[str] | None = None
) -> list[Sentence]:
    """Split text into :class:`Sentence` objects.

    Boundaries are terminal punctuation followed by whitespace and a
    capital (possibly quoted); blank lines always separate sentences.
    Fragments without any word character are dropped.
    """
    if not _HAS_WORD_CHAR_RE.search(raw or ""):
        raise EmptyDocument("input has no word characters")
    stopset = default_stopwords() if stopwords is None else frozenset(stopwords)

    sentences: list[Sentence] = []
    for paragraph in _PARAGRAPH_RE.split(raw):
        flat = " ".join(paragraph.split())
        if not flat:
            continue
        for piece in _split_paragraph(flat):
            tokens = tokenize(piece)
            if not tokens:
                continue
            filtered = remove_stopwords(tokens, stopset)
            sentences.append(
                Sentence(
                    index=len(sentences),
                    raw=piece,
                    tokens=tuple(tokens),
                    filtered_tokens=tuple(filtered),
                    word_count=len(tokens),
                )
            )
    if not sentences:
        raise EmptyDocument("no sentences with word tokens")
    return sentences


def cosine_similarity(a: TermVector, b: TermVector) -> float:
    """Cosine of two term vectors; 0.0 when either vector is all-zero."""
    dot = 0.0
    small, large = (a.weights, b.weights) if len(a.weights) <= len(b.weights) else (b.weights, a.weights)
    for term, w in small.items():
        other = large.get(term)
        if other:
            dot += w * other
    norm_a = math.sqrt(sum(w * w for w in a.weights.values()))
    norm_b = math.sqrt(sum(w * w for w in b.weights.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    # Floating noise can nudge self-similarity just past 1.
    return min(1.0, dot / (norm_a * norm_b))


def binary_cosine(a: frozenset | set, b: frozenset | set) -> float:
    """Cosine of binary token-set vectors: |A∩B| / sqrt(|A|·|B|)."""
    if not a or not b:
        return 0.0
    inter = len(a & b)
    if not inter:
        return 0.0
    return min(1.0, inter / math.sqrt(len(a) * len(b)))


def corpus_stats(doc: Document) -> CorpusStats:
    """Sentence-length and vocabulary statistics for a parsed document."""
    counts = [s.word_count for s in doc.sentences]
    return CorpusStats(
        sentence_count=len(doc.sentences),
        distinct_words=len(doc.vocabulary),
        min_sentence_len=min(counts),
        max_sentence_len=max(counts),
        avg_sentence_len=sum(counts) / len(counts),
        filtered_length=sum(len(s.filtered_tokens) for s in doc.sentences),
    )


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Load a stopword file: one lowercase word per line, '#' comments."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.add(word.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """The bundled MySQL full-text stopword list."""
    text = resources.files(_DATA_PACKAGE).joinpath(_STOPWORD_FILE).read_text("utf-8")
    return frozenset(
        w.strip().lower()
        for w in text.splitlines()
        if w.strip() and not w.strip().startswith("#")
    )


def sample_corpus_path() -> Path:
    """Filesystem path of the bundled sample news document."""
    return Path(str(resources.files(_DATA_PACKAGE).joinpath(_SAMPLE_CORPUS)))
