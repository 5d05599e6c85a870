"""Sentence sentiment-strength scoring via pluggable entity providers.

A provider maps a sentence to the sentiment-bearing entities it mentions.
Two implementations ship: a lexicon scorer (default) that treats every
lexicon-bearing token occurrence as an entity, and a fixture provider that
replays precomputed per-sentence entity scores from a JSON sidecar. The
sentence score is the sum of entity polarity magnitudes: a strongly
negative entity counts exactly as much as a strongly positive one.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Protocol, Sequence

from .errors import FixtureMissingSentence, ParseError, RangeError
from .textcore import Sentence

_LEXICON_FILE = "data/sentiment_lexicon.tsv"


@dataclass(frozen=True)
class EntitySentiment:
    """A surface form with signed polarity in [-1, 1]."""

    surface: str
    polarity: float

    def __post_init__(self):
        if not -1.0 <= self.polarity <= 1.0:
            raise RangeError(
                f"polarity {self.polarity} for {self.surface!r} outside [-1, 1]"
            )


@dataclass(frozen=True)
class SentimentLexicon:
    """Term -> polarity map; zero-polarity terms are never stored."""

    entries: Mapping[str, float]

    def __post_init__(self):
        for term, p in self.entries.items():
            if p == 0:
                raise ValueError(f"zero-polarity entry {term!r}; omit neutral terms")
            if not -1.0 <= p <= 1.0:
                raise RangeError(f"polarity {p} for {term!r} outside [-1, 1]")

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, term: str) -> bool:
        return term in self.entries


class SentimentProvider(Protocol):
    def entities(self, sentence: Sentence) -> list[EntitySentiment]: ...


class LexiconSentimentProvider:
    """Entities are the sentence's lexicon-bearing tokens, one per occurrence."""

    def __init__(self, lexicon: SentimentLexicon):
        self.lexicon = lexicon

    def entities(self, sentence: Sentence) -> list[EntitySentiment]:
        entries = self.lexicon.entries
        return [
            EntitySentiment(surface=t, polarity=entries[t])
            for t in sentence.filtered_tokens
            if t in entries
        ]


class FixtureSentimentProvider:
    """Replays entity scores from a JSON array indexed by sentence."""

    def __init__(self, per_sentence: Sequence[Sequence[EntitySentiment]]):
        self._per_sentence = [list(e) for e in per_sentence]

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureSentimentProvider":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad sentiment fixture JSON: {exc}") from exc
        if not isinstance(data, list):
            raise ParseError("sentiment fixture must be a JSON array")
        per_sentence = []
        for row in data:
            per_sentence.append(
                [EntitySentiment(e["surface"], float(e["polarity"])) for e in (row or [])]
            )
        return cls(per_sentence)

    def entities(self, sentence: Sentence) -> list[EntitySentiment]:
        idx = sentence.index
        if idx < 0 or idx >= len(self._per_sentence):
            raise FixtureMissingSentence(f"fixture has no entry for sentence {idx}")
        return list(self._per_sentence[idx])


class NullSentimentProvider:
    """Returns no entities: the sentiment feature column stays all-zero."""

    def entities(self, sentence: Sentence) -> list[EntitySentiment]:
        return []


def entity_sentiments(sentence: Sentence, provider: SentimentProvider) -> list[EntitySentiment]:
    """All sentiment-bearing entities the provider finds in a sentence."""
    return provider.entities(sentence)


def sentence_sentiment_score(sentence: Sentence, provider: SentimentProvider) -> float:
    """Sum of entity polarity magnitudes; always >= 0."""
    return sum(abs(e.polarity) for e in provider.entities(sentence))


def load_lexicon(path: str | Path) -> SentimentLexicon:
    """Parse a ``term<TAB>polarity`` lexicon file.

    Blank lines and '#' comments are skipped; zero-polarity lines are
    dropped (neutral means absent); a duplicated term keeps the last
    value and emits a warning.
    """
    entries: dict[str, float] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 2:
            raise ParseError(f"expected 'term<TAB>polarity', got {stripped!r}", line=lineno)
        term = parts[0].strip().lower()
        try:
            polarity = float(parts[1])
        except ValueError as exc:
            raise ParseError(f"bad polarity {parts[1]!r}", line=lineno) from exc
        if not -1.0 <= polarity <= 1.0:
            raise RangeError(f"line {lineno}: polarity {polarity} outside [-1, 1]")
        if term in entries:
            warnings.warn(f"duplicate lexicon term {term!r}; keeping line {lineno}")
        if polarity == 0.0:
            entries.pop(term, None)
            continue
        entries[term] = polarity
    return SentimentLexicon(entries=entries)


@lru_cache(maxsize=1)
def default_lexicon() -> SentimentLexicon:
    """The bundled sentiment lexicon."""
    path = resources.files("salientsum").joinpath(_LEXICON_FILE)
    return load_lexicon(Path(str(path)))


def default_provider() -> LexiconSentimentProvider:
    return LexiconSentimentProvider(default_lexicon())
