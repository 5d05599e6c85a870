"""Exception and warning types shared across the package."""

from __future__ import annotations


class SummarizerError(Exception):
    """Base class for all salientsum errors."""


class EmptyDocument(SummarizerError):
    """Input text contains no word characters or no usable sentences."""


class InvalidIndex(SummarizerError, IndexError):
    """Sentence rank outside the valid 1..M range."""


class DimensionMismatch(SummarizerError, ValueError):
    """Feature matrix and weight vector disagree on the feature count."""


class ParseError(SummarizerError, ValueError):
    """A data file line could not be parsed.

    Carries the 1-based line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RangeError(SummarizerError, ValueError):
    """A numeric value falls outside its documented range."""


class FixtureMissingSentence(SummarizerError, KeyError):
    """The sentiment fixture file has no entry for a requested sentence."""


class InvalidBudget(SummarizerError, ValueError):
    """Summary length budget is non-positive or malformed."""


class EmptyReference(SummarizerError, ValueError):
    """Evaluation requested without a usable reference summary."""


class InvalidExponent(SummarizerError, ValueError):
    """Weighted-LCS exponent must exceed 1."""


class EmptyInput(SummarizerError, ValueError):
    """Sentence-overlap scoring requires non-empty sentence lists."""


class BudgetTooSmall(UserWarning):
    """The top-ranked sentence alone exceeds the word budget.

    The sentence is still selected; a summary is always produced.
    """
