"""Shared fixtures and document-building helpers."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
DATA_DIR = TESTS_DIR / "data"
sys.path.insert(0, str(TESTS_DIR))

from salientsum import Document, sample_corpus_path  # noqa: E402

#: Vocabulary for synthetic documents: plain lowercase words, none of them
#: stopwords or segmentation abbreviations.
SYNTH_VOCAB = (
    "mango", "delta", "ember", "frost", "grove", "haze",
    "ivory", "jade", "karma", "lotus", "night", "opal",
)


def make_doc(token_lists, stopwords=frozenset()) -> Document:
    """Build a document whose sentences carry exactly the given tokens."""
    raws = []
    for tokens in token_lists:
        words = list(tokens)
        words[0] = words[0][0].upper() + words[0][1:]
        raws.append(" ".join(words) + ".")
    doc = Document.from_text(" ".join(raws), stopwords=stopwords)
    assert len(doc) == len(token_lists), "synthetic doc segmented unexpectedly"
    for sentence, tokens in zip(doc.sentences, token_lists):
        assert list(sentence.tokens) == list(tokens)
    return doc


@pytest.fixture(scope="session")
def sample_doc() -> Document:
    return Document.from_file(sample_corpus_path())


@pytest.fixture(scope="session")
def golden_stats() -> dict:
    return json.loads((DATA_DIR / "fixture_stats.json").read_text())


@pytest.fixture(scope="session")
def golden_matrix() -> dict:
    return json.loads((DATA_DIR / "fixture_matrix.json").read_text())


@pytest.fixture(scope="session")
def golden_summary() -> str:
    return (DATA_DIR / "fixture_summary.txt").read_text().rstrip("\n")


@pytest.fixture(scope="session")
def golden_reference() -> str:
    return (DATA_DIR / "fixture_reference.txt").read_text().rstrip("\n")


@pytest.fixture(scope="session")
def golden_ablation_csv() -> str:
    return (DATA_DIR / "fixture_ablation.csv").read_text()
