"""Shared fixtures. A session-wide socket guard enforces that the whole
suite (including every fetch-title path) runs with zero network calls."""

import socket
from pathlib import Path

import numpy as np
import pytest

from depdetect.corpus import load_dataset, load_stopwords
from depdetect.evaluation import Lexicons
from depdetect.lexicons import (
    CategoryLexicon,
    EmojiSentimentTable,
    EmotionLexicon,
    load_category_lexicon,
    load_emoji_table,
    load_emotion_lexicon,
)
from depdetect.webcontext import UrlTitleCache

DATA_DIR = Path(__file__).parent / "data"


class NetworkCallAttempted(RuntimeError):
    pass


@pytest.fixture(autouse=True, scope="session")
def no_network():
    """Fail loudly if anything in the suite opens a network connection."""

    def guard(*args, **kwargs):
        raise NetworkCallAttempted("test suite attempted a network call")

    original = socket.socket.connect
    socket.socket.connect = guard
    yield
    socket.socket.connect = original


@pytest.fixture(scope="session")
def fixture_path() -> Path:
    return DATA_DIR / "fixture_corpus.jsonl"


@pytest.fixture(scope="session")
def fixture_cache_path() -> Path:
    return DATA_DIR / "fixture_title_cache.json"


@pytest.fixture(scope="session")
def fixture_dataset(fixture_path):
    return load_dataset(fixture_path)


@pytest.fixture(scope="session")
def fixture_cache(fixture_cache_path):
    return UrlTitleCache.load(fixture_cache_path)


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords()


@pytest.fixture(scope="session")
def lexicons() -> Lexicons:
    return Lexicons(
        emotions=load_emotion_lexicon(),
        emoji=load_emoji_table(),
        categories=load_category_lexicon(),
    )


@pytest.fixture(scope="session")
def toy_emotions() -> EmotionLexicon:
    return EmotionLexicon(
        entries={
            "happy": frozenset({"Joy", "Positive"}),
            "sad": frozenset({"Sadness", "Negative"}),
        }
    )


@pytest.fixture(scope="session")
def toy_categories() -> CategoryLexicon:
    names = tuple(f"cat{i}" for i in range(194)) + ("depression_terms",)
    sets = [frozenset({f"word{i}"}) for i in range(194)]
    sets[0] = frozenset({"doctor"})
    return CategoryLexicon(names=names, word_sets=tuple(sets) + (frozenset({"hopeless"}),))


@pytest.fixture(scope="session")
def toy_emoji() -> EmojiSentimentTable:
    return EmojiSentimentTable(
        entries={
            "😀": (0.7, 0.1, 0.2),
            "😢": (0.0, 1.0, 0.0),
            "🎉": (1.0, 0.0, 0.0),
        }
    )


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(12345)
