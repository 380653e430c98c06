"""Dictionary-based textual features: emotion intensity, emoji sentiment,
category counts, and the appended depression-specific category.

All lexicons are static data files (bundled defaults under ``depdetect/data``)
and are immutable after loading; scoring functions are pure.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np

from .emoji import extract_emoji

#: Fixed emotion order; feature index = position in this list.
EMOTIONS = (
    "Joy",
    "Fear",
    "Anger",
    "Anticipation",
    "Disgust",
    "Trust",
    "Surprise",
    "Positive",
    "Negative",
    "Sadness",
)

_EMOTION_INDEX = {name: i for i, name in enumerate(EMOTIONS)}

DEPRESSION_CATEGORY = "depression_terms"


class LexiconFormatError(ValueError):
    pass


def _read_bundled(name: str) -> str:
    return resources.files("depdetect.data").joinpath(name).read_text("utf-8")


@dataclass(frozen=True)
class EmotionLexicon:
    """word -> set of emotion tags; lookup is case-insensitive."""

    entries: dict[str, frozenset[str]]

    def tags(self, word: str) -> frozenset[str]:
        return self.entries.get(word.casefold(), frozenset())

    def __len__(self) -> int:
        return len(self.entries)


def load_emotion_lexicon(path: str | Path | None = None) -> EmotionLexicon:
    """Parse TSV lines ``word<TAB>tag[,tag...]``; tags must be from EMOTIONS."""
    text = _read_bundled("emotion_lexicon.tsv") if path is None else Path(path).read_text("utf-8")
    entries: dict[str, frozenset[str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            word, tags_field = line.split("\t")
        except ValueError as e:
            raise LexiconFormatError(f"line {line_no}: expected word<TAB>tags") from e
        tags = frozenset(t.strip() for t in tags_field.split(","))
        bad = tags - set(EMOTIONS)
        if bad:
            raise LexiconFormatError(f"line {line_no}: unknown emotion tags {sorted(bad)}")
        entries[word.strip().casefold()] = tags
    return EmotionLexicon(entries=entries)


def emotion_intensity(text: str, lex: EmotionLexicon) -> np.ndarray:
    """Per-emotion token frequency over cleaned text, normalized by token count."""
    tokens = text.split()
    out = np.zeros(len(EMOTIONS))
    if not tokens:
        return out
    for tok in tokens:
        for tag in lex.tags(tok):
            out[_EMOTION_INDEX[tag]] += 1.0
    return out / len(tokens)


@dataclass(frozen=True)
class EmojiSentimentTable:
    """emoji sequence -> (positive, negative, neutral), each triple summing to 1."""

    entries: dict[str, tuple[float, float, float]]

    def __len__(self) -> int:
        return len(self.entries)


def load_emoji_table(path: str | Path | None = None) -> EmojiSentimentTable:
    """Parse CSV ``emoji,pos,neg,neutral`` with a header row."""
    text = _read_bundled("emoji_sentiment.csv") if path is None else Path(path).read_text("utf-8")
    entries: dict[str, tuple[float, float, float]] = {}
    rows = list(csv.reader(text.splitlines()))
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 4:
            raise LexiconFormatError(f"line {line_no}: expected emoji,pos,neg,neutral")
        emoji, *scores = row
        triple = tuple(float(s) for s in scores)
        if any(s < 0 for s in triple) or not math.isclose(sum(triple), 1.0, abs_tol=1e-6):
            raise LexiconFormatError(f"line {line_no}: scores must be nonnegative and sum to 1")
        entries[emoji] = triple  # type: ignore[assignment]
    return EmojiSentimentTable(entries=entries)


def emoji_sentiment(
    raw_text: str, table: EmojiSentimentTable, counters: dict[str, int] | None = None
) -> np.ndarray:
    """Mean (pos, neg, neutral) over emoji in the raw (pre-clean) text.

    Unknown emoji are skipped; when ``counters`` is given, the skip count is
    accumulated under ``"unknown_emoji"``. Returns zeros when no known emoji
    are present.
    """
    found = extract_emoji(raw_text)
    triples = []
    unknown = 0
    for e in found:
        triple = table.entries.get(e)
        if triple is None and len(e) > 1:
            # tolerate a missing variation selector in the table key
            triple = table.entries.get(e.replace("️", ""))
        if triple is None:
            unknown += 1
        else:
            triples.append(triple)
    if counters is not None:
        counters["unknown_emoji"] = counters.get("unknown_emoji", 0) + unknown
    if not triples:
        return np.zeros(3)
    return np.asarray(triples).mean(axis=0)


@dataclass(frozen=True)
class CategoryLexicon:
    """Ordered named word-set categories; the depression category is last."""

    names: tuple[str, ...]
    word_sets: tuple[frozenset[str], ...]

    def __post_init__(self):
        if len(self.names) != len(self.word_sets):
            raise LexiconFormatError("names and word sets differ in length")
        if self.names[-1] != DEPRESSION_CATEGORY:
            raise LexiconFormatError(f"last category must be {DEPRESSION_CATEGORY!r}")
        if any(not ws for ws in self.word_sets):
            raise LexiconFormatError("every category needs a nonempty word set")

    @cached_property
    def word_index(self) -> dict[str, tuple[int, ...]]:
        """word -> indices of every category containing it."""
        idx: dict[str, list[int]] = {}
        for ci, words in enumerate(self.word_sets):
            for w in words:
                idx.setdefault(w, []).append(ci)
        return {w: tuple(cs) for w, cs in idx.items()}

    @property
    def n_general(self) -> int:
        return len(self.names) - 1

    def __len__(self) -> int:
        return len(self.names)


def load_category_lexicon(path: str | Path | None = None) -> CategoryLexicon:
    """Parse TSV ``category<TAB>word``; first-appearance order fixes indices.

    ``path`` may also be a directory of one ``<category>.txt`` word-list file
    per category (sorted by filename). The depression category is moved to the
    final slot if it is not already there.
    """
    order: list[str] = []
    sets: dict[str, set[str]] = {}

    def add(cat: str, word: str) -> None:
        if cat not in sets:
            order.append(cat)
            sets[cat] = set()
        sets[cat].add(word.casefold())

    if path is not None and Path(path).is_dir():
        for f in sorted(Path(path).glob("*.txt")):
            for word in f.read_text("utf-8").split():
                add(f.stem, word)
    else:
        text = _read_bundled("categories.tsv") if path is None else Path(path).read_text("utf-8")
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                cat, word = line.split("\t")
            except ValueError as e:
                raise LexiconFormatError(f"line {line_no}: expected category<TAB>word") from e
            add(cat.strip(), word.strip())

    if DEPRESSION_CATEGORY in order:
        order.remove(DEPRESSION_CATEGORY)
    else:
        raise LexiconFormatError(f"category lexicon must define {DEPRESSION_CATEGORY!r}")
    order.append(DEPRESSION_CATEGORY)
    return CategoryLexicon(
        names=tuple(order),
        word_sets=tuple(frozenset(sets[c]) for c in order),
    )


def category_counts(text: str, lex: CategoryLexicon, normalize: bool = True) -> np.ndarray:
    """Per-category matched-token frequency over cleaned text.

    A token belonging to several categories increments each of them. With
    ``normalize`` (the default), counts are divided by the token count; raw
    counts preserve the literal frequency-of-occurrence reading.
    """
    tokens = text.split()
    out = np.zeros(len(lex))
    if not tokens:
        return out
    index = lex.word_index
    for tok in tokens:
        for ci in index.get(tok, ()):
            out[ci] += 1.0
    return out / len(tokens) if normalize else out


def split_depression(v: np.ndarray) -> tuple[np.ndarray, float]:
    """Split a category vector into (general categories, depression score)."""
    v = np.asarray(v)
    return v[:-1], float(v[-1])
