"""Per-user multimodal feature assembly with a named-segment layout.

Segment order (default dims): visual(128), topic(15), emotion(10),
emoji(3), lexicon_pca(90), depression(1), user_activity(5),
description_emotion(10) -- 262 total. Tweets are expected to be augmented
(titles and image text appended) and cleaned before featurization; the
cleaner keeps emoji, so per-tweet emoji sentiment still works afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import UserRecord, clean_text
from .lexicons import (
    CategoryLexicon,
    EmojiSentimentTable,
    EmotionLexicon,
    category_counts,
    emoji_sentiment,
    emotion_intensity,
    split_depression,
)
from .pca import PcaModel, transform
from .topics import TopicModel, doc_topic_dist


class MixedEmbeddingDims(ValueError):
    pass


class LayoutMismatch(ValueError):
    pass


class UnknownModality(KeyError):
    pass


#: Ablation letters (leave-one-out grouping) -> layout segment names.
#: Category counts (lexicon_pca) sit under the emotional modality, next to
#: emotion intensity and emoji sentiment.
MODALITY_GROUPS = {
    "v": ("visual",),
    "t": ("topic",),
    "e": ("emotion", "emoji", "lexicon_pca", "description_emotion"),
    "d": ("depression",),
    "u": ("user_activity",),
}


@dataclass(frozen=True)
class FeatureLayout:
    """Ordered (name, dim) segments; persisted with every feature matrix."""

    segments: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if any(dim <= 0 for _, dim in self.segments):
            raise LayoutMismatch("segment dims must be positive")
        names = [n for n, _ in self.segments]
        if len(set(names)) != len(names):
            raise LayoutMismatch("duplicate segment names")

    @property
    def total(self) -> int:
        return sum(d for _, d in self.segments)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.segments)

    def dim(self, name: str) -> int:
        for n, d in self.segments:
            if n == name:
                return d
        raise KeyError(name)

    def slices(self) -> dict[str, slice]:
        out = {}
        start = 0
        for n, d in self.segments:
            out[n] = slice(start, start + d)
            start += d
        return out

    def to_dict(self) -> dict:
        return {"segments": [[n, d] for n, d in self.segments], "total": self.total}

    @classmethod
    def from_dict(cls, d: dict) -> "FeatureLayout":
        return cls(segments=tuple((n, int(k)) for n, k in d["segments"]))


def default_layout(visual_dim: int = 128, topics: int = 15, pca_k: int = 90) -> FeatureLayout:
    return FeatureLayout(
        segments=(
            ("visual", visual_dim),
            ("topic", topics),
            ("emotion", 10),
            ("emoji", 3),
            ("lexicon_pca", pca_k),
            ("depression", 1),
            ("user_activity", 5),
            ("description_emotion", 10),
        )
    )


@dataclass(frozen=True)
class FeatureVector:
    user_id: str
    values: np.ndarray
    layout: FeatureLayout

    def __post_init__(self):
        if self.values.shape != (self.layout.total,):
            raise LayoutMismatch(
                f"vector length {self.values.shape} != layout total {self.layout.total}"
            )
        if not np.isfinite(self.values).all():
            raise LayoutMismatch("feature vector contains non-finite values")

    def segment(self, name: str) -> np.ndarray:
        return self.values[self.layout.slices()[name]]


@dataclass
class FeatureDeps:
    """Fitted dependency models + lexicons needed to featurize one user."""

    emotions: EmotionLexicon
    emoji: EmojiSentimentTable
    categories: CategoryLexicon
    topics: TopicModel
    pca: PcaModel
    fold_iterations: int = 50
    fold_seed: int = 0
    visual_dim: int = 128
    normalize_counts: bool = True


def visual_feature(u: UserRecord, dim: int = 128) -> np.ndarray:
    """Mean of all image embeddings across tweets; zeros when no images."""
    embs = [np.asarray(e, dtype=float) for t in u.tweets for e in t.image_embeddings]
    if not embs:
        return np.zeros(dim)
    dims = {e.shape[0] for e in embs}
    if len(dims) > 1 or dims != {dim}:
        raise MixedEmbeddingDims(f"user {u.user_id}: embedding dims {sorted(dims)}, expected {dim}")
    return np.mean(embs, axis=0)


def user_feature(
    u: UserRecord,
    lex: EmotionLexicon,
    window_tweet_count: int | None = None,
    stopwords: frozenset[str] = frozenset(),
) -> np.ndarray:
    """Activity counts then the emotion intensity of the cleaned description.

    Layout: [tweet_count, followers, friends, favourites, statuses,
    emotion x10]. window_tweet_count defaults to the user's tweet count
    (the collection window is the full record).
    """
    count = len(u.tweets) if window_tweet_count is None else window_tweet_count
    p = u.profile
    activity = np.array(
        [count, p.followers_count, p.friends_count, p.favourites_count, p.statuses_count],
        dtype=float,
    )
    desc = emotion_intensity(clean_text(p.description, stopwords), lex)
    return np.concatenate([activity, desc])


def tweet_text_vectors(
    text: str,
    emotions: EmotionLexicon,
    emoji_table: EmojiSentimentTable,
    categories: CategoryLexicon,
    normalize_counts: bool = True,
) -> dict[str, np.ndarray]:
    """Per-tweet emotion / emoji / category vectors (over cleaned text)."""
    return {
        "emotion": emotion_intensity(text, emotions),
        "emoji": emoji_sentiment(text, emoji_table),
        "categories": category_counts(text, categories, normalize=normalize_counts),
    }


def textual_features(u: UserRecord, deps: FeatureDeps) -> dict[str, np.ndarray]:
    """Topic mix over the user's pooled tokens; other text vectors averaged
    per tweet; the category mean split into PCA projection + depression score.

    A user with zero surviving tweets gets the uniform topic vector and
    zeros everywhere else (the PCA segment is literally zero, not the
    projection of a zero count vector).
    """
    T = deps.topics.T
    if not u.tweets:
        return {
            "topic": np.full(T, 1.0 / T),
            "emotion": np.zeros(10),
            "emoji": np.zeros(3),
            "lexicon_pca": np.zeros(deps.pca.k),
            "depression": np.zeros(1),
        }
    per_tweet = [
        tweet_text_vectors(
            t.text, deps.emotions, deps.emoji, deps.categories, deps.normalize_counts
        )
        for t in u.tweets
    ]
    emotion = np.mean([v["emotion"] for v in per_tweet], axis=0)
    emoji = np.mean([v["emoji"] for v in per_tweet], axis=0)
    cats = np.mean([v["categories"] for v in per_tweet], axis=0)
    general, depression_score = split_depression(cats)
    tokens = [tok for t in u.tweets for tok in t.text.split()]
    topic = doc_topic_dist(deps.topics, tokens, deps.fold_iterations, seed=deps.fold_seed)
    return {
        "topic": topic,
        "emotion": emotion,
        "emoji": emoji,
        "lexicon_pca": transform(deps.pca, general),
        "depression": np.array([depression_score]),
    }


def assemble(u: UserRecord, deps: FeatureDeps, layout: FeatureLayout | None = None) -> FeatureVector:
    """Concatenate all segments in layout order into one user vector."""
    if layout is None:
        layout = default_layout(deps.visual_dim, deps.topics.T, deps.pca.k)
    uf = user_feature(u, deps.emotions)
    parts = dict(textual_features(u, deps))
    parts["visual"] = visual_feature(u, deps.visual_dim)
    parts["user_activity"] = uf[:5]
    parts["description_emotion"] = uf[5:]
    pieces = []
    for name, dim in layout.segments:
        if name not in parts:
            raise LayoutMismatch(f"layout segment {name!r} has no producer")
        v = np.asarray(parts[name], dtype=float)
        if v.shape != (dim,):
            raise LayoutMismatch(f"segment {name!r}: produced {v.shape}, layout wants ({dim},)")
        pieces.append(v)
    return FeatureVector(user_id=u.user_id, values=np.concatenate(pieces), layout=layout)


def ablate(
    X: np.ndarray, layout: FeatureLayout, drop: set[str]
) -> tuple[np.ndarray, FeatureLayout]:
    """Remove the segments of the named modality letters, order preserved."""
    unknown = set(drop) - set(MODALITY_GROUPS)
    if unknown:
        raise UnknownModality(f"unknown modality letters {sorted(unknown)}")
    dropped = {seg for letter in drop for seg in MODALITY_GROUPS[letter]}
    keep = [(n, d) for n, d in layout.segments if n not in dropped]
    if not keep:
        raise LayoutMismatch("cannot drop every segment")
    sl = layout.slices()
    cols = np.concatenate([np.arange(sl[n].start, sl[n].stop) for n, _ in keep])
    return np.asarray(X)[:, cols], FeatureLayout(segments=tuple(keep))


def standardize_segments(
    X_train: np.ndarray,
    layout: FeatureLayout,
    segment_names: tuple[str, ...] = ("user_activity",),
) -> tuple[np.ndarray, np.ndarray]:
    """Column mean/std over the training rows for the named segments.

    Returns full-width (mean, std) vectors that are identity (0, 1) outside
    the selected segments; zero-variance columns keep std 1 so they map to 0.
    """
    X_train = np.asarray(X_train, dtype=float)
    mean = np.zeros(layout.total)
    std = np.ones(layout.total)
    sl = layout.slices()
    for name in segment_names:
        s = sl[name]
        mean[s] = X_train[:, s].mean(axis=0)
        col_std = X_train[:, s].std(axis=0)
        std[s] = np.where(col_std > 0, col_std, 1.0)
    return mean, std


def apply_standardization(X: np.ndarray, mean: np.ndarray, std: np.ndarray) -> np.ndarray:
    return (np.asarray(X, dtype=float) - mean) / std
