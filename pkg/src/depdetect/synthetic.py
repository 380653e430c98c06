"""Synthetic corpora with a planted class signal.

The class-conditional generative difference is known, so desk-scale
accuracy checks have ground truth: depressed users draw tweet tokens from
a depression-keyword-enriched distribution and can additionally carry
shifted image embeddings, sadder emoji, and lower activity counts. Each
signal can be toggled off to isolate a single modality.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

import numpy as np

from .corpus import LabeledDataset, ProfileInfo, TweetRecord, UserRecord

NEUTRAL_WORDS = (
    "today weather coffee morning game team season video music movie book street "
    "city train window table phone photo lunch dinner recipe garden road market "
    "office meeting project update news article thread story website screen keyboard "
    "weekend holiday ticket station airport plane river mountain forest beach rain "
    "snow summer winter spring autumn city park runner match score goal player "
    "camera picture light color paper letter package store shopping price budget "
    "house room kitchen garage bike car traffic bridge harbor boat island tour"
).split()

DEPRESSION_WORDS = (
    "depression depressed anxiety anxious hopeless worthless suicidal therapy "
    "antidepressants insomnia lonely numb empty despair misery miserable exhausted "
    "panic breakdown crying overwhelmed helpless burnout grief trauma psychiatrist "
    "diagnosed struggling unbearable sadness"
).split()

NEGATIVE_WORDS = "sad tired hurt pain fear broken dark alone weak sick".split()

POSITIVE_WORDS = (
    "happy grateful excited fun sunshine friend love great win wonderful proud "
    "thankful laugh smile joy lucky peace calm hope"
).split()

SAD_EMOJI = "😢 😭 💔 😔 😞".split()
HAPPY_EMOJI = "😀 😊 🥰 🎉 😄".split()


def _pick(rng: np.random.Generator, pool: list[str] | tuple[str, ...]) -> str:
    return pool[int(rng.integers(0, len(pool)))]


def _tweet_text(rng: np.random.Generator, depressed: bool, text_signal: bool, emoji_signal: bool) -> str:
    n_words = int(rng.integers(7, 13))
    words = []
    for _ in range(n_words):
        r = rng.random()
        if depressed and text_signal:
            if r < 0.18:
                words.append(_pick(rng, DEPRESSION_WORDS))
            elif r < 0.30:
                words.append(_pick(rng, NEGATIVE_WORDS))
            else:
                words.append(_pick(rng, NEUTRAL_WORDS))
        elif text_signal:
            if r < 0.02:
                words.append(_pick(rng, DEPRESSION_WORDS))
            elif r < 0.14:
                words.append(_pick(rng, POSITIVE_WORDS))
            else:
                words.append(_pick(rng, NEUTRAL_WORDS))
        else:
            words.append(_pick(rng, NEUTRAL_WORDS))
    if emoji_signal and rng.random() < 0.4:
        words.append(_pick(rng, SAD_EMOJI if depressed else HAPPY_EMOJI))
    return " ".join(words)


def make_planted_corpus(
    n_users: int = 200,
    seed: int = 0,
    tweets_per_user: tuple[int, int] = (8, 15),
    visual_dim: int = 128,
    visual_shift: float = 0.6,
    image_prob: float = 0.55,
    text_signal: bool = True,
    visual_signal: bool = True,
    emoji_signal: bool = True,
    activity_signal: bool = True,
) -> LabeledDataset:
    """Balanced labeled corpus of raw (uncleaned) tweets.

    Depressed users: depression-enriched vocabulary, sad emoji, image
    embeddings shifted by ``visual_shift`` along every dimension, lower
    activity counts, and a revealing profile description. Each signal can
    be disabled to produce a single-modality or no-signal corpus.
    """
    rng = np.random.default_rng(seed)
    base_time = datetime(2021, 6, 1, tzinfo=timezone.utc)
    users = []
    for i in range(n_users):
        depressed = i < n_users // 2
        n_tweets = int(rng.integers(tweets_per_user[0], tweets_per_user[1] + 1))
        tweets = []
        for j in range(n_tweets):
            embeddings = ()
            if rng.random() < image_prob:
                mu = visual_shift if (depressed and visual_signal) else 0.0
                embeddings = (tuple(np.round(rng.normal(mu, 1.0, visual_dim), 4).tolist()),)
            tweets.append(
                TweetRecord(
                    tweet_id=f"u{i}t{j}",
                    timestamp=base_time + timedelta(hours=i * 40 + j),
                    text=_tweet_text(rng, depressed, text_signal, emoji_signal),
                    urls=(),
                    ocr_text=None,
                    image_embeddings=embeddings,
                )
            )
        if activity_signal and depressed:
            profile = ProfileInfo(
                followers_count=int(rng.integers(0, 120)),
                friends_count=int(rng.integers(0, 150)),
                favourites_count=int(rng.integers(0, 300)),
                statuses_count=int(rng.integers(20, 400)),
                description="fighting depression and anxiety" if text_signal else "",
            )
        else:
            profile = ProfileInfo(
                followers_count=int(rng.integers(150, 2000)),
                friends_count=int(rng.integers(150, 1500)),
                favourites_count=int(rng.integers(300, 5000)),
                statuses_count=int(rng.integers(400, 8000)),
                description="coffee lover enjoying life" if text_signal else "",
            )
        users.append(
            UserRecord(
                user_id=f"user{i:04d}",
                label=1 if depressed else 0,
                profile=profile,
                tweets=tuple(tweets),
            )
        )
    order = rng.permutation(n_users)
    return LabeledDataset(users=tuple(users[k] for k in order), source_name=f"planted(seed={seed})")
