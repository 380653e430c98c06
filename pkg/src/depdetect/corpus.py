"""Dataset schema, loading, tweet text preprocessing, and corpus statistics.

The on-disk dataset format is UTF-8 JSON lines: one user record per line
with keys ``user_id``, ``label``, ``profile{followers_count, friends_count,
favourites_count, statuses_count, description}`` and ``tweets[{tweet_id,
timestamp, text, urls[], ocr_text?, image_embeddings?}]``. Unknown keys are
ignored with a warning.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from urllib.parse import urlparse

from .emoji import is_emoji_char, is_emoji_component


class ParseError(ValueError):
    """A dataset line could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateUser(ValueError):
    def __init__(self, user_id: str):
        super().__init__(f"duplicate user_id: {user_id!r}")
        self.user_id = user_id


class EmptyDataset(ValueError):
    pass


class UnknownFieldWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ProfileInfo:
    followers_count: int
    friends_count: int
    favourites_count: int
    statuses_count: int
    description: str = ""


@dataclass(frozen=True)
class TweetRecord:
    tweet_id: str
    timestamp: datetime
    text: str
    urls: tuple[str, ...] = ()
    ocr_text: str | None = None
    image_embeddings: tuple[tuple[float, ...], ...] = ()

    @property
    def has_image(self) -> bool:
        """An image is evidenced by an embedding or pre-extracted image text."""
        return bool(self.image_embeddings) or self.ocr_text is not None


@dataclass(frozen=True)
class UserRecord:
    user_id: str
    label: int
    profile: ProfileInfo
    tweets: tuple[TweetRecord, ...] = ()


@dataclass(frozen=True)
class LabeledDataset:
    users: tuple[UserRecord, ...]
    source_name: str = ""

    def __len__(self) -> int:
        return len(self.users)

    def labels(self) -> list[int]:
        return [u.label for u in self.users]


@dataclass(frozen=True)
class StatsReport:
    """Dataset-level URL/image coverage, user-level and tweet-level."""

    n_users: int
    n_tweets: int
    tweets_with_url: int
    tweets_with_image: int
    users_with_url: int
    users_with_image: int

    def percentages(self) -> dict[str, float]:
        def pct(k: int, n: int) -> float:
            return 100.0 * k / n if n else 0.0

        return {
            "tweets_with_no_urls": pct(self.n_tweets - self.tweets_with_url, self.n_tweets),
            "tweets_with_at_least_one_url": pct(self.tweets_with_url, self.n_tweets),
            "tweets_with_no_images": pct(self.n_tweets - self.tweets_with_image, self.n_tweets),
            "tweets_with_at_least_one_image": pct(self.tweets_with_image, self.n_tweets),
            "users_who_posted_no_urls": pct(self.n_users - self.users_with_url, self.n_users),
            "users_who_posted_at_least_one_url": pct(self.users_with_url, self.n_users),
            "users_who_posted_no_images": pct(self.n_users - self.users_with_image, self.n_users),
            "users_who_posted_at_least_one_image": pct(self.users_with_image, self.n_users),
        }


_REQUIRED_USER_KEYS = {"user_id", "label", "profile", "tweets"}
_PROFILE_KEYS = {"followers_count", "friends_count", "favourites_count", "statuses_count", "description"}
_TWEET_KEYS = {"tweet_id", "timestamp", "text", "urls", "ocr_text", "image_embeddings"}


def _parse_timestamp(value: str) -> datetime:
    # RFC 3339; py3.10 fromisoformat rejects the Z suffix
    ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts


def _is_absolute_url(url: str) -> bool:
    parsed = urlparse(url)
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


def _warn_unknown(obj: dict, known: set[str], line: int, where: str) -> None:
    unknown = set(obj) - known
    if unknown:
        warnings.warn(
            f"line {line}: ignoring unknown {where} keys {sorted(unknown)}",
            UnknownFieldWarning,
            stacklevel=3,
        )


def _parse_tweet(obj: dict, line: int) -> TweetRecord:
    _warn_unknown(obj, _TWEET_KEYS, line, "tweet")
    try:
        ts = _parse_timestamp(obj["timestamp"])
    except (KeyError, ValueError, TypeError) as e:
        raise ParseError(line, f"bad tweet timestamp: {e}") from e
    urls = tuple(obj.get("urls") or ())
    for u in urls:
        if not isinstance(u, str) or not _is_absolute_url(u):
            raise ParseError(line, f"not an absolute http(s) URL: {u!r}")
    embeddings = tuple(tuple(float(x) for x in emb) for emb in obj.get("image_embeddings") or ())
    dims = {len(e) for e in embeddings}
    if len(dims) > 1:
        raise ParseError(line, f"mixed embedding dimensions in one tweet: {sorted(dims)}")
    ocr = obj.get("ocr_text")
    if ocr is not None and not isinstance(ocr, str):
        raise ParseError(line, "ocr_text must be a string")
    return TweetRecord(
        tweet_id=str(obj.get("tweet_id", "")),
        timestamp=ts,
        text=str(obj.get("text", "")),
        urls=urls,
        ocr_text=ocr,
        image_embeddings=embeddings,
    )


def _parse_user(obj: dict, line: int) -> UserRecord:
    missing = _REQUIRED_USER_KEYS - set(obj)
    if missing:
        raise ParseError(line, f"missing keys {sorted(missing)}")
    _warn_unknown(obj, _REQUIRED_USER_KEYS, line, "user")
    label = obj["label"]
    if label not in (0, 1) or isinstance(label, bool):
        raise ParseError(line, f"label must be 0 or 1, got {label!r}")
    prof = obj["profile"]
    if not isinstance(prof, dict):
        raise ParseError(line, "profile must be an object")
    _warn_unknown(prof, _PROFILE_KEYS, line, "profile")
    counts = {}
    for key in ("followers_count", "friends_count", "favourites_count", "statuses_count"):
        v = prof.get(key, 0)
        if not isinstance(v, int) or v < 0:
            raise ParseError(line, f"profile.{key} must be a nonnegative int, got {v!r}")
        counts[key] = v
    profile = ProfileInfo(description=str(prof.get("description", "")), **counts)
    tweets = tuple(_parse_tweet(t, line) for t in obj["tweets"])
    return UserRecord(user_id=str(obj["user_id"]), label=int(label), profile=profile, tweets=tweets)


def load_dataset(path: str | Path) -> LabeledDataset:
    """Load a JSON-lines dataset, rejecting duplicate user ids and empty files."""
    path = Path(path)
    users: list[UserRecord] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as e:
                raise ParseError(line_no, f"invalid JSON: {e}") from e
            if not isinstance(obj, dict):
                raise ParseError(line_no, "record must be a JSON object")
            user = _parse_user(obj, line_no)
            if user.user_id in seen:
                raise DuplicateUser(user.user_id)
            seen.add(user.user_id)
            users.append(user)
    if not users:
        raise EmptyDataset(f"no user records in {path}")
    return LabeledDataset(users=tuple(users), source_name=path.name)


_URL_RE = re.compile(r"https?://\S+")
_MENTION_RE = re.compile(r"@\w+")


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load one stopword per line; defaults to the bundled English list."""
    if path is None:
        text = resources.files("depdetect.data").joinpath("stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def clean_text(raw: str, stopwords: frozenset[str] | set[str] = frozenset()) -> str:
    """Strip URLs, mentions and special characters; casefold; drop stopwords.

    Letters, digits, whitespace and emoji survive. Special characters are
    deleted in place (so "don't" becomes "dont"), emoji are space-separated
    from adjacent words, and the result is single-space normalized. The
    function is idempotent.
    """
    text = _URL_RE.sub(" ", raw)
    text = _MENTION_RE.sub(" ", text)
    chars: list[str] = []
    prev_emoji = False
    for ch in text:
        if is_emoji_char(ch):
            if not prev_emoji:
                chars.append(" ")
            chars.append(ch)
            prev_emoji = True
        elif is_emoji_component(ch):
            if prev_emoji:
                chars.append(ch)
            # stray joiners/modifiers without a base are dropped
        elif ch.isalnum():
            if prev_emoji:
                chars.append(" ")
            chars.append(ch)
            prev_emoji = False
        elif ch.isspace():
            chars.append(" ")
            prev_emoji = False
        # anything else is dropped without a separator
    tokens = "".join(chars).casefold().split()
    return " ".join(t for t in tokens if t not in stopwords)


def tokenize(text: str) -> list[str]:
    """Split cleaned text on whitespace."""
    return text.split()


def filter_tweets(ds: LabeledDataset, min_words: int = 5) -> LabeledDataset:
    """Keep tweets whose (already cleaned) word count exceeds ``min_words``.

    Users whose tweets are all dropped stay in the dataset with an empty
    tweet list; they still carry profile features.
    """
    users = tuple(
        replace(u, tweets=tuple(t for t in u.tweets if len(t.text.split()) > min_words))
        for u in ds.users
    )
    return replace(ds, users=users)


def users_without_tweets(ds: LabeledDataset) -> list[str]:
    """Ids of users left with no tweets (flagged in pipeline manifests)."""
    return [u.user_id for u in ds.users if not u.tweets]


def latin_letter_fraction(text: str) -> float:
    """Fraction of letters drawn from the basic Latin block; 1.0 when no letters."""
    letters = [ch for ch in text if ch.isalpha()]
    if not letters:
        return 1.0
    latin = sum(1 for ch in letters if ord(ch) < 0x80)
    return latin / len(letters)


def filter_non_english(ds: LabeledDataset, max_foreign: float = 0.5) -> LabeledDataset:
    """Drop tweets whose letter inventory is mostly outside basic Latin.

    Heuristic stand-in for a language detector; disable via the pipeline
    config when the corpus is known to be English.
    """
    users = tuple(
        replace(u, tweets=tuple(t for t in u.tweets if latin_letter_fraction(t.text) >= 1.0 - max_foreign))
        for u in ds.users
    )
    return replace(ds, users=users)


def dataset_stats(ds: LabeledDataset) -> StatsReport:
    """URL/image coverage counts per tweet and per user."""
    n_tweets = sum(len(u.tweets) for u in ds.users)
    tweets_with_url = sum(1 for u in ds.users for t in u.tweets if t.urls)
    tweets_with_image = sum(1 for u in ds.users for t in u.tweets if t.has_image)
    users_with_url = sum(1 for u in ds.users if any(t.urls for t in u.tweets))
    users_with_image = sum(1 for u in ds.users if any(t.has_image for t in u.tweets))
    return StatsReport(
        n_users=len(ds.users),
        n_tweets=n_tweets,
        tweets_with_url=tweets_with_url,
        tweets_with_image=tweets_with_image,
        users_with_url=users_with_url,
        users_with_image=users_with_image,
    )
