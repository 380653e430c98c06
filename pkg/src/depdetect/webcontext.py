"""Extrinsic tweet context: resolve embedded URLs to webpage titles and
append them (plus any pre-extracted image text) to the tweet text.

Fetching is injectable so the whole pipeline can run offline against a
persisted title cache; in offline mode no network call is ever attempted.
"""

from __future__ import annotations

import json
import re
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from html.parser import HTMLParser
from pathlib import Path
from typing import Callable
from urllib.parse import urlparse
from urllib.request import Request, urlopen

from .corpus import LabeledDataset, TweetRecord, _parse_timestamp

STATUS_OK = "ok"
STATUS_FAILED = "failed"
STATUS_SKIPPED = "skipped"

_URL_RE = re.compile(r"https?://\S+")


class OfflineCacheMiss(LookupError):
    def __init__(self, url: str):
        super().__init__(f"offline mode and no cache entry for {url}")
        self.url = url


@dataclass(frozen=True)
class FetchPolicy:
    """Fetch mechanics: timeouts, redirect/body limits, concurrency bounds."""

    timeout: float = 10.0
    max_redirects: int = 5
    max_body_bytes: int = 1 << 20
    max_in_flight_per_host: int = 1
    concurrency: int = 8
    offline: bool = False
    retry_cooldown_s: float = 86400.0
    max_title_chars: int = 300


@dataclass
class CacheEntry:
    title: str | None
    fetched_at: datetime
    status: str


class UrlTitleCache:
    """Persistent URL -> title map with ok/failed/skipped status per entry.

    Reads are lock-free; writes are serialized. save/load round-trips
    losslessly through JSON.
    """

    def __init__(self, entries: dict[str, CacheEntry] | None = None):
        self.entries: dict[str, CacheEntry] = dict(entries or {})
        self._lock = threading.Lock()

    def get(self, url: str) -> CacheEntry | None:
        return self.entries.get(url)

    def put(self, url: str, entry: CacheEntry) -> None:
        with self._lock:
            self.entries[url] = entry

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, UrlTitleCache) and self.entries == other.entries

    def save(self, path: str | Path) -> None:
        payload = {
            url: {
                "title": e.title,
                "fetched_at": e.fetched_at.isoformat(),
                "status": e.status,
            }
            for url, e in sorted(self.entries.items())
        }
        Path(path).write_text(json.dumps(payload, indent=1, ensure_ascii=False, sort_keys=True), "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "UrlTitleCache":
        raw = json.loads(Path(path).read_text("utf-8"))
        entries = {
            url: CacheEntry(
                title=v["title"],
                fetched_at=_parse_timestamp(v["fetched_at"]),
                status=v["status"],
            )
            for url, v in raw.items()
        }
        return cls(entries)


def extract_urls(text: str) -> list[str]:
    """All maximal http(s) URL substrings in order, duplicates preserved."""
    return _URL_RE.findall(text)


class _TitleParser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.title_parts: list[str] = []
        self.og_title: str | None = None
        self._in_title = False
        self._title_done = False

    def handle_starttag(self, tag, attrs):
        if tag == "title" and not self._title_done:
            self._in_title = True
        elif tag == "meta":
            d = dict(attrs)
            if d.get("property") == "og:title" and d.get("content") and self.og_title is None:
                self.og_title = d["content"]

    def handle_endtag(self, tag):
        if tag == "title" and self._in_title:
            self._in_title = False
            self._title_done = True

    def handle_data(self, data):
        if self._in_title:
            self.title_parts.append(data)


def html_title(document: bytes | str) -> str | None:
    """Text of the first <title>, whitespace-collapsed; og:title fallback."""
    if isinstance(document, bytes):
        document = document.decode("utf-8", errors="replace")
    parser = _TitleParser()
    try:
        parser.feed(document)
        parser.close()
    except Exception:
        pass  # malformed markup: keep whatever was parsed
    title = " ".join("".join(parser.title_parts).split())
    if title:
        return title
    if parser.og_title:
        og = " ".join(parser.og_title.split())
        return og or None
    return None


def default_http_get(url: str, policy: FetchPolicy) -> bytes:
    """Single GET honoring the policy's timeout/redirect/body limits."""
    body = b""
    current = url
    for _ in range(policy.max_redirects + 1):
        req = Request(current, headers={"User-Agent": "depdetect/0.1"})
        with urlopen(req, timeout=policy.timeout) as resp:  # noqa: S310 (http(s) only by construction)
            if resp.status in (301, 302, 303, 307, 308):
                current = resp.headers["Location"]
                continue
            body = resp.read(policy.max_body_bytes)
            break
    return body


def fetch_title(
    url: str,
    cache: UrlTitleCache,
    policy: FetchPolicy,
    http_get: Callable[[str, FetchPolicy], bytes] | None = None,
    now: datetime | None = None,
) -> str | None:
    """Resolve one URL to its page title, consulting and updating the cache.

    Cache hits are returned as-is (a failed entry yields None and is only
    retried after the policy cooldown). In offline mode an uncached URL
    raises OfflineCacheMiss; network failures are cached as failed, never
    raised.
    """
    now = now or datetime.now(timezone.utc)
    entry = cache.get(url)
    if entry is not None:
        if entry.status == STATUS_OK:
            return entry.title
        if policy.offline:
            return None
        if (now - entry.fetched_at).total_seconds() < policy.retry_cooldown_s:
            return None
        # cooldown expired: fall through and retry
    elif policy.offline:
        raise OfflineCacheMiss(url)

    getter = http_get or default_http_get
    try:
        body = getter(url, policy)
        title = html_title(body)
    except Exception:
        title = None
    if title is not None:
        title = title[: policy.max_title_chars]
        cache.put(url, CacheEntry(title=title, fetched_at=now, status=STATUS_OK))
    else:
        cache.put(url, CacheEntry(title=None, fetched_at=now, status=STATUS_FAILED))
    return title


def fetch_all_titles(
    ds: LabeledDataset,
    cache: UrlTitleCache,
    policy: FetchPolicy,
    http_get: Callable[[str, FetchPolicy], bytes] | None = None,
) -> dict:
    """Resolve every distinct URL in the dataset once.

    Offline cache misses are collected (the run continues). Fetching runs
    concurrently up to the policy bound with one request in flight per host.
    Returns a summary with counts and the miss list.
    """
    urls: list[str] = []
    seen: set[str] = set()
    for u in ds.users:
        for t in u.tweets:
            for url in t.urls:
                if url not in seen:
                    seen.add(url)
                    urls.append(url)

    misses: list[str] = []
    resolved = 0
    failed = 0
    host_locks: dict[str, threading.Lock] = {}
    locks_guard = threading.Lock()

    def host_lock(url: str) -> threading.Lock:
        host = urlparse(url).netloc
        with locks_guard:
            return host_locks.setdefault(host, threading.Lock())

    def work(url: str) -> None:
        nonlocal resolved, failed
        try:
            with host_lock(url):
                title = fetch_title(url, cache, policy, http_get=http_get)
        except OfflineCacheMiss:
            misses.append(url)
            return
        if title is None:
            failed += 1
        else:
            resolved += 1

    if policy.offline:
        for url in urls:
            work(url)
    else:
        with ThreadPoolExecutor(max_workers=policy.concurrency) as pool:
            list(pool.map(work, urls))

    return {
        "distinct_urls": len(urls),
        "resolved": resolved,
        "failed": failed,
        "offline_misses": sorted(misses),
    }


def augment_tweet(t: TweetRecord, titles: list[str]) -> TweetRecord:
    """Copy of the tweet with titles, then any image text, appended to it."""
    parts = [t.text] + list(titles)
    if t.ocr_text:
        parts.append(t.ocr_text)
    return replace(t, text=" ".join(p for p in parts if p))


def augment_dataset(ds: LabeledDataset, cache: UrlTitleCache) -> LabeledDataset:
    """Append cached titles (and image text) to every tweet, cache-only.

    Failed or uncached URLs contribute nothing; no network is touched.
    """
    users = []
    for u in ds.users:
        tweets = []
        for t in u.tweets:
            titles = []
            for url in t.urls:
                entry = cache.get(url)
                if entry is not None and entry.status == STATUS_OK and entry.title:
                    titles.append(entry.title)
            tweets.append(augment_tweet(t, titles))
        users.append(replace(u, tweets=tuple(tweets)))
    return replace(ds, users=tuple(users))
