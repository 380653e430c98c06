from datetime import datetime, timedelta, timezone

import pytest

from depdetect.corpus import TweetRecord
from depdetect.webcontext import (
    STATUS_FAILED,
    STATUS_OK,
    CacheEntry,
    FetchPolicy,
    OfflineCacheMiss,
    UrlTitleCache,
    augment_tweet,
    extract_urls,
    fetch_all_titles,
    fetch_title,
    html_title,
)

NOW = datetime(2022, 1, 1, tzinfo=timezone.utc)


def tweet(text="hi", urls=(), ocr=None):
    return TweetRecord(
        tweet_id="t", timestamp=NOW, text=text, urls=tuple(urls), ocr_text=ocr
    )


class CountingFetcher:
    def __init__(self, pages=None, fail=False):
        self.calls = 0
        self.pages = pages or {}
        self.fail = fail

    def __call__(self, url, policy):
        self.calls += 1
        if self.fail or url not in self.pages:
            raise OSError("no route to host")
        return self.pages[url]


class TestExtractUrls:
    def test_two_urls_in_order(self):
        assert extract_urls("see https://x.y/a and http://z.w") == ["https://x.y/a", "http://z.w"]

    def test_none(self):
        assert extract_urls("no links here") == []

    def test_duplicates_preserved(self):
        assert extract_urls("https://a https://a") == ["https://a", "https://a"]


class TestHtmlTitle:
    def test_whitespace_collapse(self):
        assert html_title(b"<html><head><title> A  B </title>") == "A B"

    def test_og_title_fallback(self):
        doc = b'<html><head><meta property="og:title" content="X"></head></html>'
        assert html_title(doc) == "X"

    def test_title_preferred_over_og(self):
        doc = b'<head><title>T</title><meta property="og:title" content="X"></head>'
        assert html_title(doc) == "T"

    def test_empty_document(self):
        assert html_title(b"") is None

    def test_malformed_markup_tolerated(self):
        assert html_title(b"<head><foo bar=><title>ok</title><p>junk") == "ok"
        # an unterminated title is RCDATA to the end of input, like browsers
        assert html_title(b"<title>ok") == "ok"

    def test_entities_decoded(self):
        assert html_title(b"<title>A &amp; B</title>") == "A & B"


class TestFetchTitle:
    def test_cached_hit(self):
        cache = UrlTitleCache(
            {
                "https://anxietyuk.example.org/": CacheEntry(
                    title="National charity helping people with Anxiety - Anxiety UK",
                    fetched_at=NOW,
                    status=STATUS_OK,
                )
            }
        )
        fetcher = CountingFetcher()
        out = fetch_title(
            "https://anxietyuk.example.org/", cache, FetchPolicy(offline=True), http_get=fetcher
        )
        assert out == "National charity helping people with Anxiety - Anxiety UK"
        assert fetcher.calls == 0

    def test_offline_uncached_raises(self):
        with pytest.raises(OfflineCacheMiss):
            fetch_title("https://nowhere.example/", UrlTitleCache(), FetchPolicy(offline=True))

    def test_no_title_cached_as_failed(self):
        cache = UrlTitleCache()
        fetcher = CountingFetcher(pages={"https://a.example/": b"<html><body>no title"})
        out = fetch_title("https://a.example/", cache, FetchPolicy(), http_get=fetcher, now=NOW)
        assert out is None
        assert cache.get("https://a.example/").status == STATUS_FAILED

    def test_network_failure_cached_not_raised(self):
        cache = UrlTitleCache()
        fetcher = CountingFetcher(fail=True)
        out = fetch_title("https://a.example/", cache, FetchPolicy(), http_get=fetcher, now=NOW)
        assert out is None
        assert cache.get("https://a.example/").status == STATUS_FAILED

    def test_failed_entry_not_retried_before_cooldown(self):
        cache = UrlTitleCache(
            {"https://a.example/": CacheEntry(title=None, fetched_at=NOW, status=STATUS_FAILED)}
        )
        fetcher = CountingFetcher(pages={"https://a.example/": b"<title>Later</title>"})
        policy = FetchPolicy(retry_cooldown_s=3600)
        out = fetch_title("https://a.example/", cache, policy, http_get=fetcher, now=NOW + timedelta(seconds=60))
        assert out is None
        assert fetcher.calls == 0
        # after the cooldown the retry goes through
        out = fetch_title("https://a.example/", cache, policy, http_get=fetcher, now=NOW + timedelta(seconds=7200))
        assert out == "Later"
        assert fetcher.calls == 1

    def test_title_truncated(self):
        cache = UrlTitleCache()
        fetcher = CountingFetcher(pages={"https://a.example/": b"<title>" + b"x" * 900 + b"</title>"})
        out = fetch_title("https://a.example/", cache, FetchPolicy(), http_get=fetcher, now=NOW)
        assert len(out) == 300


class TestCacheRoundTrip:
    def test_save_load_equal(self, tmp_path):
        cache = UrlTitleCache(
            {
                "https://a.example/": CacheEntry("Title A", NOW, STATUS_OK),
                "https://b.example/": CacheEntry(None, NOW, STATUS_FAILED),
            }
        )
        path = tmp_path / "cache.json"
        cache.save(path)
        assert UrlTitleCache.load(path) == cache

    def test_fixture_cache_round_trip(self, fixture_cache, tmp_path):
        path = tmp_path / "cache.json"
        fixture_cache.save(path)
        assert UrlTitleCache.load(path) == fixture_cache


class TestAugmentTweet:
    def test_title_appended(self):
        t = tweet("sad day")
        out = augment_tweet(t, ["Self-harm alternatives - Stay strong"])
        assert out.text == "sad day Self-harm alternatives - Stay strong"

    def test_identity_with_no_inputs(self):
        t = tweet("unchanged text")
        assert augment_tweet(t, []).text == "unchanged text"

    def test_ocr_appended_once_at_end(self):
        t = tweet("look", ocr="you are not alone")
        assert augment_tweet(t, []).text == "look you are not alone"

    def test_titles_then_ocr(self):
        t = tweet("x", ocr="OCR")
        assert augment_tweet(t, ["T1", "T2"]).text == "x T1 T2 OCR"

    def test_original_unmodified(self):
        t = tweet("orig")
        augment_tweet(t, ["T"])
        assert t.text == "orig"


class TestFetchAll:
    def corpus(self, tmp_path):
        import json

        tweets = [
            {"tweet_id": "t1", "timestamp": "2021-06-01T00:00:00Z", "text": "a", "urls": ["https://one.example/"]},
            {"tweet_id": "t2", "timestamp": "2021-06-01T00:00:00Z", "text": "b", "urls": ["https://two.example/", "https://one.example/"]},
            {"tweet_id": "t3", "timestamp": "2021-06-01T00:00:00Z", "text": "c", "urls": ["https://three.example/"]},
        ]
        line = {
            "user_id": "u",
            "label": 0,
            "profile": {"followers_count": 0, "friends_count": 0, "favourites_count": 0, "statuses_count": 0, "description": ""},
            "tweets": tweets,
        }
        p = tmp_path / "c.jsonl"
        p.write_text(json.dumps(line) + "\n")
        from depdetect.corpus import load_dataset

        return load_dataset(p)

    def test_distinct_urls_fetched_once(self, tmp_path):
        ds = self.corpus(tmp_path)
        pages = {u: f"<title>{i}</title>".encode() for i, u in enumerate(
            ["https://one.example/", "https://two.example/", "https://three.example/"])}
        fetcher = CountingFetcher(pages=pages)
        cache = UrlTitleCache()
        summary = fetch_all_titles(ds, cache, FetchPolicy(), http_get=fetcher)
        assert summary["distinct_urls"] == 3
        assert fetcher.calls <= 3
        # second run: everything cached
        fetcher2 = CountingFetcher(pages=pages)
        fetch_all_titles(ds, cache, FetchPolicy(), http_get=fetcher2)
        assert fetcher2.calls == 0

    def test_offline_misses_listed_and_no_fetch(self, tmp_path):
        ds = self.corpus(tmp_path)
        fetcher = CountingFetcher()
        cache = UrlTitleCache(
            {"https://one.example/": CacheEntry("One", NOW, STATUS_OK)}
        )
        summary = fetch_all_titles(ds, cache, FetchPolicy(offline=True), http_get=fetcher)
        assert fetcher.calls == 0
        assert summary["offline_misses"] == ["https://three.example/", "https://two.example/"]
