"""Resolve tweet URLs to webpage titles and append them to the tweet text.

Everything here runs offline against the bundled title cache.
Run from the repository root:  python demos/02_web_context.py
"""

from pathlib import Path

from depdetect import UrlTitleCache, augment_tweet, extract_urls, fetch_title, html_title
from depdetect.corpus import load_dataset
from depdetect.webcontext import FetchPolicy, augment_dataset

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"

# ---------------------------------------------------------------------------
# Title extraction from raw HTML: first <title>, og:title as fallback.
print(html_title(b"<html><head><title> Anxiety  Help \n Center </title></head>"))
print(html_title(b'<meta property="og:title" content="Fallback Title">'))
print(html_title(b"<p>no title anywhere</p>"))

# ---------------------------------------------------------------------------
# URLs are pulled out of raw tweet text in order, duplicates preserved.
text = "read this https://anxietyuk.example.org/ and https://healthyplace.example.com/birthday-depression"
print("\nurls:", extract_urls(text))

# ---------------------------------------------------------------------------
# The persistent cache answers offline; uncached URLs raise in offline mode.
cache = UrlTitleCache.load(DATA / "fixture_title_cache.json")
policy = FetchPolicy(offline=True)
title = fetch_title("https://anxietyuk.example.org/", cache, policy)
print("\ncached title:", title)

# ---------------------------------------------------------------------------
# Augmentation appends each resolved title, then any text extracted from
# images, to the tweet body; failed fetches contribute nothing.
ds = load_dataset(DATA / "fixture_corpus.jsonl")
augmented = augment_dataset(ds, cache)
for before, after in zip(ds.users[0].tweets, augmented.users[0].tweets):
    if after.text != before.text:
        print("\nbefore:", before.text)
        print("after: ", after.text)
        break

tweet = ds.users[0].tweets[0]
print("\nmanual augment:", augment_tweet(tweet, ["Self-harm alternatives - Stay strong"]).text)
