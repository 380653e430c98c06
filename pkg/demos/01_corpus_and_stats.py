"""Walk through dataset loading, tweet cleaning, and coverage statistics.

Run from the repository root:  python demos/01_corpus_and_stats.py
"""

from pathlib import Path

from depdetect import clean_text, dataset_stats, filter_tweets, load_dataset, load_stopwords

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"

# ---------------------------------------------------------------------------
# Load the bundled 20-user mini corpus (JSON lines, one user per line).
ds = load_dataset(DATA / "fixture_corpus.jsonl")
print(f"loaded {len(ds.users)} users, {sum(len(u.tweets) for u in ds.users)} tweets")
print(f"depressed: {sum(u.label for u in ds.users)}, control: {sum(1 - u.label for u in ds.users)}")

# ---------------------------------------------------------------------------
# Cleaning strips URLs, @mentions and special characters, folds case,
# removes stopwords, and keeps emoji as separate tokens.
stopwords = load_stopwords()
raw = ds.users[0].tweets[0].text
print("\nraw:    ", raw)
print("cleaned:", clean_text(raw, stopwords))

# The cleaner is idempotent: cleaning twice changes nothing.
once = clean_text(raw, stopwords)
assert clean_text(once, stopwords) == once

# ---------------------------------------------------------------------------
# Coverage statistics: how many tweets/users carry URLs and images.
rep = dataset_stats(ds)
print(f"\n{'statistic':<40}{'percent':>9}")
for key, pct in rep.percentages().items():
    print(f"{key.replace('_', ' '):<40}{pct:>8.1f}%")

# ---------------------------------------------------------------------------
# The length filter keeps tweets with more than five cleaned words.
cleaned = ds
from dataclasses import replace  # noqa: E402

cleaned = replace(
    ds,
    users=tuple(
        replace(u, tweets=tuple(replace(t, text=clean_text(t.text, stopwords)) for t in u.tweets))
        for u in ds.users
    ),
)
filtered = filter_tweets(cleaned, min_words=5)
kept = sum(len(u.tweets) for u in filtered.users)
print(f"\nafter the >5-word filter: {kept} of {rep.n_tweets} tweets remain")
