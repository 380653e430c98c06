"""Dictionary-based text features: ten-emotion intensity, emoji sentiment,
and the 195-category counts with the depression category split off.

Run from the repository root:  python demos/03_lexicon_features.py
"""

import numpy as np

from depdetect import load_category_lexicon, load_emoji_table, load_emotion_lexicon
from depdetect.lexicons import (
    EMOTIONS,
    category_counts,
    emoji_sentiment,
    emotion_intensity,
    split_depression,
)

emotions = load_emotion_lexicon()
emoji = load_emoji_table()
categories = load_category_lexicon()
print(f"emotion lexicon: {len(emotions)} words, emoji table: {len(emoji)} entries, "
      f"categories: {len(categories)} ({categories.n_general} general + depression)")

# ---------------------------------------------------------------------------
# Emotion intensity = per-emotion matched-token frequency over cleaned text.
sample = "feeling hopeless and exhausted therapy tomorrow but grateful for my friend"
vec = emotion_intensity(sample, emotions)
print("\ntext:", sample)
for name, value in sorted(zip(EMOTIONS, vec), key=lambda kv: -kv[1]):
    if value:
        print(f"  {name:<14}{value:.3f}")

# ---------------------------------------------------------------------------
# Emoji sentiment = mean (positive, negative, neutral) of the emoji present;
# it reads the raw text, before any cleaning.
raw = "cant stop crying 😢😢 but my dog helps 🐶"
pos, neg, neu = emoji_sentiment(raw, emoji)
print(f"\nemoji sentiment of {raw!r}: pos={pos:.2f} neg={neg:.2f} neutral={neu:.2f}")

# ---------------------------------------------------------------------------
# Category counts: 195-vector, last slot is the curated depression category.
text = "the doctor suggested therapy for my depression and insomnia"
counts = category_counts(text, categories)
general, depression_score = split_depression(counts)
print(f"\ntext: {text}")
print(f"depression score: {depression_score:.3f}")
top = np.argsort(general)[::-1][:5]
for ci in top:
    if general[ci] > 0:
        print(f"  {categories.names[ci]:<18}{general[ci]:.3f}")

# Concatenating the split reconstructs the original vector exactly.
assert np.array_equal(np.concatenate([general, [depression_score]]), counts)
