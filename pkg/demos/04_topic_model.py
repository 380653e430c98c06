"""Collapsed-Gibbs topic modeling on a corpus with two planted topics.

Run from the repository root:  python demos/04_topic_model.py
"""

import numpy as np

from depdetect import doc_topic_dist, fit_lda, term_topic_dist, top_words

# ---------------------------------------------------------------------------
# Build a corpus where half the documents draw from a "mood" vocabulary and
# half from a "daily life" vocabulary; the sampler should separate them.
rng = np.random.default_rng(0)
mood = "sad lonely tired hopeless crying empty numb therapy insomnia grief".split()
daily = "coffee game sunshine friend garden market train weekend picnic movie".split()

corpus = []
for _ in range(60):
    corpus.append([mood[i] for i in rng.integers(0, len(mood), 40)])
for _ in range(60):
    corpus.append([daily[i] for i in rng.integers(0, len(daily), 40)])

model = fit_lda(corpus, T=2, alpha=1.0, eta=0.01, iterations=300, seed=11)
print(f"fitted T={model.T} topics over {model.W} terms "
      f"({int(model.n.sum())} tokens), seed={model.seed}")

# ---------------------------------------------------------------------------
# Top words per topic (the probability of a term given a topic).
for t in range(model.T):
    print(f"topic {t}: {' '.join(top_words(model, t, 6))}")

gamma = term_topic_dist(model)
print("rows sum to one:", np.allclose(gamma.sum(axis=1), 1.0))

# ---------------------------------------------------------------------------
# Fold in unseen documents: frozen counts, only the new doc's assignments move.
for doc in (["sad", "crying", "therapy", "numb"], ["coffee", "picnic", "sunshine"]):
    phi = doc_topic_dist(model, doc, fold_iterations=50, seed=1)
    print(f"{' '.join(doc):<30} -> topic mix {np.round(phi, 3)}")

# An empty document carries no evidence and comes back uniform.
print("empty document             ->", doc_topic_dist(model, []))
