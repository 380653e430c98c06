"""Latent Dirichlet Allocation via collapsed Gibbs sampling.

Token-topic assignments are resampled from the count-based conditional
p(z_i = t) ∝ (m_dt + alpha) * (n_tw + eta) / (n_t + W*eta), where m_dt are
per-document topic counts (current token excluded) and n_tw / n_t are
corpus-wide topic-term and topic totals. New documents are folded in
against frozen model counts. Sampling is deterministic given the seed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numba import njit


class EmptyCorpus(ValueError):
    pass


class DegenerateVocabulary(ValueError):
    pass


class CountConservationError(AssertionError):
    """Internal bookkeeping drifted from the token count; a sampler bug."""


@dataclass
class TopicAssignment:
    """Final Gibbs state over the training corpus.

    topics[i] is the topic of the i-th token (corpus order); doc_of[i] its
    document. doc_topic_counts[d, t] counts topic t in document d and sums
    to that document's length across t.
    """

    topics: np.ndarray
    doc_of: np.ndarray
    doc_topic_counts: np.ndarray


@dataclass
class TopicModel:
    """Fitted LDA state: smoothing constants plus integer count matrices.

    Invariants: n.sum(axis=1) == n_t, all counts nonnegative,
    alpha > 0 and eta > 0.
    """

    T: int
    alpha: float
    eta: float
    vocab: tuple[str, ...]
    n: np.ndarray  # (T, W) topic-term counts
    n_t: np.ndarray  # (T,) topic totals
    trained_on: str = ""
    seed: int = 0
    assignment: TopicAssignment | None = None  # training state, never persisted

    @property
    def W(self) -> int:
        return len(self.vocab)

    def vocab_index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.vocab)}

    def save(self, path: str | Path) -> None:
        payload = {
            "T": self.T,
            "alpha": self.alpha,
            "eta": self.eta,
            "vocab": list(self.vocab),
            "n": self.n.tolist(),
            "trained_on": self.trained_on,
            "seed": self.seed,
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True), "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TopicModel":
        d = json.loads(Path(path).read_text("utf-8"))
        n = np.asarray(d["n"], dtype=np.int64)
        return cls(
            T=d["T"],
            alpha=d["alpha"],
            eta=d["eta"],
            vocab=tuple(d["vocab"]),
            n=n,
            n_t=n.sum(axis=1),
            trained_on=d["trained_on"],
            seed=d["seed"],
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TopicModel)
            and self.T == other.T
            and self.alpha == other.alpha
            and self.eta == other.eta
            and self.vocab == other.vocab
            and np.array_equal(self.n, other.n)
            and self.seed == other.seed
        )


@njit(cache=True)
def _seed_rng(seed):
    np.random.seed(seed)


@njit(cache=True)
def _init_assignments(tokens, docs, T, n_tw, n_t, m_dt):
    z = np.empty(tokens.shape[0], dtype=np.int32)
    for i in range(tokens.shape[0]):
        t = np.random.randint(0, T)
        z[i] = t
        n_tw[t, tokens[i]] += 1
        n_t[t] += 1
        m_dt[docs[i], t] += 1
    return z


@njit(cache=True)
def _gibbs_sweep(tokens, docs, z, n_tw, n_t, m_dt, alpha, eta, T, W):
    probs = np.empty(T)
    for i in range(tokens.shape[0]):
        w = tokens[i]
        d = docs[i]
        t_old = z[i]
        n_tw[t_old, w] -= 1
        n_t[t_old] -= 1
        m_dt[d, t_old] -= 1
        total = 0.0
        for t in range(T):
            p = (m_dt[d, t] + alpha) * (n_tw[t, w] + eta) / (n_t[t] + W * eta)
            probs[t] = p
            total += p
        r = np.random.random() * total
        acc = 0.0
        t_new = T - 1
        for t in range(T):
            acc += probs[t]
            if r < acc:
                t_new = t
                break
        z[i] = t_new
        n_tw[t_new, w] += 1
        n_t[t_new] += 1
        m_dt[d, t_new] += 1


@njit(cache=True)
def _fold_in(tokens, n_tw, n_t, alpha, eta, T, W, iterations):
    m = np.zeros(T, dtype=np.int64)
    z = np.empty(tokens.shape[0], dtype=np.int32)
    for i in range(tokens.shape[0]):
        t = np.random.randint(0, T)
        z[i] = t
        m[t] += 1
    probs = np.empty(T)
    for _ in range(iterations):
        for i in range(tokens.shape[0]):
            w = tokens[i]
            t_old = z[i]
            m[t_old] -= 1
            total = 0.0
            for t in range(T):
                p = (m[t] + alpha) * (n_tw[t, w] + eta) / (n_t[t] + W * eta)
                probs[t] = p
                total += p
            r = np.random.random() * total
            acc = 0.0
            t_new = T - 1
            for t in range(T):
                acc += probs[t]
                if r < acc:
                    t_new = t
                    break
            z[i] = t_new
            m[t_new] += 1
    return m


def _corpus_fingerprint(corpus: list[list[str]]) -> str:
    h = hashlib.sha256()
    for doc in corpus:
        for tok in doc:
            h.update(tok.encode("utf-8"))
            h.update(b"\x00")
        h.update(b"\x01")
    return h.hexdigest()[:16]


def build_vocab(corpus: list[list[str]]) -> tuple[str, ...]:
    """Vocabulary in first-appearance order (deterministic)."""
    seen: dict[str, None] = {}
    for doc in corpus:
        for tok in doc:
            if tok not in seen:
                seen[tok] = None
    return tuple(seen)


def fit_lda(
    corpus: list[list[str]],
    T: int = 15,
    alpha: float | None = None,
    eta: float = 0.01,
    iterations: int = 500,
    seed: int = 0,
    keep_assignment: bool = False,
) -> TopicModel:
    """Fit by collapsed Gibbs sampling; deterministic given the seed.

    alpha defaults to 50/T. Count conservation is asserted after every
    sweep. Raises EmptyCorpus when no document carries a token and
    DegenerateVocabulary when the vocabulary is smaller than T. With
    keep_assignment the returned model carries the final Gibbs state as
    ``model.assignment`` (training state only, never persisted).
    """
    if T < 2:
        raise ValueError("T must be at least 2")
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    if alpha is None:
        alpha = 50.0 / T
    if alpha <= 0 or eta <= 0:
        raise ValueError("alpha and eta must be positive")
    if not corpus or all(not doc for doc in corpus):
        raise EmptyCorpus("corpus has no tokens")
    vocab = build_vocab(corpus)
    W = len(vocab)
    if W < T:
        raise DegenerateVocabulary(f"vocabulary size {W} < T={T}")
    index = {w: i for i, w in enumerate(vocab)}

    token_ids = []
    doc_ids = []
    for d, doc in enumerate(corpus):
        for tok in doc:
            token_ids.append(index[tok])
            doc_ids.append(d)
    tokens = np.asarray(token_ids, dtype=np.int32)
    docs = np.asarray(doc_ids, dtype=np.int32)
    total = tokens.shape[0]
    doc_lengths = np.bincount(docs, minlength=len(corpus))

    n_tw = np.zeros((T, W), dtype=np.int64)
    n_t = np.zeros(T, dtype=np.int64)
    m_dt = np.zeros((len(corpus), T), dtype=np.int64)
    _seed_rng(seed)
    z = _init_assignments(tokens, docs, T, n_tw, n_t, m_dt)
    _check_counts(n_tw, n_t, m_dt, doc_lengths, total)
    for _ in range(iterations):
        _gibbs_sweep(tokens, docs, z, n_tw, n_t, m_dt, alpha, eta, T, W)
        _check_counts(n_tw, n_t, m_dt, doc_lengths, total)

    model = TopicModel(
        T=T,
        alpha=float(alpha),
        eta=float(eta),
        vocab=vocab,
        n=n_tw,
        n_t=n_t,
        trained_on=_corpus_fingerprint(corpus),
        seed=seed,
    )
    if keep_assignment:
        model.assignment = TopicAssignment(topics=z, doc_of=docs, doc_topic_counts=m_dt)
    return model


def _check_counts(n_tw, n_t, m_dt, doc_lengths, total) -> None:
    if int(n_tw.sum()) != total:
        raise CountConservationError("sum of topic-term counts != token count")
    if not np.array_equal(n_tw.sum(axis=1), n_t):
        raise CountConservationError("topic totals inconsistent with topic-term counts")
    if not np.array_equal(m_dt.sum(axis=1), doc_lengths):
        raise CountConservationError("per-document topic counts != document lengths")
    if (n_tw < 0).any() or (m_dt < 0).any():
        raise CountConservationError("negative count")


def doc_topic_dist(
    model: TopicModel,
    doc: list[str],
    fold_iterations: int = 50,
    seed: int = 0,
) -> np.ndarray:
    """Fold a document in against frozen counts and return its topic mix.

    Output components are (m_t + alpha) / (len + T*alpha) and sum to 1.
    Unknown tokens are skipped; an empty (or all-unknown) document yields
    the uniform vector.
    """
    index = model.vocab_index()
    ids = np.asarray([index[t] for t in doc if t in index], dtype=np.int32)
    T, alpha = model.T, model.alpha
    if ids.size == 0:
        return np.full(T, 1.0 / T)
    _seed_rng(seed)
    m = _fold_in(ids, model.n, model.n_t, alpha, model.eta, T, model.W, fold_iterations)
    return (m + alpha) / (ids.size + T * alpha)


def term_topic_dist(model: TopicModel) -> np.ndarray:
    """(T, W) matrix of (n_tw + eta) / (n_t + W*eta); rows sum to 1."""
    return (model.n + model.eta) / (model.n_t[:, None] + model.W * model.eta)


def top_words(model: TopicModel, t: int, k: int) -> list[str]:
    """k highest-probability words of topic t, ties broken by vocab order."""
    if not 0 <= t < model.T:
        raise IndexError(f"topic index {t} out of range [0, {model.T})")
    if k <= 0:
        return []
    gamma = term_topic_dist(model)[t]
    order = np.lexsort((np.arange(model.W), -gamma))
    return [model.vocab[i] for i in order[: min(k, model.W)]]
