import numpy as np
import pytest

from depdetect.topics import (
    CountConservationError,
    DegenerateVocabulary,
    EmptyCorpus,
    TopicModel,
    _check_counts,
    doc_topic_dist,
    fit_lda,
    term_topic_dist,
    top_words,
)


def planted_corpus(n_docs=60, doc_len=30, n_words=40, seed=1):
    """Two disjoint-vocabulary topics, half the docs from each."""
    rng = np.random.default_rng(seed)
    va = [f"a{i}" for i in range(n_words)]
    vb = [f"b{i}" for i in range(n_words)]
    corpus = []
    for _ in range(n_docs // 2):
        corpus.append([va[i] for i in rng.integers(0, n_words, doc_len)])
    for _ in range(n_docs // 2):
        corpus.append([vb[i] for i in rng.integers(0, n_words, doc_len)])
    return corpus, set(va), set(vb)


@pytest.fixture(scope="module")
def planted_model():
    corpus, va, vb = planted_corpus()
    model = fit_lda(corpus, T=2, alpha=1.0, eta=0.01, iterations=150, seed=9)
    return corpus, va, vb, model


class TestFitLda:
    def test_planted_recovery(self, planted_model):
        corpus, _, _, model = planted_model
        dominant = 0
        for d, doc in enumerate(corpus):
            phi = doc_topic_dist(model, doc, fold_iterations=30, seed=d)
            if phi.max() > 0.9:
                dominant += 1
        assert dominant >= 0.95 * len(corpus)

    def test_determinism(self):
        corpus, _, _ = planted_corpus(n_docs=10, doc_len=10)
        a = fit_lda(corpus, T=2, iterations=20, seed=5)
        b = fit_lda(corpus, T=2, iterations=20, seed=5)
        assert a == b

    def test_seed_changes_assignments(self):
        corpus, _, _ = planted_corpus(n_docs=10, doc_len=10)
        a = fit_lda(corpus, T=2, iterations=5, seed=1)
        b = fit_lda(corpus, T=2, iterations=5, seed=2)
        assert not np.array_equal(a.n, b.n)

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            fit_lda([], T=2)
        with pytest.raises(EmptyCorpus):
            fit_lda([[], []], T=2)

    def test_degenerate_vocabulary(self):
        with pytest.raises(DegenerateVocabulary):
            fit_lda([["x"]], T=2, iterations=1)

    def test_count_conservation_final(self):
        rng = np.random.default_rng(0)
        corpus = [[f"w{rng.integers(0, 30)}" for _ in range(int(rng.integers(1, 40)))] for _ in range(25)]
        total = sum(len(d) for d in corpus)
        model = fit_lda(corpus, T=4, iterations=30, seed=3)
        assert int(model.n.sum()) == total
        assert np.array_equal(model.n.sum(axis=1), model.n_t)

    def test_check_counts_catches_corruption(self):
        n_tw = np.array([[1, 0], [0, 1]], dtype=np.int64)
        with pytest.raises(CountConservationError):
            _check_counts(n_tw, np.array([1, 1]), np.array([[2, 0]]), np.array([2]), total=3)

    def test_kept_assignment_invariants(self):
        corpus, _, _ = planted_corpus(n_docs=10, doc_len=12)
        model = fit_lda(corpus, T=2, iterations=10, seed=4, keep_assignment=True)
        a = model.assignment
        assert a is not None
        assert a.topics.shape[0] == sum(len(d) for d in corpus)
        # per-document topic counts sum to the document length
        lengths = np.asarray([len(d) for d in corpus])
        assert np.array_equal(a.doc_topic_counts.sum(axis=1), lengths)
        # and agree with the flat assignment vector
        for d in range(len(corpus)):
            mask = a.doc_of == d
            for t in range(2):
                assert (a.topics[mask] == t).sum() == a.doc_topic_counts[d, t]


class TestDocTopicDist:
    def test_empty_doc_uniform(self, planted_model):
        _, _, _, model = planted_model
        phi = doc_topic_dist(model, [])
        assert np.allclose(phi, 0.5)

    def test_unknown_tokens_skipped(self, planted_model):
        _, _, _, model = planted_model
        assert np.allclose(doc_topic_dist(model, ["zzz", "yyy"]), 0.5)

    def test_planted_doc_argmax(self, planted_model):
        corpus, va, _, model = planted_model
        gamma = term_topic_dist(model)
        a_topic = int(np.argmax([gamma[t, model.vocab.index("a0")] for t in range(2)]))
        phi = doc_topic_dist(model, ["a0", "a1", "a2", "a3", "a4"] * 4, fold_iterations=30, seed=0)
        assert int(phi.argmax()) == a_topic

    def test_sums_to_one(self, planted_model):
        corpus, _, _, model = planted_model
        for doc in corpus[:10]:
            assert doc_topic_dist(model, doc, seed=1).sum() == pytest.approx(1.0, abs=1e-9)

    def test_minimal_count_arithmetic(self):
        # one token folded in with T=2, alpha=1: (1+1)/(1+2), (0+1)/(1+2)
        corpus = [["x"], ["y"]]
        model = fit_lda(corpus, T=2, alpha=1.0, eta=1.0, iterations=5, seed=0)
        phi = doc_topic_dist(model, ["x"], fold_iterations=5, seed=0)
        assert sorted(phi) == pytest.approx([1 / 3, 2 / 3])


class TestTermTopicDist:
    def test_zero_counts_uniform(self):
        model = TopicModel(
            T=2, alpha=1.0, eta=0.5, vocab=("a", "b", "c"),
            n=np.zeros((2, 3), dtype=np.int64), n_t=np.zeros(2, dtype=np.int64),
        )
        assert np.allclose(term_topic_dist(model), 1 / 3)

    def test_hand_set_counts(self):
        # n = [[2,0],[0,2]], eta=1, W=2 -> rows (3/4, 1/4) and (1/4, 3/4)
        n = np.array([[2, 0], [0, 2]], dtype=np.int64)
        model = TopicModel(T=2, alpha=1.0, eta=1.0, vocab=("a", "b"), n=n, n_t=n.sum(axis=1))
        gamma = term_topic_dist(model)
        assert np.allclose(gamma[0], [3 / 4, 1 / 4])
        assert np.allclose(gamma[1], [1 / 4, 3 / 4])

    def test_rows_sum_to_one(self, planted_model):
        _, _, _, model = planted_model
        assert np.allclose(term_topic_dist(model).sum(axis=1), 1.0, atol=1e-9)


class TestTopWords:
    def test_planted_top_words_from_planted_vocab(self, planted_model):
        _, va, vb, model = planted_model
        for t in range(2):
            words = set(top_words(model, t, 10))
            assert words <= va or words <= vb

    def test_k_zero(self, planted_model):
        _, _, _, model = planted_model
        assert top_words(model, 0, 0) == []

    def test_k_clamped_to_vocab(self, planted_model):
        _, _, _, model = planted_model
        assert len(top_words(model, 0, 10_000)) == model.W

    def test_tie_break_by_vocab_order(self):
        n = np.array([[1, 1, 1]], dtype=np.int64)
        model = TopicModel(T=2, alpha=1.0, eta=1.0, vocab=("b", "a", "c"),
                           n=np.vstack([n, n]), n_t=np.array([3, 3]))
        assert top_words(model, 0, 3) == ["b", "a", "c"]

    def test_index_out_of_range(self, planted_model):
        _, _, _, model = planted_model
        with pytest.raises(IndexError):
            top_words(model, 99, 5)


class TestPersistence:
    def test_round_trip_exact(self, planted_model, tmp_path):
        _, _, _, model = planted_model
        path = tmp_path / "lda.json"
        model.save(path)
        loaded = TopicModel.load(path)
        assert loaded == model
        assert loaded.trained_on == model.trained_on
        # byte-identical on re-save
        loaded.save(tmp_path / "lda2.json")
        assert (tmp_path / "lda.json").read_bytes() == (tmp_path / "lda2.json").read_bytes()
