import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depdetect.ml.base import DimensionMismatch, sigmoid
from depdetect.ml.logistic import LogisticModel, loss_and_grad, predict_logistic, train_logistic


def blobs(n=200, margin=2.0, seed=0, d=2):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(-margin, 1.0, (n // 2, d)), rng.normal(margin, 1.0, (n // 2, d))])
    y = np.array([0] * (n // 2) + [1] * (n // 2))
    return X, y


class TestTrain:
    def test_separable_blobs(self):
        X, y = blobs()
        m = train_logistic(X, y, C=10.0, tol=1e-4)
        acc = ((predict_logistic(m, X) >= 0.5).astype(int) == y).mean()
        assert acc >= 0.99

    def test_all_zero_rows_balanced(self):
        X = np.zeros((40, 3))
        y = np.array([0, 1] * 20)
        m = train_logistic(X, y)
        assert np.allclose(predict_logistic(m, X), 0.5, atol=1e-6)
        assert np.allclose(m.W, 0.0, atol=1e-6)
        assert abs(m.b) < 1e-6

    def test_loss_history_non_increasing(self):
        X, y = blobs(seed=3)
        m = train_logistic(X, y)
        assert all(a >= b - 1e-12 for a, b in zip(m.history, m.history[1:]))

    def test_deterministic(self):
        X, y = blobs(seed=5)
        a = train_logistic(X, y)
        b = train_logistic(X, y)
        assert np.array_equal(a.W, b.W) and a.b == b.b

    def test_non_finite_input_rejected(self):
        X = np.array([[np.nan, 1.0]])
        with pytest.raises(ValueError):
            train_logistic(X, np.array([1]))

    def test_regularization_shrinks_weights(self):
        X, y = blobs(seed=7)
        loose = train_logistic(X, y, C=1000.0)
        tight = train_logistic(X, y, C=0.01)
        assert np.linalg.norm(tight.W) < np.linalg.norm(loose.W)


class TestGradientOracle:
    def test_analytic_matches_central_differences(self):
        rng = np.random.default_rng(11)
        X = rng.normal(size=(25, 6))
        y = (rng.random(25) < 0.5).astype(float)
        W = rng.normal(size=6)
        b = float(rng.normal())
        C = 10.0
        _, gW, gb = loss_and_grad(W, b, X, y, C)
        h = 1e-6
        num = np.zeros(7)
        for i in range(6):
            Wp, Wm = W.copy(), W.copy()
            Wp[i] += h
            Wm[i] -= h
            num[i] = (loss_and_grad(Wp, b, X, y, C)[0] - loss_and_grad(Wm, b, X, y, C)[0]) / (2 * h)
        num[6] = (loss_and_grad(W, b + h, X, y, C)[0] - loss_and_grad(W, b - h, X, y, C)[0]) / (2 * h)
        analytic = np.concatenate([gW, [gb]])
        rel = np.abs(analytic - num) / np.maximum(np.abs(analytic) + np.abs(num), 1e-8)
        assert rel.max() < 1e-6


class TestPredict:
    def test_zero_model_gives_half(self):
        m = LogisticModel(W=np.zeros(4), b=0.0, C=10.0, tol=1e-4)
        assert predict_logistic(m, np.ones(4)) == 0.5

    @settings(max_examples=100, deadline=None)
    @given(st.floats(min_value=-30, max_value=30))
    def test_sigmoid_symmetry(self, z):
        assert sigmoid(z) + sigmoid(-z) == pytest.approx(1.0, abs=1e-12)

    def test_monotone_along_w(self):
        m = LogisticModel(W=np.array([1.0, -2.0]), b=0.3, C=10.0, tol=1e-4)
        ts = np.linspace(-3, 3, 25)
        probs = [predict_logistic(m, t * m.W) for t in ts]
        assert all(a < b for a, b in zip(probs, probs[1:]))

    def test_dimension_mismatch(self):
        m = LogisticModel(W=np.zeros(4), b=0.0, C=10.0, tol=1e-4)
        with pytest.raises(DimensionMismatch):
            predict_logistic(m, np.zeros(5))

    def test_round_trip(self):
        X, y = blobs(seed=9)
        m = train_logistic(X, y)
        again = LogisticModel.from_dict(m.to_dict())
        assert np.array_equal(again.W, m.W) and again.b == m.b
