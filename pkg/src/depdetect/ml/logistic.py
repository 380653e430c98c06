"""L2-regularized logistic regression trained by full-batch gradient
descent with backtracking line search.

The learned probability is the standard sigmoid of W.x + b; the training
objective is the summed negative log-likelihood plus ||W||^2 / (2C)
(the bias is not regularized).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .base import DimensionMismatch, NonFiniteLoss, bce_from_margin, check_binary_labels, sigmoid


@dataclass
class LogisticModel:
    W: np.ndarray
    b: float
    C: float
    tol: float
    history: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"W": self.W.tolist(), "b": self.b, "C": self.C, "tol": self.tol}

    @classmethod
    def from_dict(cls, d: dict) -> "LogisticModel":
        return cls(W=np.asarray(d["W"], dtype=float), b=float(d["b"]), C=float(d["C"]), tol=float(d["tol"]))


def loss_and_grad(
    W: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, C: float
) -> tuple[float, np.ndarray, float]:
    """Objective value with its analytic gradient in (W, b)."""
    z = X @ W + b
    loss = float(bce_from_margin(z, y).sum()) + float(W @ W) / (2.0 * C)
    r = sigmoid(z) - y
    return loss, X.T @ r + W / C, float(r.sum())


def train_logistic(
    X: np.ndarray,
    y: np.ndarray,
    C: float = 10.0,
    tol: float = 1e-4,
    max_iter: int = 1000,
    seed: int = 0,
) -> LogisticModel:
    """Deterministic full-batch descent; stops when the loss improvement
    drops below tol. Each accepted step satisfies an Armijo decrease, so
    the recorded loss history is non-increasing.

    The seed is recorded for provenance only: optimization starts from
    zeros and is fully deterministic.
    """
    X = np.asarray(X, dtype=float)
    y = check_binary_labels(y)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DimensionMismatch("X must be (n, d) aligned with y")
    if not np.isfinite(X).all():
        raise ValueError("X contains non-finite values")
    n, d = X.shape
    W = np.zeros(d)
    b = 0.0
    step = 1.0 / max(1.0, float(n))
    loss, gW, gb = loss_and_grad(W, b, X, y, C)
    history = [loss]
    armijo = 1e-4
    for _ in range(max_iter):
        g_sq = float(gW @ gW) + gb * gb
        if g_sq == 0.0:
            break
        step = min(step * 2.0, 1e6)
        while True:
            W_new = W - step * gW
            b_new = b - step * gb
            loss_new, gW_new, gb_new = loss_and_grad(W_new, b_new, X, y, C)
            if np.isfinite(loss_new) and loss_new <= loss - armijo * step * g_sq:
                break
            step *= 0.5
            if step < 1e-18:
                loss_new, gW_new, gb_new = loss, gW, gb
                W_new, b_new = W, b
                break
        if not np.isfinite(loss_new):
            raise NonFiniteLoss("logistic training diverged")
        improvement = loss - loss_new
        W, b, loss, gW, gb = W_new, b_new, loss_new, gW_new, gb_new
        history.append(loss)
        if improvement < tol:
            break
    return LogisticModel(W=W, b=float(b), C=C, tol=tol, history=history)


def predict_logistic(m: LogisticModel, x: np.ndarray) -> np.ndarray | float:
    """P(label = 1); accepts a single vector or a matrix of rows."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != m.W.shape[0]:
        raise DimensionMismatch(f"expected dimension {m.W.shape[0]}, got {x.shape[-1]}")
    return sigmoid(x @ m.W + m.b)
