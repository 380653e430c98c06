"""Principal component analysis by covariance eigendecomposition.

The category feature block is 194-wide, so a dense symmetric solve is
cheap; no iterative solver is needed. Components follow a deterministic
sign convention: the largest-magnitude entry of each is positive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class DimensionMismatch(ValueError):
    pass


@dataclass
class PcaModel:
    """mean, orthonormal component rows, and per-component variances."""

    mean: np.ndarray  # (d,)
    components: np.ndarray  # (k, d), rows orthonormal
    explained_variance: np.ndarray  # (k,), non-increasing
    k: int

    @property
    def input_dim(self) -> int:
        return self.mean.shape[0]

    def save(self, path: str | Path) -> None:
        payload = {
            "mean": self.mean.tolist(),
            "components": self.components.tolist(),
            "explained_variance": self.explained_variance.tolist(),
            "k": self.k,
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True), "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "PcaModel":
        d = json.loads(Path(path).read_text("utf-8"))
        return cls(
            mean=np.asarray(d["mean"]),
            components=np.asarray(d["components"]),
            explained_variance=np.asarray(d["explained_variance"]),
            k=d["k"],
        )


def fit_pca(X: np.ndarray, k: int) -> PcaModel:
    """Top-k principal directions of X (rows = samples), descending variance.

    Fit on training rows only. Rank deficiency is tolerated: trailing
    components then span arbitrary orthonormal null directions with ~zero
    variance (their eigenvalues are clipped at 0).
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("X must be 2-D (samples x features)")
    n, d = X.shape
    if n < 2:
        raise ValueError("need at least 2 samples")
    if not 1 <= k <= d:
        raise DimensionMismatch(f"k={k} must be in [1, {d}]")
    mean = X.mean(axis=0)
    Xc = X - mean
    cov = (Xc.T @ Xc) / (n - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)  # ascending
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order][:k], 0.0, None)
    components = eigvecs[:, order][:, :k].T.copy()
    # sign convention: largest-magnitude entry of each component positive
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return PcaModel(mean=mean, components=components, explained_variance=eigvals, k=k)


def transform(m: PcaModel, x: np.ndarray) -> np.ndarray:
    """Project one vector or a matrix of rows onto the fitted components."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != m.input_dim:
        raise DimensionMismatch(f"expected dimension {m.input_dim}, got {x.shape[-1]}")
    return (x - m.mean) @ m.components.T


def reconstruction_error(m: PcaModel, X: np.ndarray) -> float:
    """Mean squared error of projecting X onto the components and back."""
    X = np.asarray(X, dtype=float)
    Z = transform(m, X)
    Xhat = Z @ m.components + m.mean
    return float(np.mean((X - Xhat) ** 2))
