"""Gradient-boosted regression trees on second-order logistic loss.

Each round fits one tree to the gradient/hessian statistics of the
weighted logistic loss (positive samples scaled by scale_pos_weight).
Splits are exact greedy over all features and midpoint thresholds,
scored by the usual gain
    0.5 * (GL^2/(HL+lambda) + GR^2/(HR+lambda) - G^2/(H+lambda)),
and kept only when that gain reaches gamma. A round whose tree cannot
split at the root ends training, which keeps gamma=inf a constant model
at base_score.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .base import DimensionMismatch, bce_from_margin, check_binary_labels, sigmoid


@dataclass
class TreeNode:
    feature: int = -1
    threshold: float = 0.0
    gain: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    leaf_weight: float | None = None

    @property
    def is_leaf(self) -> bool:
        return self.leaf_weight is not None

    def predict_one(self, x: np.ndarray) -> float:
        node = self
        while not node.is_leaf:
            node = node.left if x[node.feature] < node.threshold else node.right
        return node.leaf_weight

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"leaf": self.leaf_weight}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "gain": self.gain,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TreeNode":
        if "leaf" in d:
            return cls(leaf_weight=float(d["leaf"]))
        return cls(
            feature=int(d["feature"]),
            threshold=float(d["threshold"]),
            gain=float(d["gain"]),
            left=cls.from_dict(d["left"]),
            right=cls.from_dict(d["right"]),
        )


@dataclass
class GbtParams:
    rounds: int = 200
    max_depth: int = 8
    learning_rate: float = 0.2
    gamma: float = 0.0
    reg_lambda: float = 0.0
    scale_pos_weight: float = 5.0
    early_stop_rounds: int = 10
    early_stop_tol: float = 1e-6


@dataclass
class GbtModel:
    trees: list[TreeNode]
    params: GbtParams
    base_score: float
    n_features: int
    history: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "trees": [t.to_dict() for t in self.trees],
            "params": vars(self.params).copy(),
            "base_score": self.base_score,
            "n_features": self.n_features,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GbtModel":
        return cls(
            trees=[TreeNode.from_dict(t) for t in d["trees"]],
            params=GbtParams(**d["params"]),
            base_score=float(d["base_score"]),
            n_features=int(d["n_features"]),
        )


def _leaf_weight(G: float, H: float, reg_lambda: float) -> float:
    denom = H + reg_lambda
    if denom <= 0:
        return 0.0
    return -G / denom


def _score(G: float, H: float, reg_lambda: float) -> float:
    denom = H + reg_lambda
    if denom <= 0:
        return 0.0
    return G * G / denom


def _scores(G: np.ndarray, H: np.ndarray, reg_lambda: float) -> np.ndarray:
    denom = H + reg_lambda
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 0, G * G / denom, 0.0)
    return s


def _best_split(Xn: np.ndarray, gs: np.ndarray, hs: np.ndarray, reg_lambda: float):
    """Exact greedy search over one node's rows; (gain, feature, threshold).

    Ties keep the first candidate in (feature, threshold) order, so the
    result is deterministic for a fixed input order.
    """
    G = float(gs.sum())
    H = float(hs.sum())
    parent = _score(G, H, reg_lambda)
    best = None
    for f in range(Xn.shape[1]):
        vals = Xn[:, f]
        order = np.argsort(vals, kind="stable")
        sv = vals[order]
        if sv[0] == sv[-1]:
            continue
        valid = sv[:-1] != sv[1:]
        GL = np.cumsum(gs[order])[:-1][valid]
        HL = np.cumsum(hs[order])[:-1][valid]
        gains = 0.5 * (
            _scores(GL, HL, reg_lambda) + _scores(G - GL, H - HL, reg_lambda) - parent
        )
        i = int(np.argmax(gains))
        if best is None or gains[i] > best[0]:
            mids = (sv[:-1][valid] + sv[1:][valid]) / 2.0
            best = (float(gains[i]), f, float(mids[i]))
    return best


def _build_tree(
    Xn: np.ndarray,
    gs: np.ndarray,
    hs: np.ndarray,
    depth: int,
    params: GbtParams,
) -> TreeNode:
    G = float(gs.sum())
    H = float(hs.sum())
    if depth >= params.max_depth:
        return TreeNode(leaf_weight=_leaf_weight(G, H, params.reg_lambda))
    if np.ptp(gs) == 0.0 and np.ptp(hs) == 0.0:
        # gradient-pure node: any split is a zero-gain no-op
        return TreeNode(leaf_weight=_leaf_weight(G, H, params.reg_lambda))
    best = _best_split(Xn, gs, hs, params.reg_lambda)
    if best is None or best[0] < params.gamma:
        return TreeNode(leaf_weight=_leaf_weight(G, H, params.reg_lambda))
    gain, f, thr = best
    mask = Xn[:, f] < thr
    left = _build_tree(Xn[mask], gs[mask], hs[mask], depth + 1, params)
    right = _build_tree(Xn[~mask], gs[~mask], hs[~mask], depth + 1, params)
    return TreeNode(feature=f, threshold=thr, gain=gain, left=left, right=right)


def train_gbt(
    X: np.ndarray,
    y: np.ndarray,
    params: GbtParams | None = None,
    seed: int = 0,
) -> GbtModel:
    """Boost trees on the weighted logistic loss until the round budget or
    early stopping (loss improvement below early_stop_tol across
    early_stop_rounds rounds) is hit.

    Exact greedy splitting over a fixed input order is already
    deterministic; the seed is recorded for provenance.
    """
    params = params or GbtParams()
    X = np.asarray(X, dtype=float)
    y = check_binary_labels(y)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DimensionMismatch("X must be (n, d) aligned with y")
    n = X.shape[0]
    w = np.where(y == 1.0, params.scale_pos_weight, 1.0)
    pos_rate = float(np.clip(y.mean(), 1e-6, 1.0 - 1e-6))
    base_score = float(np.log(pos_rate / (1.0 - pos_rate)))
    margin = np.full(n, base_score)
    trees: list[TreeNode] = []
    history = [float((w * bce_from_margin(margin, y)).sum())]
    for _ in range(params.rounds):
        p = sigmoid(margin)
        g = w * (p - y)
        h = w * p * (1.0 - p)
        tree = _build_tree(X, g, h, 0, params)
        if tree.is_leaf:
            break  # no split clears gamma; later rounds would not either
        trees.append(tree)
        margin = margin + params.learning_rate * np.array([tree.predict_one(x) for x in X])
        history.append(float((w * bce_from_margin(margin, y)).sum()))
        k = params.early_stop_rounds
        if len(history) > k and history[-1 - k] - history[-1] < params.early_stop_tol:
            break
    return GbtModel(trees=trees, params=params, base_score=base_score, n_features=X.shape[1], history=history)


def predict_gbt(m: GbtModel, x: np.ndarray) -> np.ndarray | float:
    """sigmoid(base_score + learning_rate * sum of leaf weights)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != m.n_features:
        raise DimensionMismatch(f"expected dimension {m.n_features}, got {x.shape[-1]}")
    single = x.ndim == 1
    rows = x[None, :] if single else x
    margin = np.full(rows.shape[0], m.base_score)
    for tree in m.trees:
        margin += m.params.learning_rate * np.array([tree.predict_one(r) for r in rows])
    p = sigmoid(margin)
    return float(p[0]) if single else p
