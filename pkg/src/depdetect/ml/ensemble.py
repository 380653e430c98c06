"""Max-vote ensemble over the three base classifiers.

The final label is the mode of the three base votes: depressed iff at
least two base models vote depressed (probability >= threshold).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boosting import GbtModel, GbtParams, predict_gbt, train_gbt
from .logistic import LogisticModel, predict_logistic, train_logistic
from .neural import MlpModel, MlpParams, predict_mlp, train_mlp

BASE_MODEL_NAMES = ("logistic", "boosted_trees", "neural_net")


@dataclass
class EnsembleModel:
    logistic: LogisticModel
    gbt: GbtModel
    mlp: MlpModel
    thresholds: tuple[float, float, float] = (0.5, 0.5, 0.5)
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "logistic": self.logistic.to_dict(),
            "gbt": self.gbt.to_dict(),
            "mlp": self.mlp.to_dict(),
            "thresholds": list(self.thresholds),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EnsembleModel":
        return cls(
            logistic=LogisticModel.from_dict(d["logistic"]),
            gbt=GbtModel.from_dict(d["gbt"]),
            mlp=MlpModel.from_dict(d["mlp"]),
            thresholds=tuple(d["thresholds"]),
            metadata=d.get("metadata", {}),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), sort_keys=True), "utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "EnsembleModel":
        return cls.from_dict(json.loads(Path(path).read_text("utf-8")))


def base_probabilities(e: EnsembleModel, x: np.ndarray) -> np.ndarray:
    """(..., 3) probabilities in BASE_MODEL_NAMES order."""
    return np.stack(
        [
            np.atleast_1d(predict_logistic(e.logistic, x)),
            np.atleast_1d(predict_gbt(e.gbt, x)),
            np.atleast_1d(predict_mlp(e.mlp, x)),
        ],
        axis=-1,
    )


def vote_majority(votes: np.ndarray) -> np.ndarray:
    """Mode of three binary votes: 1 iff at least two are 1."""
    return (np.asarray(votes).sum(axis=-1) >= 2).astype(int)


def ensemble_predict(e: EnsembleModel, x: np.ndarray) -> np.ndarray | int:
    """Majority vote over the three thresholded base predictions."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    probs = base_probabilities(e, x)
    votes = (probs >= np.asarray(e.thresholds)).astype(int)
    pred = vote_majority(votes)
    return int(pred[0]) if single else pred


def train_ensemble(
    X: np.ndarray,
    y: np.ndarray,
    logistic_kwargs: dict | None = None,
    gbt_params: GbtParams | None = None,
    mlp_params: MlpParams | None = None,
    seed: int = 0,
    X_val: np.ndarray | None = None,
    y_val: np.ndarray | None = None,
) -> EnsembleModel:
    """Train the three base models (independent, derived seeds)."""
    lr = train_logistic(X, y, seed=seed, **(logistic_kwargs or {}))
    gbt = train_gbt(X, y, params=gbt_params, seed=seed + 1)
    mlp = train_mlp(X, y, params=mlp_params, seed=seed + 2, X_val=X_val, y_val=y_val)
    return EnsembleModel(logistic=lr, gbt=gbt, mlp=mlp, metadata={"seed": seed})
