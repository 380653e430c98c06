"""From-scratch classifiers and the max-vote ensemble."""

from .base import DimensionMismatch, NonFiniteLoss, sigmoid
from .boosting import GbtModel, GbtParams, predict_gbt, train_gbt
from .ensemble import (
    BASE_MODEL_NAMES,
    EnsembleModel,
    base_probabilities,
    ensemble_predict,
    train_ensemble,
    vote_majority,
)
from .logistic import LogisticModel, predict_logistic, train_logistic
from .neural import MlpModel, MlpParams, predict_mlp, train_mlp

__all__ = [
    "BASE_MODEL_NAMES",
    "DimensionMismatch",
    "EnsembleModel",
    "GbtModel",
    "GbtParams",
    "LogisticModel",
    "MlpModel",
    "MlpParams",
    "NonFiniteLoss",
    "base_probabilities",
    "ensemble_predict",
    "predict_gbt",
    "predict_logistic",
    "predict_mlp",
    "sigmoid",
    "train_ensemble",
    "train_gbt",
    "train_logistic",
    "train_mlp",
    "vote_majority",
]
