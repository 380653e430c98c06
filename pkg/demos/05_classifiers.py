"""The three from-scratch classifiers and the max-vote ensemble.

Run from the repository root:  python demos/05_classifiers.py
"""

import numpy as np

from depdetect.ml import (
    GbtParams,
    MlpParams,
    base_probabilities,
    ensemble_predict,
    predict_gbt,
    predict_logistic,
    predict_mlp,
    train_ensemble,
    train_gbt,
    train_logistic,
    train_mlp,
)

rng = np.random.default_rng(4)
X = np.vstack([rng.normal(-1.2, 1.0, (120, 6)), rng.normal(1.2, 1.0, (120, 6))])
y = np.array([0] * 120 + [1] * 120)

# ---------------------------------------------------------------------------
# Logistic regression: full-batch descent with backtracking, L2 via C.
lr = train_logistic(X, y, C=10.0, tol=1e-4)
print(f"logistic: {len(lr.history) - 1} accepted steps, "
      f"loss {lr.history[0]:.1f} -> {lr.history[-1]:.1f}, "
      f"train acc {((predict_logistic(lr, X) >= 0.5) == y).mean():.3f}")

# ---------------------------------------------------------------------------
# Boosted trees: second-order logistic loss, exact greedy splits.
gbt = train_gbt(X, y, GbtParams(rounds=30, max_depth=3, scale_pos_weight=1.0))
print(f"boosted trees: {len(gbt.trees)} trees, "
      f"train acc {((predict_gbt(gbt, X) >= 0.5) == y).mean():.3f}")

# XOR needs depth 2; a depth-1 stump ensemble cannot represent it.
XOR_X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
XOR_Y = np.array([0, 1, 1, 0])
deep = train_gbt(XOR_X, XOR_Y, GbtParams(rounds=10, max_depth=2, scale_pos_weight=1.0))
print(f"XOR at depth 2: acc {((predict_gbt(deep, XOR_X) >= 0.5) == XOR_Y).mean():.2f}")

# ---------------------------------------------------------------------------
# Neural net: dense blocks (affine -> dropout -> batch norm -> relu), Adam.
mlp = train_mlp(X, y, MlpParams(hidden=(64, 32, 16), epochs=30, dropout=0.3), seed=0)
print(f"neural net: {len(mlp.history)} epochs, final loss {mlp.history[-1]:.3f}, "
      f"train acc {((predict_mlp(mlp, X) >= 0.5) == y).mean():.3f}")

# ---------------------------------------------------------------------------
# Majority vote: depressed iff at least two of the three models say so.
ens = train_ensemble(
    X, y,
    gbt_params=GbtParams(rounds=20, max_depth=3, scale_pos_weight=1.0),
    mlp_params=MlpParams(hidden=(32, 16), epochs=20, dropout=0.3),
    seed=7,
)
probe = rng.normal(1.2, 1.0, 6)
print(f"\nbase probabilities on one sample: {np.round(base_probabilities(ens, probe)[0], 3)}")
print(f"ensemble vote: {ensemble_predict(ens, probe)}")
print(f"ensemble train acc: {(ensemble_predict(ens, X) == y).mean():.3f}")
