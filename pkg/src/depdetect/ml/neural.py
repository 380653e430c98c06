"""Feed-forward binary classifier trained with minibatch Adam on mean
binary cross entropy.

Architecture: dense blocks (affine -> dropout -> batch norm -> relu) of
sizes 256/128/64 by default, then an affine map to one sigmoid unit.
Dropout is active only in training; batch normalization uses batch
statistics in training (they are part of the differentiated function)
and running statistics at inference, so inference is deterministic and
batch-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .base import DimensionMismatch, NonFiniteLoss, bce_from_margin, check_binary_labels, sigmoid


@dataclass
class MlpParams:
    hidden: tuple[int, ...] = (256, 128, 64)
    batch_size: int = 32
    learning_rate: float = 0.01
    dropout: float = 0.5
    epochs: int = 100
    bn_eps: float = 1e-5
    bn_momentum: float = 0.1
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    patience: int = 10


@dataclass
class MlpModel:
    params: MlpParams
    weights: list[np.ndarray]  # per block: (fan_in, out)
    biases: list[np.ndarray]
    gammas: list[np.ndarray]
    betas: list[np.ndarray]
    running_means: list[np.ndarray]
    running_vars: list[np.ndarray]
    out_weight: np.ndarray  # (last_hidden, 1)
    out_bias: float
    history: list[float] = field(default_factory=list)

    @property
    def input_dim(self) -> int:
        return self.weights[0].shape[0]

    def to_dict(self) -> dict:
        return {
            "params": {**vars(self.params), "hidden": list(self.params.hidden)},
            "weights": [w.tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
            "gammas": [g.tolist() for g in self.gammas],
            "betas": [b.tolist() for b in self.betas],
            "running_means": [m.tolist() for m in self.running_means],
            "running_vars": [v.tolist() for v in self.running_vars],
            "out_weight": self.out_weight.tolist(),
            "out_bias": self.out_bias,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MlpModel":
        p = dict(d["params"])
        p["hidden"] = tuple(p["hidden"])
        return cls(
            params=MlpParams(**p),
            weights=[np.asarray(w) for w in d["weights"]],
            biases=[np.asarray(b) for b in d["biases"]],
            gammas=[np.asarray(g) for g in d["gammas"]],
            betas=[np.asarray(b) for b in d["betas"]],
            running_means=[np.asarray(m) for m in d["running_means"]],
            running_vars=[np.asarray(v) for v in d["running_vars"]],
            out_weight=np.asarray(d["out_weight"]),
            out_bias=float(d["out_bias"]),
        )


def init_mlp(input_dim: int, params: MlpParams | None = None, seed: int = 0) -> MlpModel:
    """Symmetric uniform fan-in initialization, seeded."""
    params = params or MlpParams()
    rng = np.random.default_rng(seed)
    dims = [input_dim, *params.hidden]
    weights, biases, gammas, betas, rmeans, rvars = [], [], [], [], [], []
    for fan_in, out in zip(dims[:-1], dims[1:]):
        s = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-s, s, size=(fan_in, out)))
        biases.append(np.zeros(out))
        gammas.append(np.ones(out))
        betas.append(np.zeros(out))
        rmeans.append(np.zeros(out))
        rvars.append(np.ones(out))
    s = 1.0 / np.sqrt(dims[-1])
    return MlpModel(
        params=params,
        weights=weights,
        biases=biases,
        gammas=gammas,
        betas=betas,
        running_means=rmeans,
        running_vars=rvars,
        out_weight=rng.uniform(-s, s, size=(dims[-1], 1)),
        out_bias=0.0,
    )


def _forward_train(model: MlpModel, X: np.ndarray, masks: list[np.ndarray]):
    """Batch-statistics forward pass; returns margin and caches for backprop."""
    eps = model.params.bn_eps
    h = X
    caches = []
    for W, b, gamma, beta, mask in zip(
        model.weights, model.biases, model.gammas, model.betas, masks
    ):
        a1 = h @ W + b
        a2 = a1 * mask
        mu = a2.mean(axis=0)
        var = a2.var(axis=0)
        inv = 1.0 / np.sqrt(var + eps)
        xhat = (a2 - mu) * inv
        a3 = gamma * xhat + beta
        out = np.maximum(a3, 0.0)
        caches.append((h, mask, xhat, inv, a3, mu, var))
        h = out
    z = (h @ model.out_weight).ravel() + model.out_bias
    return z, h, caches


def _forward_infer(model: MlpModel, X: np.ndarray) -> np.ndarray:
    eps = model.params.bn_eps
    h = X
    for W, b, gamma, beta, rm, rv in zip(
        model.weights, model.biases, model.gammas, model.betas,
        model.running_means, model.running_vars,
    ):
        a1 = h @ W + b
        xhat = (a1 - rm) / np.sqrt(rv + eps)
        h = np.maximum(gamma * xhat + beta, 0.0)
    return (h @ model.out_weight).ravel() + model.out_bias


def mlp_loss(model: MlpModel, X: np.ndarray, y: np.ndarray, masks: list[np.ndarray] | None = None) -> float:
    """Mean cross entropy in training mode (batch statistics); identity
    dropout masks by default. This is the function the gradient check
    differentiates."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if masks is None:
        masks = [np.ones((X.shape[0], w.shape[1])) for w in model.weights]
    z, _, _ = _forward_train(model, X, masks)
    return float(bce_from_margin(z, y).mean())


def mlp_grads(
    model: MlpModel, X: np.ndarray, y: np.ndarray, masks: list[np.ndarray] | None = None
) -> dict:
    """Analytic gradients of mlp_loss for every parameter array."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = X.shape[0]
    if masks is None:
        masks = [np.ones((n, w.shape[1])) for w in model.weights]
    z, h_last, caches = _forward_train(model, X, masks)
    return _backward(model, z, h_last, caches, y)


def _backward(model: MlpModel, z, h_last, caches, y) -> dict:
    n = y.shape[0]
    dz = (sigmoid(z) - y)[:, None] / n
    g = {
        "out_weight": h_last.T @ dz,
        "out_bias": float(dz.sum()),
        "weights": [None] * len(model.weights),
        "biases": [None] * len(model.weights),
        "gammas": [None] * len(model.weights),
        "betas": [None] * len(model.weights),
    }
    dh = dz @ model.out_weight.T
    for i in range(len(model.weights) - 1, -1, -1):
        h_in, mask, xhat, inv, a3, _, _ = caches[i]
        da3 = dh * (a3 > 0)
        g["gammas"][i] = (da3 * xhat).sum(axis=0)
        g["betas"][i] = da3.sum(axis=0)
        dxhat = da3 * model.gammas[i]
        m = float(xhat.shape[0])
        da2 = (inv / m) * (m * dxhat - dxhat.sum(axis=0) - xhat * (dxhat * xhat).sum(axis=0))
        da1 = da2 * mask
        g["weights"][i] = h_in.T @ da1
        g["biases"][i] = da1.sum(axis=0)
        dh = da1 @ model.weights[i].T
    return g


def _adam_state(model: MlpModel) -> dict:
    zeros = lambda arr: np.zeros_like(np.asarray(arr, dtype=float))  # noqa: E731
    return {
        "m": {
            "weights": [zeros(w) for w in model.weights],
            "biases": [zeros(b) for b in model.biases],
            "gammas": [zeros(gm) for gm in model.gammas],
            "betas": [zeros(bt) for bt in model.betas],
            "out_weight": zeros(model.out_weight),
            "out_bias": 0.0,
        },
        "v": {
            "weights": [zeros(w) for w in model.weights],
            "biases": [zeros(b) for b in model.biases],
            "gammas": [zeros(gm) for gm in model.gammas],
            "betas": [zeros(bt) for bt in model.betas],
            "out_weight": zeros(model.out_weight),
            "out_bias": 0.0,
        },
        "t": 0,
    }


def _adam_step(model: MlpModel, grads: dict, state: dict, p: MlpParams) -> None:
    state["t"] += 1
    t = state["t"]
    b1, b2, eps, lr = p.adam_beta1, p.adam_beta2, p.adam_eps, p.learning_rate
    corr1 = 1.0 - b1**t
    corr2 = 1.0 - b2**t

    def update(param, grad, m, v):
        m *= b1
        m += (1 - b1) * grad
        v *= b2
        v += (1 - b2) * grad * grad
        param -= lr * (m / corr1) / (np.sqrt(v / corr2) + eps)

    for key in ("weights", "biases", "gammas", "betas"):
        arrays = getattr(model, key)
        for i, arr in enumerate(arrays):
            update(arr, grads[key][i], state["m"][key][i], state["v"][key][i])
    update(model.out_weight, grads["out_weight"], state["m"]["out_weight"], state["v"]["out_weight"])
    # scalar bias handled separately
    m0 = state["m"]["out_bias"] = b1 * state["m"]["out_bias"] + (1 - b1) * grads["out_bias"]
    v0 = state["v"]["out_bias"] = b2 * state["v"]["out_bias"] + (1 - b2) * grads["out_bias"] ** 2
    model.out_bias -= lr * (m0 / corr1) / (np.sqrt(v0 / corr2) + eps)


def _snapshot(model: MlpModel) -> dict:
    return {
        "weights": [w.copy() for w in model.weights],
        "biases": [b.copy() for b in model.biases],
        "gammas": [g.copy() for g in model.gammas],
        "betas": [b.copy() for b in model.betas],
        "running_means": [m.copy() for m in model.running_means],
        "running_vars": [v.copy() for v in model.running_vars],
        "out_weight": model.out_weight.copy(),
        "out_bias": model.out_bias,
    }


def _restore(model: MlpModel, snap: dict) -> None:
    model.weights = snap["weights"]
    model.biases = snap["biases"]
    model.gammas = snap["gammas"]
    model.betas = snap["betas"]
    model.running_means = snap["running_means"]
    model.running_vars = snap["running_vars"]
    model.out_weight = snap["out_weight"]
    model.out_bias = snap["out_bias"]


def train_mlp(
    X: np.ndarray,
    y: np.ndarray,
    params: MlpParams | None = None,
    seed: int = 0,
    X_val: np.ndarray | None = None,
    y_val: np.ndarray | None = None,
) -> MlpModel:
    """Minibatch Adam on mean cross entropy, deterministic given the seed.

    When a validation split is supplied, training stops after ``patience``
    epochs without validation improvement and the best-epoch parameters
    are restored.
    """
    params = params or MlpParams()
    X = np.asarray(X, dtype=float)
    y = check_binary_labels(y)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DimensionMismatch("X must be (n, d) aligned with y")
    n = X.shape[0]
    model = init_mlp(X.shape[1], params, seed=seed)
    rng = np.random.default_rng(seed + 1)
    state = _adam_state(model)
    mom = params.bn_momentum
    best_val = np.inf
    best_snap = None
    stale = 0
    for _ in range(params.epochs):
        perm = rng.permutation(n)
        epoch_losses = []
        for start in range(0, n, params.batch_size):
            batch = perm[start : start + params.batch_size]
            Xb, yb = X[batch], y[batch]
            if params.dropout > 0.0:
                masks = [
                    (rng.random((Xb.shape[0], w.shape[1])) >= params.dropout)
                    / (1.0 - params.dropout)
                    for w in model.weights
                ]
            else:
                masks = [np.ones((Xb.shape[0], w.shape[1])) for w in model.weights]
            z, h_last, caches = _forward_train(model, Xb, masks)
            loss = float(bce_from_margin(z, yb).mean())
            if not np.isfinite(loss):
                raise NonFiniteLoss("mlp training diverged")
            epoch_losses.append(loss)
            grads = _backward(model, z, h_last, caches, yb)
            _adam_step(model, grads, state, params)
            for i, (_, _, _, _, _, mu, var) in enumerate(caches):
                model.running_means[i] = (1 - mom) * model.running_means[i] + mom * mu
                model.running_vars[i] = (1 - mom) * model.running_vars[i] + mom * var
        model.history.append(float(np.mean(epoch_losses)))
        if X_val is not None and y_val is not None and len(y_val):
            val_z = _forward_infer(model, np.asarray(X_val, dtype=float))
            val_loss = float(bce_from_margin(val_z, np.asarray(y_val, dtype=float)).mean())
            if val_loss < best_val - 1e-12:
                best_val = val_loss
                best_snap = _snapshot(model)
                stale = 0
            else:
                stale += 1
                if stale >= params.patience:
                    break
    if best_snap is not None:
        _restore(model, best_snap)
    return model


def predict_mlp(m: MlpModel, x: np.ndarray) -> np.ndarray | float:
    """Inference-mode probability: dropout off, running batch-norm stats."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != m.input_dim:
        raise DimensionMismatch(f"expected dimension {m.input_dim}, got {x.shape[-1]}")
    single = x.ndim == 1
    rows = x[None, :] if single else x
    p = sigmoid(_forward_infer(m, rows))
    return float(p[0]) if single else p


def _param_arrays(model: MlpModel) -> list[np.ndarray]:
    """Every trainable array in a fixed order (out_bias handled as 1-vector)."""
    arrays: list[np.ndarray] = []
    for key in ("weights", "biases", "gammas", "betas"):
        arrays.extend(getattr(model, key))
    arrays.append(model.out_weight)
    return arrays


def flat_params(model: MlpModel) -> np.ndarray:
    """All trainable parameters as one flat vector (for gradient checking)."""
    return np.concatenate([a.ravel() for a in _param_arrays(model)] + [[model.out_bias]])


def set_flat_params(model: MlpModel, vec: np.ndarray) -> None:
    """Inverse of flat_params; writes the vector back into the model."""
    pos = 0
    for arr in _param_arrays(model):
        arr.flat[:] = vec[pos : pos + arr.size]
        pos += arr.size
    model.out_bias = float(vec[pos])


def flat_grads(grads: dict, model: MlpModel) -> np.ndarray:
    """Gradient dict from mlp_grads flattened in flat_params order."""
    pieces = []
    for key in ("weights", "biases", "gammas", "betas"):
        pieces.extend(np.asarray(g).ravel() for g in grads[key])
    pieces.append(np.asarray(grads["out_weight"]).ravel())
    pieces.append(np.asarray([grads["out_bias"]]))
    return np.concatenate(pieces)
