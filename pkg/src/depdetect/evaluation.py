"""Confusion metrics, stratified splitting, the cross-validated experiment
harness, grid search, and the leave-one-out modality ablation suite.

Per fold, every fitted artifact (topic model, PCA, activity scaling,
classifiers) is trained on the training rows only. Stateless per-user
features (lexicon scores, visual means, activity counts) are computed once
and shared across folds.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .corpus import LabeledDataset, clean_text, filter_non_english, filter_tweets
from .features import (
    FeatureLayout,
    ablate,
    apply_standardization,
    default_layout,
    standardize_segments,
    tweet_text_vectors,
    user_feature,
    visual_feature,
)
from .lexicons import (
    CategoryLexicon,
    EmojiSentimentTable,
    EmotionLexicon,
    split_depression,
)
from .ml import (
    BASE_MODEL_NAMES,
    GbtParams,
    MlpParams,
    base_probabilities,
    train_ensemble,
    train_gbt,
    train_logistic,
    train_mlp,
    predict_gbt,
    predict_logistic,
    predict_mlp,
    vote_majority,
)
from .pca import fit_pca, transform
from .topics import doc_topic_dist, fit_lda
from .webcontext import UrlTitleCache, augment_dataset

ENSEMBLE_NAME = "ensemble"
ALL_MODALITIES = "vtedu"


class LengthMismatch(ValueError):
    pass


class NonBinaryLabel(ValueError):
    pass


class EmptyPopulation(ValueError):
    pass


class SingleClass(ValueError):
    pass


class FoldTooSmall(ValueError):
    pass


class EmptyGrid(ValueError):
    pass


@dataclass
class ConfusionCounts:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def population(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def add(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + other.tp, self.tn + other.tn, self.fp + other.fp, self.fn + other.fn
        )

    def to_dict(self) -> dict:
        return asdict(self)


def confusion(y_true, y_pred) -> ConfusionCounts:
    """Counts with 'positive' meaning the depressed label 1."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise LengthMismatch(f"{y_true.shape} vs {y_pred.shape}")
    for arr in (y_true, y_pred):
        if not np.isin(arr, (0, 1)).all():
            raise NonBinaryLabel("labels/predictions must be 0 or 1")
    tp = int(((y_true == 1) & (y_pred == 1)).sum())
    tn = int(((y_true == 0) & (y_pred == 0)).sum())
    fp = int(((y_true == 0) & (y_pred == 1)).sum())
    fn = int(((y_true == 1) & (y_pred == 0)).sum())
    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def metrics(c: ConfusionCounts) -> dict:
    """Accuracy, precision, recall, f1 from the counts.

    A zero denominator reports 0 and sets the degenerate flag; f1 is 0
    when precision + recall is 0.
    """
    if c.population == 0:
        raise EmptyPopulation("no evaluated samples")
    degenerate = False
    accuracy = (c.tp + c.tn) / c.population
    if c.tp + c.fp == 0:
        precision, degenerate = 0.0, True
    else:
        precision = c.tp / (c.tp + c.fp)
    if c.tp + c.fn == 0:
        recall, degenerate = 0.0, True
    else:
        recall = c.tp / (c.tp + c.fn)
    if precision + recall == 0.0:
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return {
        "accuracy": accuracy,
        "precision": precision,
        "recall": recall,
        "f1": f1,
        "degenerate": degenerate,
    }


@dataclass(frozen=True)
class Holdout:
    frac: float = 0.2


@dataclass(frozen=True)
class KFold:
    k: int = 5


@dataclass(frozen=True)
class Resub:
    """Train and evaluate on the full dataset (capability checks only)."""


SplitScheme = Holdout | KFold | Resub


def split(labels, scheme: SplitScheme, seed: int = 0) -> list[tuple[np.ndarray, np.ndarray]]:
    """Stratified (train_idx, test_idx) pairs, deterministic given the seed.

    Class proportions are preserved per fold within one sample. Accepts a
    LabeledDataset or a label sequence.
    """
    if isinstance(labels, LabeledDataset):
        labels = labels.labels()
    y = np.asarray(labels)
    classes = np.unique(y)
    if len(classes) < 2:
        raise SingleClass("both classes must be present")
    rng = np.random.default_rng(seed)
    per_class = {c: rng.permutation(np.flatnonzero(y == c)) for c in classes}

    if isinstance(scheme, Resub):
        idx = np.arange(len(y))
        return [(idx, idx)]

    if isinstance(scheme, Holdout):
        train, test = [], []
        for c in classes:
            idx = per_class[c]
            n_test = int(round(scheme.frac * len(idx)))
            if n_test < 1 or n_test >= len(idx):
                raise FoldTooSmall(f"class {c}: holdout({scheme.frac}) leaves an empty side")
            test.append(idx[:n_test])
            train.append(idx[n_test:])
        return [(np.sort(np.concatenate(train)), np.sort(np.concatenate(test)))]

    if isinstance(scheme, KFold):
        k = scheme.k
        if k < 2:
            raise FoldTooSmall("kfold needs k >= 2")
        for c in classes:
            if len(per_class[c]) < k:
                raise FoldTooSmall(f"class {c} has fewer than k={k} members")
        # deal each class round-robin so fold class counts differ by <= 1
        fold_members: list[list[int]] = [[] for _ in range(k)]
        for c in classes:
            for j, idx in enumerate(per_class[c]):
                fold_members[j % k].append(int(idx))
        folds = []
        all_idx = np.arange(len(y))
        for f in range(k):
            test = np.sort(np.asarray(fold_members[f], dtype=int))
            train = np.setdiff1d(all_idx, test)
            folds.append((train, test))
        return folds

    raise TypeError(f"unknown scheme {scheme!r}")


@dataclass
class ExperimentConfig:
    """Everything a cross-validated run depends on, fingerprintable."""

    seed: int = 0
    scheme: SplitScheme = field(default_factory=KFold)
    topics: int = 15
    lda_alpha: float | None = None  # default 50/T
    lda_eta: float = 0.01
    lda_iterations: int = 500
    fold_iterations: int = 50
    lda_depressed_only: bool = True
    pca_k: int = 90
    visual_dim: int = 128
    logistic_C: float = 10.0
    logistic_tol: float = 1e-4
    logistic_max_iter: int = 1000
    gbt: GbtParams = field(default_factory=GbtParams)
    mlp: MlpParams = field(default_factory=MlpParams)
    standardize_activity: bool = True
    normalize_counts: bool = True
    mlp_val_fraction: float = 0.15
    drop_modalities: frozenset[str] = frozenset()

    def fingerprint(self) -> str:
        blob = json.dumps(asdict_with_types(self), sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


def asdict_with_types(cfg: ExperimentConfig) -> dict:
    d = {}
    for k, v in vars(cfg).items():
        if isinstance(v, (GbtParams, MlpParams)):
            inner = {kk: list(vv) if isinstance(vv, tuple) else vv for kk, vv in vars(v).items()}
            d[k] = {"__type__": type(v).__name__, **inner}
        elif isinstance(v, (Holdout, KFold, Resub)):
            d[k] = {"__type__": type(v).__name__, **vars(v)}
        elif isinstance(v, frozenset):
            d[k] = sorted(v)
        else:
            d[k] = v
    return d


@dataclass
class Lexicons:
    """The three static dictionaries used by featurization."""

    emotions: EmotionLexicon
    emoji: EmojiSentimentTable
    categories: CategoryLexicon


def prepare_dataset(
    ds: LabeledDataset,
    cache: UrlTitleCache | None = None,
    stopwords: frozenset[str] = frozenset(),
    min_words: int = 5,
    english_only: bool = True,
) -> LabeledDataset:
    """Augment (cache-only), language-filter, clean, and length-filter."""
    if english_only:
        ds = filter_non_english(ds)
    if cache is not None:
        ds = augment_dataset(ds, cache)
    users = tuple(
        replace(
            u,
            tweets=tuple(replace(t, text=clean_text(t.text, stopwords)) for t in u.tweets),
        )
        for u in ds.users
    )
    return filter_tweets(replace(ds, users=users), min_words=min_words)


@dataclass
class _UserStatics:
    """Fold-independent per-user pieces."""

    emotion: np.ndarray
    emoji: np.ndarray
    categories_mean: np.ndarray | None  # None for users without tweets
    tokens: list[str]
    visual: np.ndarray
    activity: np.ndarray
    description_emotion: np.ndarray


def _compute_statics(ds: LabeledDataset, lex: Lexicons, cfg: ExperimentConfig) -> list[_UserStatics]:
    out = []
    for u in ds.users:
        uf = user_feature(u, lex.emotions)
        if u.tweets:
            per_tweet = [
                tweet_text_vectors(
                    t.text, lex.emotions, lex.emoji, lex.categories, cfg.normalize_counts
                )
                for t in u.tweets
            ]
            emotion = np.mean([v["emotion"] for v in per_tweet], axis=0)
            emoji_v = np.mean([v["emoji"] for v in per_tweet], axis=0)
            cats = np.mean([v["categories"] for v in per_tweet], axis=0)
            tokens = [tok for t in u.tweets for tok in t.text.split()]
        else:
            emotion = np.zeros(10)
            emoji_v = np.zeros(3)
            cats = None
            tokens = []
        out.append(
            _UserStatics(
                emotion=emotion,
                emoji=emoji_v,
                categories_mean=cats,
                tokens=tokens,
                visual=visual_feature(u, cfg.visual_dim),
                activity=uf[:5],
                description_emotion=uf[5:],
            )
        )
    return out


def _fit_fold_models(statics, y, train_idx, n_categories: int, cfg: ExperimentConfig):
    """Fit the topic model and PCA on training rows only."""
    if cfg.lda_depressed_only:
        docs = [statics[i].tokens for i in train_idx if y[i] == 1 and statics[i].tokens]
    else:
        docs = [statics[i].tokens for i in train_idx if statics[i].tokens]
    topic_model = fit_lda(
        docs,
        T=cfg.topics,
        alpha=cfg.lda_alpha,
        eta=cfg.lda_eta,
        iterations=cfg.lda_iterations,
        seed=cfg.seed,
    )
    cat_rows = np.vstack(
        [
            statics[i].categories_mean[:-1]
            if statics[i].categories_mean is not None
            else np.zeros(n_categories - 1)
            for i in train_idx
        ]
    )
    pca_model = fit_pca(cat_rows, cfg.pca_k)
    return topic_model, pca_model


def _build_rows(statics, idx_list, topic_model, pca_model, cfg: ExperimentConfig) -> np.ndarray:
    rows = []
    for i in idx_list:
        s = statics[i]
        if s.tokens:
            topic = doc_topic_dist(topic_model, s.tokens, cfg.fold_iterations, seed=cfg.seed)
        else:
            topic = np.full(cfg.topics, 1.0 / cfg.topics)
        if s.categories_mean is not None:
            general, dep = split_depression(s.categories_mean)
            lex_pca = transform(pca_model, general)
        else:
            lex_pca = np.zeros(cfg.pca_k)
            dep = 0.0
        rows.append(
            np.concatenate(
                [s.visual, topic, s.emotion, s.emoji, lex_pca, [dep], s.activity, s.description_emotion]
            )
        )
    return np.vstack(rows)


def featurize_dataset(
    ds: LabeledDataset, lex: Lexicons, cfg: ExperimentConfig, train_idx: np.ndarray
) -> dict:
    """One full feature matrix with models fitted on the given training rows.

    Returns X (every user, standardized with training statistics), the
    layout, the fitted topic/PCA models, and the standardization vectors.
    """
    y = np.asarray(ds.labels())
    statics = _compute_statics(ds, lex, cfg)
    layout = default_layout(cfg.visual_dim, cfg.topics, cfg.pca_k)
    topic_model, pca_model = _fit_fold_models(statics, y, train_idx, len(lex.categories), cfg)
    X = _build_rows(statics, np.arange(len(y)), topic_model, pca_model, cfg)
    if cfg.standardize_activity:
        mean, std = standardize_segments(X[train_idx], layout, ("user_activity",))
        X = apply_standardization(X, mean, std)
    else:
        mean, std = np.zeros(layout.total), np.ones(layout.total)
    return {
        "X": X,
        "y": y,
        "layout": layout,
        "topic_model": topic_model,
        "pca_model": pca_model,
        "std_mean": mean,
        "std_std": std,
    }


def _fold_matrices(
    ds: LabeledDataset, lex: Lexicons, cfg: ExperimentConfig
) -> tuple[list[dict], FeatureLayout]:
    """Per-fold standardized train/test matrices with leakage-free fits."""
    y = np.asarray(ds.labels())
    folds = split(y, cfg.scheme, seed=cfg.seed)
    statics = _compute_statics(ds, lex, cfg)
    layout = default_layout(cfg.visual_dim, cfg.topics, cfg.pca_k)
    results = []
    for train_idx, test_idx in folds:
        topic_model, pca_model = _fit_fold_models(statics, y, train_idx, len(lex.categories), cfg)
        X_train = _build_rows(statics, train_idx, topic_model, pca_model, cfg)
        X_test = _build_rows(statics, test_idx, topic_model, pca_model, cfg)
        if cfg.standardize_activity:
            mean, std = standardize_segments(X_train, layout, ("user_activity",))
            X_train = apply_standardization(X_train, mean, std)
            X_test = apply_standardization(X_test, mean, std)
        results.append(
            {
                "train_idx": train_idx,
                "test_idx": test_idx,
                "X_train": X_train,
                "y_train": y[train_idx],
                "X_test": X_test,
                "y_test": y[test_idx],
            }
        )
    return results, layout


def carve_validation(y_train: np.ndarray, frac: float, seed: int):
    """Stratified (fit_idx, val_idx) inside a training fold; val may be empty."""
    if frac <= 0.0:
        return np.arange(len(y_train)), np.array([], dtype=int)
    rng = np.random.default_rng(seed)
    val = []
    for c in np.unique(y_train):
        idx = rng.permutation(np.flatnonzero(y_train == c))
        n_val = max(1, int(round(frac * len(idx))))
        if n_val >= len(idx):
            continue
        val.extend(idx[:n_val].tolist())
    val = np.sort(np.asarray(val, dtype=int))
    fit = np.setdiff1d(np.arange(len(y_train)), val)
    return fit, val


def _evaluate_folds(
    fold_data: list[dict], cfg: ExperimentConfig, drop: frozenset[str], layout: FeatureLayout
) -> dict:
    """Train and score all models on (possibly ablated) fold matrices."""
    names = list(BASE_MODEL_NAMES) + [ENSEMBLE_NAME]
    per_model = {name: {"fold_metrics": [], "counts": ConfusionCounts()} for name in names}
    for fold in fold_data:
        X_train, y_train = fold["X_train"], fold["y_train"]
        X_test, y_test = fold["X_test"], fold["y_test"]
        if drop:
            X_train, _ = ablate(X_train, layout, set(drop))
            X_test, _ = ablate(X_test, layout, set(drop))
        fit_idx, val_idx = carve_validation(y_train, cfg.mlp_val_fraction, cfg.seed + 17)
        ens = train_ensemble(
            X_train[fit_idx],
            y_train[fit_idx],
            logistic_kwargs={
                "C": cfg.logistic_C,
                "tol": cfg.logistic_tol,
                "max_iter": cfg.logistic_max_iter,
            },
            gbt_params=cfg.gbt,
            mlp_params=cfg.mlp,
            seed=cfg.seed,
            X_val=X_train[val_idx] if len(val_idx) else None,
            y_val=y_train[val_idx] if len(val_idx) else None,
        )
        probs = base_probabilities(ens, X_test)
        votes = (probs >= np.asarray(ens.thresholds)).astype(int)
        preds = {
            "logistic": votes[:, 0],
            "boosted_trees": votes[:, 1],
            "neural_net": votes[:, 2],
            ENSEMBLE_NAME: vote_majority(votes),
        }
        for name in names:
            c = confusion(y_test, preds[name])
            per_model[name]["counts"] = per_model[name]["counts"].add(c)
            per_model[name]["fold_metrics"].append(metrics(c))
    for name in names:
        fm = per_model[name]["fold_metrics"]
        per_model[name]["mean_metrics"] = {
            k: float(np.mean([m[k] for m in fm])) for k in ("accuracy", "precision", "recall", "f1")
        }
    return per_model


@dataclass
class EvalReport:
    """Per-model confusion counts and metrics, per fold and averaged."""

    models: dict
    seed: int
    n_folds: int
    config_fingerprint: str
    ablation_rows: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "seed": self.seed,
            "n_folds": self.n_folds,
            "config_fingerprint": self.config_fingerprint,
            "models": {},
            "ablation": self.ablation_rows,
        }
        for name, r in self.models.items():
            out["models"][name] = {
                "counts": r["counts"].to_dict(),
                "fold_metrics": r["fold_metrics"],
                "mean_metrics": r["mean_metrics"],
            }
        return out

    def format_table(self) -> str:
        """Aligned text table, metrics as percentages with one decimal."""
        lines = [
            f"{'model':<24}{'precision':>10}{'recall':>10}{'f1':>10}{'accuracy':>10}",
        ]
        for name, r in self.models.items():
            m = r["mean_metrics"]
            lines.append(
                f"{name:<24}"
                f"{100 * m['precision']:>9.1f}%"
                f"{100 * m['recall']:>9.1f}%"
                f"{100 * m['f1']:>9.1f}%"
                f"{100 * m['accuracy']:>9.1f}%"
            )
        if self.ablation_rows:
            lines.append("")
            lines.append(f"{'variant':<24}{'precision':>10}{'recall':>10}{'f1':>10}{'accuracy':>10}")
            for row in self.ablation_rows:
                m = row["mean_metrics"]
                lines.append(
                    f"{row['label']:<24}"
                    f"{100 * m['precision']:>9.1f}%"
                    f"{100 * m['recall']:>9.1f}%"
                    f"{100 * m['f1']:>9.1f}%"
                    f"{100 * m['accuracy']:>9.1f}%"
                )
        return "\n".join(lines)


def run_experiment(ds: LabeledDataset, lex: Lexicons, cfg: ExperimentConfig) -> EvalReport:
    """Cross-validated evaluation of the three base models and the ensemble."""
    fold_data, layout = _fold_matrices(ds, lex, cfg)
    per_model = _evaluate_folds(fold_data, cfg, cfg.drop_modalities, layout)
    return EvalReport(
        models=per_model,
        seed=cfg.seed,
        n_folds=len(fold_data),
        config_fingerprint=cfg.fingerprint(),
    )


def ablation_letters_label(kept: str) -> str:
    return "+".join(kept)


def ablation_suite(ds: LabeledDataset, lex: Lexicons, cfg: ExperimentConfig) -> EvalReport:
    """Five leave-one-out variants plus the full model (six rows).

    All variants reuse the same per-fold matrices and classifier seeds, so
    the full row is exactly run_experiment's result.
    """
    fold_data, layout = _fold_matrices(ds, lex, cfg)
    rows = []
    full = _evaluate_folds(fold_data, cfg, frozenset(), layout)
    for dropped in ALL_MODALITIES:
        kept = "".join(m for m in ALL_MODALITIES if m != dropped)
        per_model = _evaluate_folds(fold_data, cfg, frozenset(dropped), layout)
        rows.append(
            {
                "label": ablation_letters_label(kept),
                "dropped": dropped,
                "mean_metrics": per_model[ENSEMBLE_NAME]["mean_metrics"],
                "counts": per_model[ENSEMBLE_NAME]["counts"].to_dict(),
            }
        )
    rows.append(
        {
            "label": ablation_letters_label(ALL_MODALITIES),
            "dropped": "",
            "mean_metrics": full[ENSEMBLE_NAME]["mean_metrics"],
            "counts": full[ENSEMBLE_NAME]["counts"].to_dict(),
        }
    )
    return EvalReport(
        models=full,
        seed=cfg.seed,
        n_folds=len(fold_data),
        config_fingerprint=cfg.fingerprint(),
        ablation_rows=rows,
    )


def _grid_points(param_grid: dict) -> list[dict]:
    keys = sorted(param_grid)
    for k in keys:
        if not param_grid[k]:
            raise EmptyGrid(f"parameter {k!r} has no values")
    combos = itertools.product(*(param_grid[k] for k in keys))
    return [dict(zip(keys, combo)) for combo in combos]


_TRAINERS = {
    "logistic": lambda X, y, p, seed: train_logistic(X, y, seed=seed, **p),
    "boosted_trees": lambda X, y, p, seed: train_gbt(X, y, params=GbtParams(**p), seed=seed),
    "neural_net": lambda X, y, p, seed: train_mlp(X, y, params=MlpParams(**p), seed=seed),
}

_PREDICTORS = {
    "logistic": predict_logistic,
    "boosted_trees": predict_gbt,
    "neural_net": predict_mlp,
}


def grid_search(
    X: np.ndarray,
    y: np.ndarray,
    model_name: str,
    param_grid: dict,
    scheme: SplitScheme | None = None,
    seed: int = 0,
) -> tuple[dict, list[dict]]:
    """Exhaustive search over the cartesian grid for one base model.

    Best point = highest mean accuracy, ties broken by f1 and then by
    lexicographic parameter order. Returns (best_params, result table).
    """
    if model_name not in _TRAINERS:
        raise KeyError(f"unknown model {model_name!r}; choose from {sorted(_TRAINERS)}")
    scheme = scheme or KFold(5)
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    points = _grid_points(param_grid)
    if not points:
        raise EmptyGrid("empty parameter grid")
    folds = split(y, scheme, seed=seed)
    table = []
    for p in points:
        accs, f1s = [], []
        for train_idx, test_idx in folds:
            model = _TRAINERS[model_name](X[train_idx], y[train_idx], p, seed)
            prob = np.atleast_1d(_PREDICTORS[model_name](model, X[test_idx]))
            m = metrics(confusion(y[test_idx], (prob >= 0.5).astype(int)))
            accs.append(m["accuracy"])
            f1s.append(m["f1"])
        table.append({"params": p, "accuracy": float(np.mean(accs)), "f1": float(np.mean(f1s))})

    def sort_key(row):
        param_key = tuple(row["params"][k] for k in sorted(row["params"]))
        return (-row["accuracy"], -row["f1"], param_key)

    best = min(table, key=sort_key)
    return best["params"], table
