"""Batch pipeline driver.

Subcommands: stats, fetch-titles, featurize, train, evaluate, ablate,
gridsearch. Settings come from a flat ``key = value`` config file with
dotted section keys (see README), overridable with --set and the global
flags --config/--seed/--offline/--out. Every artifact embeds the seed and
the config fingerprint; re-running a stage with unchanged inputs writes
identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .corpus import dataset_stats, load_dataset, load_stopwords, users_without_tweets
from .evaluation import (
    ENSEMBLE_NAME,
    EvalReport,
    ExperimentConfig,
    Holdout,
    KFold,
    Lexicons,
    ablation_suite,
    carve_validation,
    confusion,
    featurize_dataset,
    grid_search,
    metrics,
    prepare_dataset,
    run_experiment,
    split,
)
from .lexicons import load_category_lexicon, load_emoji_table, load_emotion_lexicon
from .ml import (
    BASE_MODEL_NAMES,
    EnsembleModel,
    GbtParams,
    MlpParams,
    base_probabilities,
    train_ensemble,
    vote_majority,
)
from .webcontext import FetchPolicy, UrlTitleCache, fetch_all_titles


class ConfigError(ValueError):
    pass


_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``dotted.key = value`` lines; '#' starts a comment."""
    out: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key = value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


@dataclass
class PipelineConfig:
    """All pipeline settings with their defaults."""

    dataset: str | None = None
    stopwords: str | None = None
    emotion_lexicon: str | None = None
    emoji_table: str | None = None
    category_lexicon: str | None = None
    cache: str | None = None
    offline: bool = False
    out: str = "out"
    seed: int = 0
    english_only: bool = True
    min_words: int = 5
    raw_counts: bool = False
    scheme: str = "kfold"
    folds: int = 5
    holdout: float = 0.2
    lda_topics: int = 15
    lda_alpha: float | None = None
    lda_eta: float = 0.01
    lda_iterations: int = 500
    lda_fold_iterations: int = 50
    lda_depressed_only: bool = True
    pca_k: int = 90
    visual_dim: int = 128
    logistic_c: float = 10.0
    logistic_tol: float = 1e-4
    logistic_max_iter: int = 1000
    gbt_rounds: int = 200
    gbt_max_depth: int = 8
    gbt_learning_rate: float = 0.2
    gbt_gamma: float = 0.0
    gbt_reg_lambda: float = 0.0
    gbt_scale_pos_weight: float = 5.0
    mlp_batch_size: int = 32
    mlp_learning_rate: float = 0.01
    mlp_dropout: float = 0.5
    mlp_epochs: int = 100
    standardize_activity: bool = True

    KEY_MAP = {
        "dataset": ("dataset", str),
        "stopwords": ("stopwords", str),
        "lexicon.emotion": ("emotion_lexicon", str),
        "lexicon.emoji": ("emoji_table", str),
        "lexicon.categories": ("category_lexicon", str),
        "lexicon.raw_counts": ("raw_counts", bool),
        "cache": ("cache", str),
        "offline": ("offline", bool),
        "out": ("out", str),
        "seed": ("seed", int),
        "english_only": ("english_only", bool),
        "min_words": ("min_words", int),
        "split.scheme": ("scheme", str),
        "split.folds": ("folds", int),
        "split.holdout": ("holdout", float),
        "lda.topics": ("lda_topics", int),
        "lda.alpha": ("lda_alpha", float),
        "lda.eta": ("lda_eta", float),
        "lda.iterations": ("lda_iterations", int),
        "lda.fold_iterations": ("lda_fold_iterations", int),
        "lda.depressed_only": ("lda_depressed_only", bool),
        "pca.components": ("pca_k", int),
        "visual.dim": ("visual_dim", int),
        "logistic.c": ("logistic_c", float),
        "logistic.tol": ("logistic_tol", float),
        "logistic.max_iter": ("logistic_max_iter", int),
        "gbt.rounds": ("gbt_rounds", int),
        "gbt.max_depth": ("gbt_max_depth", int),
        "gbt.learning_rate": ("gbt_learning_rate", float),
        "gbt.gamma": ("gbt_gamma", float),
        "gbt.reg_lambda": ("gbt_reg_lambda", float),
        "gbt.scale_pos_weight": ("gbt_scale_pos_weight", float),
        "mlp.batch_size": ("mlp_batch_size", int),
        "mlp.learning_rate": ("mlp_learning_rate", float),
        "mlp.dropout": ("mlp_dropout", float),
        "mlp.epochs": ("mlp_epochs", int),
        "standardize_activity": ("standardize_activity", bool),
    }

    def apply(self, key: str, value: str) -> None:
        if key not in self.KEY_MAP:
            raise ConfigError(f"unknown config key {key!r}")
        attr, typ = self.KEY_MAP[key]
        if typ is bool:
            if value.lower() not in _BOOL:
                raise ConfigError(f"{key}: expected a boolean, got {value!r}")
            setattr(self, attr, _BOOL[value.lower()])
        elif typ is int:
            setattr(self, attr, int(value))
        elif typ is float:
            setattr(self, attr, float(value))
        else:
            setattr(self, attr, value)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "PipelineConfig":
        cfg = cls()
        if args.config:
            for key, value in parse_config_file(args.config).items():
                cfg.apply(key, value)
        for item in args.set or []:
            if "=" not in item:
                raise ConfigError(f"--set expects key=value, got {item!r}")
            key, value = item.split("=", 1)
            cfg.apply(key.strip(), value.strip())
        if args.dataset:
            cfg.dataset = args.dataset
        if args.seed is not None:
            cfg.seed = args.seed
        if args.offline:
            cfg.offline = True
        if args.out:
            cfg.out = args.out
        if getattr(args, "cache", None):
            cfg.cache = args.cache
        if getattr(args, "folds", None):
            cfg.scheme, cfg.folds = "kfold", args.folds
        if getattr(args, "holdout", None) is not None:
            cfg.scheme, cfg.holdout = "holdout", args.holdout
        if getattr(args, "raw_counts", False):
            cfg.raw_counts = True
        return cfg

    def experiment_config(self) -> ExperimentConfig:
        scheme = KFold(self.folds) if self.scheme == "kfold" else Holdout(self.holdout)
        return ExperimentConfig(
            seed=self.seed,
            scheme=scheme,
            topics=self.lda_topics,
            lda_alpha=self.lda_alpha,
            lda_eta=self.lda_eta,
            lda_iterations=self.lda_iterations,
            fold_iterations=self.lda_fold_iterations,
            lda_depressed_only=self.lda_depressed_only,
            pca_k=self.pca_k,
            visual_dim=self.visual_dim,
            logistic_C=self.logistic_c,
            logistic_tol=self.logistic_tol,
            logistic_max_iter=self.logistic_max_iter,
            gbt=GbtParams(
                rounds=self.gbt_rounds,
                max_depth=self.gbt_max_depth,
                learning_rate=self.gbt_learning_rate,
                gamma=self.gbt_gamma,
                reg_lambda=self.gbt_reg_lambda,
                scale_pos_weight=self.gbt_scale_pos_weight,
            ),
            mlp=MlpParams(
                batch_size=self.mlp_batch_size,
                learning_rate=self.mlp_learning_rate,
                dropout=self.mlp_dropout,
                epochs=self.mlp_epochs,
            ),
            standardize_activity=self.standardize_activity,
            normalize_counts=not self.raw_counts,
        )


def _sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()[:16]


def _bundled_path(name: str) -> Path:
    return Path(str(resources.files("depdetect.data").joinpath(name)))


def load_lexicons(cfg: PipelineConfig) -> tuple[Lexicons, dict[str, str]]:
    """Load the three dictionaries and fingerprint the files used."""
    def resolve(configured, bundled):
        return Path(configured) if configured else _bundled_path(bundled)

    paths = {
        "emotion_lexicon": resolve(cfg.emotion_lexicon, "emotion_lexicon.tsv"),
        "emoji_table": resolve(cfg.emoji_table, "emoji_sentiment.csv"),
        "category_lexicon": resolve(cfg.category_lexicon, "categories.tsv"),
    }
    lex = Lexicons(
        emotions=load_emotion_lexicon(cfg.emotion_lexicon),
        emoji=load_emoji_table(cfg.emoji_table),
        categories=load_category_lexicon(cfg.category_lexicon),
    )
    hashes = {name: _sha256_file(p) for name, p in paths.items()}
    return lex, hashes


def _require_dataset(cfg: PipelineConfig) -> Path:
    if not cfg.dataset:
        raise ConfigError("no dataset configured (set `dataset = <path>` or pass --dataset)")
    path = Path(cfg.dataset)
    if not path.exists():
        raise ConfigError(f"dataset file not found: {path}")
    return path


def _out_dir(cfg: PipelineConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False), "utf-8")


def _load_cache(cfg: PipelineConfig) -> UrlTitleCache:
    if cfg.cache and Path(cfg.cache).exists():
        return UrlTitleCache.load(cfg.cache)
    return UrlTitleCache()


def _prepared(cfg: PipelineConfig):
    ds = load_dataset(_require_dataset(cfg))
    stopwords = load_stopwords(cfg.stopwords)
    cache = _load_cache(cfg)
    prepared = prepare_dataset(
        ds,
        cache=cache,
        stopwords=stopwords,
        min_words=cfg.min_words,
        english_only=cfg.english_only,
    )
    return ds, prepared, cache


def cmd_stats(cfg: PipelineConfig) -> Path:
    ds = load_dataset(_require_dataset(cfg))
    rep = dataset_stats(ds)
    out = _out_dir(cfg)
    payload = {
        "source": ds.source_name,
        "n_users": rep.n_users,
        "n_tweets": rep.n_tweets,
        "counts": {
            "tweets_with_url": rep.tweets_with_url,
            "tweets_with_image": rep.tweets_with_image,
            "users_with_url": rep.users_with_url,
            "users_with_image": rep.users_with_image,
        },
        "percentages": rep.percentages(),
        "seed": cfg.seed,
        "config_fingerprint": cfg.experiment_config().fingerprint(),
    }
    _write_json(out / "stats.json", payload)
    lines = [f"{'statistic':<42}{'percent':>9}"]
    for key, pct in rep.percentages().items():
        lines.append(f"{key.replace('_', ' '):<42}{pct:>8.1f}%")
    text = "\n".join(lines)
    (out / "stats.txt").write_text(text + "\n", "utf-8")
    print(text)
    return out / "stats.json"


def cmd_fetch_titles(cfg: PipelineConfig, http_get=None) -> Path:
    ds = load_dataset(_require_dataset(cfg))
    if not cfg.cache:
        raise ConfigError("fetch-titles needs a cache path (set `cache = <path>` or --cache)")
    cache = _load_cache(cfg)
    policy = FetchPolicy(offline=cfg.offline)
    summary = fetch_all_titles(ds, cache, policy, http_get=http_get)
    cache.save(cfg.cache)
    out = _out_dir(cfg)
    _write_json(
        out / "fetch_report.json",
        {**summary, "seed": cfg.seed, "config_fingerprint": cfg.experiment_config().fingerprint()},
    )
    print(
        f"urls={summary['distinct_urls']} resolved={summary['resolved']} "
        f"failed={summary['failed']} offline_misses={len(summary['offline_misses'])}"
    )
    for url in summary["offline_misses"]:
        print(f"  miss: {url}")
    return out / "fetch_report.json"


def cmd_featurize(cfg: PipelineConfig) -> Path:
    ds_raw, ds, _ = _prepared(cfg)
    lex, lex_hashes = load_lexicons(cfg)
    ecfg = cfg.experiment_config()
    y = np.asarray(ds.labels())
    train_idx, test_idx = split(y, Holdout(cfg.holdout), seed=cfg.seed)[0]
    result = featurize_dataset(ds, lex, ecfg, train_idx)
    out = _out_dir(cfg)
    np.save(out / "features.npy", result["X"])
    result["topic_model"].save(out / "lda.json")
    result["pca_model"].save(out / "pca.json")
    manifest = {
        "config_fingerprint": ecfg.fingerprint(),
        "seed": cfg.seed,
        "layout": result["layout"].to_dict(),
        "user_ids": [u.user_id for u in ds.users],
        "labels": [int(v) for v in y],
        "train_user_ids": [ds.users[i].user_id for i in train_idx],
        "test_user_ids": [ds.users[i].user_id for i in test_idx],
        "users_without_tweets": users_without_tweets(ds),
        "lexicon_hashes": lex_hashes,
        "model_fingerprints": {
            "lda_trained_on": result["topic_model"].trained_on,
            "lda_seed": result["topic_model"].seed,
            "lda_topics": result["topic_model"].T,
            "pca_components": result["pca_model"].k,
        },
        "standardization": {
            "mean": result["std_mean"].tolist(),
            "std": result["std_std"].tolist(),
        },
        "source": ds_raw.source_name,
    }
    _write_json(out / "manifest.json", manifest)
    print(f"features: {result['X'].shape} -> {out / 'features.npy'}")
    return out / "manifest.json"


def _load_featurized(cfg: PipelineConfig):
    out = _out_dir(cfg)
    manifest_path = out / "manifest.json"
    if not manifest_path.exists():
        raise ConfigError(f"no featurize artifacts in {out}; run `featurize` first")
    manifest = json.loads(manifest_path.read_text("utf-8"))
    X = np.load(out / "features.npy")
    return manifest, X


def cmd_train(cfg: PipelineConfig) -> Path:
    manifest, X = _load_featurized(cfg)
    ecfg = cfg.experiment_config()
    y = np.asarray(manifest["labels"])
    ids = manifest["user_ids"]
    train_rows = np.asarray([ids.index(u) for u in manifest["train_user_ids"]])
    y_train = y[train_rows]
    fit, val = carve_validation(y_train, ecfg.mlp_val_fraction, cfg.seed + 17)
    Xt = X[train_rows]
    ens = train_ensemble(
        Xt[fit],
        y_train[fit],
        logistic_kwargs={"C": ecfg.logistic_C, "tol": ecfg.logistic_tol, "max_iter": ecfg.logistic_max_iter},
        gbt_params=ecfg.gbt,
        mlp_params=ecfg.mlp,
        seed=cfg.seed,
        X_val=Xt[val] if len(val) else None,
        y_val=y_train[val] if len(val) else None,
    )
    ens.metadata.update(
        {
            "config_fingerprint": manifest["config_fingerprint"],
            "layout": manifest["layout"],
            "seed": cfg.seed,
        }
    )
    out = _out_dir(cfg)
    ens.save(out / "model_bundle.json")
    print(f"trained 3 base models on {len(fit)} users -> {out / 'model_bundle.json'}")
    return out / "model_bundle.json"


def _holdout_report(cfg: PipelineConfig) -> EvalReport:
    manifest, X = _load_featurized(cfg)
    out = _out_dir(cfg)
    bundle_path = out / "model_bundle.json"
    if not bundle_path.exists():
        raise ConfigError(f"no model bundle in {out}; run `train` first")
    ens = EnsembleModel.load(bundle_path)
    y = np.asarray(manifest["labels"])
    ids = manifest["user_ids"]
    test_rows = np.asarray([ids.index(u) for u in manifest["test_user_ids"]])
    probs = base_probabilities(ens, X[test_rows])
    votes = (probs >= np.asarray(ens.thresholds)).astype(int)
    preds = {
        "logistic": votes[:, 0],
        "boosted_trees": votes[:, 1],
        "neural_net": votes[:, 2],
        ENSEMBLE_NAME: vote_majority(votes),
    }
    models = {}
    for name in list(BASE_MODEL_NAMES) + [ENSEMBLE_NAME]:
        c = confusion(y[test_rows], preds[name])
        m = metrics(c)
        mean = {k: m[k] for k in ("accuracy", "precision", "recall", "f1")}
        models[name] = {"counts": c, "fold_metrics": [m], "mean_metrics": mean}
    return EvalReport(
        models=models,
        seed=cfg.seed,
        n_folds=1,
        config_fingerprint=manifest["config_fingerprint"],
    )


def cmd_evaluate(cfg: PipelineConfig, cross_validate: bool = False) -> Path:
    out = _out_dir(cfg)
    if cross_validate:
        _, ds, _ = _prepared(cfg)
        lex, _ = load_lexicons(cfg)
        report = run_experiment(ds, lex, cfg.experiment_config())
        stem = "cv_report"
    else:
        report = _holdout_report(cfg)
        stem = "report"
    _write_json(out / f"{stem}.json", report.to_dict())
    text = report.format_table()
    (out / f"{stem}.txt").write_text(text + "\n", "utf-8")
    print(text)
    return out / f"{stem}.json"


def cmd_ablate(cfg: PipelineConfig) -> Path:
    _, ds, _ = _prepared(cfg)
    lex, _ = load_lexicons(cfg)
    report = ablation_suite(ds, lex, cfg.experiment_config())
    out = _out_dir(cfg)
    _write_json(out / "ablation.json", report.to_dict())
    text = report.format_table()
    (out / "ablation.txt").write_text(text + "\n", "utf-8")
    print(text)
    return out / "ablation.json"


def cmd_gridsearch(cfg: PipelineConfig, grid_file: str) -> Path:
    spec = json.loads(Path(grid_file).read_text("utf-8"))
    model_name = spec.get("model")
    grid = spec.get("grid")
    if not isinstance(grid, dict):
        raise ConfigError("grid file needs {'model': <name>, 'grid': {param: [values...]}}")
    manifest, X = _load_featurized(cfg)
    y = np.asarray(manifest["labels"])
    scheme = KFold(cfg.folds) if cfg.scheme == "kfold" else Holdout(cfg.holdout)
    best, table = grid_search(X, y, model_name, grid, scheme=scheme, seed=cfg.seed)
    out = _out_dir(cfg)
    payload = {
        "model": model_name,
        "best_params": best,
        "table": table,
        "seed": cfg.seed,
        "config_fingerprint": manifest["config_fingerprint"],
    }
    _write_json(out / "gridsearch.json", payload)
    lines = [f"{'params':<48}{'accuracy':>10}{'f1':>10}"]
    for row in table:
        lines.append(
            f"{json.dumps(row['params'], sort_keys=True):<48}"
            f"{100 * row['accuracy']:>9.1f}%{100 * row['f1']:>9.1f}%"
        )
    lines.append(f"best: {json.dumps(best, sort_keys=True)}")
    text = "\n".join(lines)
    (out / "gridsearch.txt").write_text(text + "\n", "utf-8")
    print(text)
    return out / "gridsearch.json"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depdetect",
        description="Multimodal depression-detection pipeline over per-user tweet corpora",
    )
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--dataset", help="dataset JSONL path (overrides config)")
    parser.add_argument("--seed", type=int, default=None, help="global seed")
    parser.add_argument("--offline", action="store_true", help="forbid all network access")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--cache", help="URL title cache path")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE", help="override any config key")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("stats", help="dataset URL/image coverage statistics")
    sub.add_parser("fetch-titles", help="resolve every distinct tweet URL into the title cache")
    sub.add_parser("featurize", help="build the feature matrix + manifest (holdout partition)")
    sub.add_parser("train", help="train the three base models on the featurized training rows")
    p_eval = sub.add_parser("evaluate", help="evaluate the bundle (or run cross-validation)")
    p_eval.add_argument("--folds", type=int, default=None, help="run fresh stratified k-fold CV instead")
    p_eval.add_argument("--holdout", type=float, default=None, help="holdout fraction for CV mode")
    p_ablate = sub.add_parser("ablate", help="leave-one-out modality ablation (six rows)")
    p_ablate.add_argument("--folds", type=int, default=None)
    p_ablate.add_argument("--holdout", type=float, default=None)
    p_grid = sub.add_parser("gridsearch", help="exhaustive parameter grid for one base model")
    p_grid.add_argument("--grid", required=True, help="JSON file {'model':..., 'grid': {...}}")
    p_grid.add_argument("--folds", type=int, default=None)
    p_grid.add_argument("--holdout", type=float, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = PipelineConfig.from_args(args)
        if args.command == "stats":
            cmd_stats(cfg)
        elif args.command == "fetch-titles":
            cmd_fetch_titles(cfg)
        elif args.command == "featurize":
            cmd_featurize(cfg)
        elif args.command == "train":
            cmd_train(cfg)
        elif args.command == "evaluate":
            cmd_evaluate(cfg, cross_validate=args.folds is not None or args.holdout is not None)
        elif args.command == "ablate":
            cmd_ablate(cfg)
        elif args.command == "gridsearch":
            cmd_gridsearch(cfg, args.grid)
    except (ConfigError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
