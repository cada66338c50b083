"""Experiment orchestration: corpus splitting, the multi-seed training
protocol, test-time prediction rules, and report files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import CorpusError, TrainingError
from .featurize import FeatureLimits, FeatureStores, assemble_dataset
from .lexicon import CategoryGroup, Lexicon, category_group
from .metrics import confusion_matrix, macro_f1, per_class_f1
from .mwe_tagger import tag_sentence
from .embed_store import WordVectorStore
from .tensornet.model import (
    SENTENCE_ONLY,
    THREE_BRANCH,
    ModelConfig,
    ThreeBranchModel,
    save_checkpoint,
)
from .tensornet.train import (
    ArrayDataset,
    Hyperparams,
    TrainResult,
    predict_batch,
    stack_examples,
    train,
)
from .textprep import CleanTweet, is_trainable

MODES = ("static", "contextual", "sentence-only")


@dataclass(frozen=True)
class CorpusSplit:
    """Seeded train/dev/test partition.  Not-trainable tweets (< 2 tokens)
    are dropped from train and dev but recorded, so the five fields together
    reconstitute the input exactly; test keeps everything."""

    train: tuple[CleanTweet, ...]
    dev: tuple[CleanTweet, ...]
    test: tuple[CleanTweet, ...]
    dropped_train: tuple[CleanTweet, ...]
    dropped_dev: tuple[CleanTweet, ...]


def split_corpus(
    corpus: Sequence[CleanTweet],
    fractions: tuple[float, float, float] = (0.6, 0.2, 0.2),
    counts: tuple[int, int] | None = None,
    seed: int = 0,
) -> CorpusSplit:
    """Shuffles with the seed, then partitions.  With counts=(n_train,
    n_dev) the test set is the remainder; otherwise fractions must sum to 1
    and sizes are floor(n * fraction) with the remainder going to test."""
    n = len(corpus)
    if counts is not None:
        n_train, n_dev = counts
        if n_train < 0 or n_dev < 0:
            raise CorpusError("split counts must be non-negative")
        if n_train + n_dev > n:
            raise CorpusError(
                f"split counts {n_train}+{n_dev} exceed corpus size {n}"
            )
    else:
        if any(f < 0 for f in fractions) or abs(sum(fractions) - 1.0) > 1e-9:
            raise CorpusError(f"fractions {fractions} must be non-negative and sum to 1")
        n_train = int(n * fractions[0])
        n_dev = int(n * fractions[1])
    order = np.random.default_rng(seed).permutation(n)
    shuffled = [corpus[i] for i in order]
    train_all = shuffled[:n_train]
    dev_all = shuffled[n_train:n_train + n_dev]
    test = shuffled[n_train + n_dev:]
    return CorpusSplit(
        train=tuple(t for t in train_all if is_trainable(t)),
        dev=tuple(t for t in dev_all if is_trainable(t)),
        test=tuple(test),
        dropped_train=tuple(t for t in train_all if not is_trainable(t)),
        dropped_dev=tuple(t for t in dev_all if not is_trainable(t)),
    )


def carve_validation(
    train_tweets: Sequence[CleanTweet], count: int
) -> tuple[tuple[CleanTweet, ...], tuple[CleanTweet, ...]]:
    """Splits off the last `count` tweets as a validation set."""
    if count < 1:
        raise CorpusError("validation count must be at least 1")
    if count >= len(train_tweets):
        raise CorpusError(
            f"validation count {count} leaves no training data (n={len(train_tweets)})"
        )
    return tuple(train_tweets[:-count]), tuple(train_tweets[-count:])


def select_best_seed(dev_scores: Sequence[float], base_seed: int) -> int:
    """Argmax over per-seed dev scores; ties go to the lowest seed."""
    if not dev_scores:
        raise TrainingError("no dev scores to select from")
    best_i = 0
    for i, score in enumerate(dev_scores):
        if score > dev_scores[best_i]:
            best_i = i
    return base_seed + best_i


@dataclass(frozen=True)
class ExperimentConfig:
    group: str = "mwe5_vmwe5"
    mode: str = "static"
    n_seeds: int = 9
    base_seed: int = 0
    hyperparams: Hyperparams = Hyperparams()
    limits: FeatureLimits = FeatureLimits()
    nonhateful_class: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise TrainingError(f"unknown embedding mode {self.mode!r}; expected one of {MODES}")
        if self.n_seeds < 1:
            raise TrainingError("n_seeds must be at least 1")


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    selected_seed: int
    dev_scores: tuple[float, ...]
    histories: tuple[TrainResult, ...]
    model: ThreeBranchModel
    test_predictions: tuple[int, ...]
    report: dict
    report_subset: dict


def _stores_for_mode(stores: FeatureStores, mode: str) -> FeatureStores:
    if mode == "static":
        if stores.word is None:
            raise TrainingError("static mode needs a word-vector store")
        return FeatureStores(stores.sentence, word=stores.word, contextual=None)
    if mode == "contextual":
        if stores.contextual is None:
            raise TrainingError("contextual mode needs a contextual store")
        return FeatureStores(stores.sentence, word=None, contextual=stores.contextual)
    # Branch B is unused: a dim-1 empty store embeds every MWE token as zero.
    return FeatureStores(stores.sentence, word=WordVectorStore(1, {}), contextual=None)


def _evaluate(y_true: np.ndarray, y_pred: np.ndarray, n_classes: int,
              class_names: Sequence[str]) -> dict:
    if len(y_true) == 0:
        return {"n": 0, "note": "empty evaluation set"}
    cm = confusion_matrix(y_true, y_pred, n_classes)
    f1s = per_class_f1(cm)
    row_totals = cm.sum(axis=1, keepdims=True)
    percent = np.divide(
        100.0 * cm, row_totals, out=np.zeros(cm.shape, dtype=float),
        where=row_totals > 0,
    )
    return {
        "n": int(len(y_true)),
        "macro_f1": float(f1s.mean()),
        "accuracy": float(np.mean(y_true == y_pred)),
        "per_class_f1": {class_names[i]: float(f1s[i]) for i in range(n_classes)},
        "confusion": cm.tolist(),
        "confusion_percent": [[round(v, 6) for v in row] for row in percent.tolist()],
    }


def predict_test(
    model: ThreeBranchModel,
    test_tweets: Sequence[CleanTweet],
    lexicon: Lexicon,
    group: CategoryGroup,
    stores: FeatureStores,
    limits: FeatureLimits,
    nonhateful_class: int,
) -> np.ndarray:
    """Labels for the test set in corpus order.  Tweets that are empty after
    cleaning get the non-hateful class without touching the model."""
    out = np.full(len(test_tweets), nonhateful_class, dtype=int)
    nonempty = [i for i, t in enumerate(test_tweets) if t.surface_tokens]
    if nonempty:
        examples = assemble_dataset(
            [test_tweets[i] for i in nonempty], lexicon, group, stores, limits
        )
        out[nonempty] = predict_batch(model, stack_examples(examples))
    return out


def _model_config(group: CategoryGroup, stores: FeatureStores, n_classes: int,
                  config: ExperimentConfig, seed: int) -> ModelConfig:
    return ModelConfig(
        onehot_cols=len(group.column_order()),
        mwe_embed_dim=stores.mwe_store().dim,
        sentence_dim=stores.sentence.dim,
        n_classes=n_classes,
        seed=seed,
        max_tokens=config.limits.max_tokens,
        max_mwe_tokens=config.limits.max_mwe_tokens,
        branches=SENTENCE_ONLY if config.mode == "sentence-only" else THREE_BRANCH,
    )


def run_experiment(
    split: CorpusSplit,
    lexicon: Lexicon,
    stores: FeatureStores,
    n_classes: int,
    config: ExperimentConfig = ExperimentConfig(),
    class_names: Sequence[str] | None = None,
) -> ExperimentResult:
    """Trains n_seeds models (seeds base..base+n_seeds-1, early stopping on
    dev macro-F1), selects the best dev seed, evaluates it once on test, and
    builds the full-test and MWE-subset reports."""
    group = category_group(config.group)
    mode_stores = _stores_for_mode(stores, config.mode)
    if class_names is None:
        class_names = tuple(f"class_{i}" for i in range(n_classes))

    train_arrays = stack_examples(
        assemble_dataset(list(split.train), lexicon, group, mode_stores, config.limits)
    )
    dev_arrays = stack_examples(
        assemble_dataset(list(split.dev), lexicon, group, mode_stores, config.limits)
    )

    dev_scores: list[float] = []
    histories: list[TrainResult] = []
    best_weights = None
    best_seed = None
    for i in range(config.n_seeds):
        seed = config.base_seed + i
        model = ThreeBranchModel(
            _model_config(group, mode_stores, n_classes, config, seed)
        )
        try:
            result = train(model, train_arrays, dev_arrays, config.hyperparams,
                           shuffle_seed=seed)
        except Exception as exc:
            raise TrainingError(f"seed {seed}: {exc}") from exc
        dev_scores.append(result.best_val_macro_f1)
        histories.append(result)
        if best_seed is None or result.best_val_macro_f1 > dev_scores[best_seed - config.base_seed]:
            best_seed = seed
            best_weights = model.get_weights()

    assert best_seed is not None
    model = ThreeBranchModel(
        _model_config(group, mode_stores, n_classes, config, best_seed)
    )
    model.set_weights(best_weights)

    y_true = np.array([t.label for t in split.test], dtype=int)
    y_pred = predict_test(
        model, split.test, lexicon, group, mode_stores, config.limits,
        config.nonhateful_class,
    )
    has_mwe = np.array([
        bool(tag_sentence(t.lemmas, lexicon, group).matches) for t in split.test
    ])

    common = {
        "group": config.group,
        "mode": config.mode,
        "n_seeds": config.n_seeds,
        "base_seed": config.base_seed,
        "selected_seed": best_seed,
        "dev_macro_f1_per_seed": {
            str(config.base_seed + i): float(s) for i, s in enumerate(dev_scores)
        },
    }
    report = dict(common)
    report["evaluation"] = _evaluate(y_true, y_pred, n_classes, class_names)
    report_subset = dict(common)
    report_subset["subset"] = "tweets_with_mwe"
    report_subset["evaluation"] = _evaluate(
        y_true[has_mwe], y_pred[has_mwe], n_classes, class_names
    )
    return ExperimentResult(
        config=config,
        selected_seed=best_seed,
        dev_scores=tuple(float(s) for s in dev_scores),
        histories=tuple(histories),
        model=model,
        test_predictions=tuple(int(p) for p in y_pred),
        report=report,
        report_subset=report_subset,
    )


def _dump_json(obj: dict, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def history_to_json(seed: int, result: TrainResult) -> dict:
    return {
        "seed": seed,
        "best_epoch": result.best_epoch,
        "best_val_macro_f1": result.best_val_macro_f1,
        "stopped_early": result.stopped_early,
        "epochs": [
            {"epoch": e.epoch, "train_loss": e.train_loss, "val_macro_f1": e.val_macro_f1}
            for e in result.history
        ],
    }


def write_experiment_outputs(result: ExperimentResult, out_dir: str | Path) -> None:
    """report.json, report_subset.json, one history_<seed>.json per seed, and
    the selected checkpoint as model_best.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(result.report, out / "report.json")
    _dump_json(result.report_subset, out / "report_subset.json")
    for i, history in enumerate(result.histories):
        seed = result.config.base_seed + i
        _dump_json(history_to_json(seed, history), out / f"history_{seed}.json")
    with open(out / "model_best.json", "w", encoding="utf-8") as fh:
        save_checkpoint(
            result.model,
            {"selected_seed": result.selected_seed, "group": result.config.group,
             "mode": result.config.mode},
            fh,
        )


def load_config_file(path: str | Path) -> dict[str, str]:
    """Reads an experiment config as JSON (when the file starts with '{') or
    as key=value lines; '#' starts a comment line."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(text)
        if not isinstance(obj, dict):
            raise CorpusError(f"config {path}: JSON top level must be an object")
        return {str(k): str(v) for k, v in obj.items()}
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CorpusError(f"config {path} line {lineno}: expected key=value")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out
