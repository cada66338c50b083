"""Command-line surface.

Exit codes: 0 success, 1 usage error (bad flags, unknown subcommand), 2 data
or validation error (malformed input files, failed invariants).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .corpus_stats import (
    category_class_counts,
    category_partition,
    mwe_per_tweet_histogram,
    write_class_counts_csv,
    write_histogram_csv,
    write_partition_csv,
)
from .embed_store import (
    SyntheticSentenceVectors,
    SyntheticWordVectors,
    load_contextual_vectors,
    load_sentence_vectors,
    load_word_vectors,
)
from .errors import CorpusError, MwehateError
from .featurize import FeatureLimits, FeatureStores, assemble_dataset, features_to_json
from .lexicon import category_group, load_lexicon
from .metrics import compare_predictions
from .mwe_tagger import tag_sentence
from .pipeline import (
    ExperimentConfig,
    _evaluate,
    load_config_file,
    predict_test,
    run_experiment,
    split_corpus,
    write_experiment_outputs,
)
from .tensornet.model import load_checkpoint
from .tensornet.train import Hyperparams
from .textprep import (
    DATASET_CONFIGS,
    load_corpus,
    load_lemma_dictionary,
    preprocess_corpus,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage problems; the contract here is exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _require(args, name: str):
    value = getattr(args, name.replace("-", "_"))
    if value is None:
        raise _UsageError(f"missing required flag --{name}")
    return value


def _read_lines(path: str) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.readlines()


def _dataset(args):
    name = args.dataset
    if name not in DATASET_CONFIGS:
        raise _UsageError(
            f"unknown dataset {name!r}; expected one of {sorted(DATASET_CONFIGS)}"
        )
    return DATASET_CONFIGS[name]


def _load_clean_corpus(args):
    dataset = _dataset(args)
    raw = load_corpus(_read_lines(_require(args, "corpus")), dataset)
    lemma_dict = (
        load_lemma_dictionary(_read_lines(args.lemmas)) if args.lemmas else {}
    )
    return dataset, preprocess_corpus(raw, lemma_dict)


def _build_stores(args, seed: int) -> FeatureStores:
    spec = _require(args, "sentence-store")
    if spec == "synthetic":
        sentence = SyntheticSentenceVectors(args.synthetic_sentence_dim, seed)
    else:
        sentence = load_sentence_vectors(_read_lines(spec))
    word = None
    if args.word_store == "synthetic":
        word = SyntheticWordVectors(args.synthetic_word_dim, seed)
    elif args.word_store:
        word = load_word_vectors(_read_lines(args.word_store))
    contextual = (
        load_contextual_vectors(_read_lines(args.contextual_store))
        if args.contextual_store else None
    )
    return FeatureStores(sentence, word=word, contextual=contextual)


def _write_jsonl(path: str, objs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(json.dumps(obj, sort_keys=True))
            fh.write("\n")


def _emit_json(obj: dict, out_path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_lexicon_check(args) -> int:
    lexicon = load_lexicon(_read_lines(_require(args, "lexicon")))
    print(f"ok: {len(lexicon)} entries")
    return 0


def _cmd_preprocess(args) -> int:
    _, clean = _load_clean_corpus(args)
    _write_jsonl(_require(args, "out"), (
        {"id": t.id, "tokens": list(t.surface_tokens),
         "lemmas": list(t.lemmas), "label": t.label}
        for t in clean
    ))
    return 0


def _tagged_corpus(args, selector: str):
    dataset, clean = _load_clean_corpus(args)
    lexicon = load_lexicon(_read_lines(_require(args, "lexicon")))
    group = category_group(selector)
    tagged = [tag_sentence(t.lemmas, lexicon, group) for t in clean]
    return dataset, clean, lexicon, tagged


def _cmd_tag(args) -> int:
    _, clean, lexicon, tagged = _tagged_corpus(args, args.group)
    rows = []
    for tweet, ts in zip(clean, tagged):
        rows.append({
            "id": tweet.id,
            "lemmas": list(ts.lemmas),
            "tags": [tag.category.value for tag in ts.tags],
            "matches": [
                {
                    "entry_id": m.entry_id,
                    "lemmas": list(lexicon.entries[m.entry_id].lemmas),
                    "category": lexicon.entries[m.entry_id].category.value,
                    "positions": list(m.token_positions),
                }
                for m in ts.matches
            ],
        })
    _write_jsonl(_require(args, "out"), rows)
    return 0


def _cmd_stats(args) -> int:
    _, clean, lexicon, tagged = _tagged_corpus(args, "mweall")
    labeled = [(ts, tweet.label) for ts, tweet in zip(tagged, clean)]
    out_dir = Path(_require(args, "out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "histogram.csv", "w", encoding="utf-8") as fh:
        write_histogram_csv(mwe_per_tweet_histogram(tagged), fh)
    with open(out_dir / "partition.csv", "w", encoding="utf-8") as fh:
        write_partition_csv(category_partition(labeled, lexicon), fh)
    with open(out_dir / "class_counts.csv", "w", encoding="utf-8") as fh:
        write_class_counts_csv(category_class_counts(labeled, lexicon), fh)
    return 0


def _cmd_features(args) -> int:
    _, clean = _load_clean_corpus(args)
    lexicon = load_lexicon(_read_lines(_require(args, "lexicon")))
    group = category_group(args.group)
    stores = _build_stores(args, args.seed)
    limits = FeatureLimits(args.max_tokens, args.max_mwe_tokens)
    examples = assemble_dataset(clean, lexicon, group, stores, limits)
    _write_jsonl(_require(args, "out"), (features_to_json(e) for e in examples))
    return 0


def _cfg_get(cfg: dict, key: str, default=None):
    return cfg.get(key, default)


def _cfg_require(cfg: dict, key: str, path: str):
    if key not in cfg:
        raise CorpusError(f"config {path}: missing required key {key!r}")
    return cfg[key]


def _cmd_train(args) -> int:
    path = _require(args, "config")
    cfg = load_config_file(path)
    dataset = DATASET_CONFIGS.get(_cfg_get(cfg, "dataset", "hateval"))
    if dataset is None:
        raise CorpusError(f"config {path}: unknown dataset {cfg['dataset']!r}")
    raw = load_corpus(_read_lines(_cfg_require(cfg, "corpus", path)), dataset)
    lemma_dict = (
        load_lemma_dictionary(_read_lines(cfg["lemmas"])) if "lemmas" in cfg else {}
    )
    clean = preprocess_corpus(raw, lemma_dict)
    lexicon = load_lexicon(_read_lines(_cfg_require(cfg, "lexicon", path)))

    seed = int(_cfg_get(cfg, "base_seed", args.seed))
    store_args = argparse.Namespace(
        sentence_store=_cfg_require(cfg, "sentence_store", path),
        word_store=_cfg_get(cfg, "word_store"),
        contextual_store=_cfg_get(cfg, "contextual_store"),
        synthetic_sentence_dim=int(_cfg_get(cfg, "synthetic_sentence_dim", 16)),
        synthetic_word_dim=int(_cfg_get(cfg, "synthetic_word_dim", 16)),
    )
    stores = _build_stores(store_args, int(_cfg_get(cfg, "synthetic_store_seed", 0)))

    fractions = tuple(
        float(f) for f in _cfg_get(cfg, "fractions", "0.6,0.2,0.2").split(",")
    )
    if len(fractions) != 3:
        raise CorpusError(f"config {path}: fractions must have three values")
    split = split_corpus(clean, fractions, seed=int(_cfg_get(cfg, "split_seed", 0)))

    config = ExperimentConfig(
        group=_cfg_get(cfg, "group", "mwe5_vmwe5"),
        mode=_cfg_get(cfg, "mode", "static"),
        n_seeds=int(_cfg_get(cfg, "n_seeds", 9)),
        base_seed=seed,
        hyperparams=Hyperparams(
            learning_rate=float(_cfg_get(cfg, "learning_rate", 1e-3)),
            batch_size=int(_cfg_get(cfg, "batch_size", 32)),
            max_epochs=int(_cfg_get(cfg, "max_epochs", 30)),
            patience=int(_cfg_get(cfg, "patience", 5)),
        ),
        limits=FeatureLimits(
            max_tokens=int(_cfg_get(cfg, "max_tokens", 64)),
            max_mwe_tokens=int(_cfg_get(cfg, "max_mwe_tokens", 16)),
        ),
        nonhateful_class=dataset.nonhateful_class,
    )
    class_names = tuple(
        name for name, _ in sorted(dataset.label_map.items(), key=lambda kv: kv[1])
    )
    result = run_experiment(split, lexicon, stores, dataset.n_classes, config,
                            class_names)
    write_experiment_outputs(result, _cfg_require(cfg, "out_dir", path))
    evaluation = result.report["evaluation"]
    print(
        f"selected seed {result.selected_seed}; "
        f"test macro-F1 {evaluation['macro_f1']:.4f} (n={evaluation['n']})"
    )
    return 0


def _cmd_predict(args) -> int:
    with open(_require(args, "model"), "r", encoding="utf-8") as fh:
        checkpoint = load_checkpoint(fh)
    dataset, clean = _load_clean_corpus(args)
    lexicon = load_lexicon(_read_lines(_require(args, "lexicon")))
    group = category_group(checkpoint.metadata.get("group", args.group))
    stores = _build_stores(args, args.seed)
    model = checkpoint.to_model()
    labels = predict_test(
        model, clean, lexicon, group, stores,
        FeatureLimits(model.config.max_tokens, model.config.max_mwe_tokens),
        dataset.nonhateful_class,
    )
    _write_jsonl(_require(args, "out"), (
        {"id": t.id, "label": int(label)} for t, label in zip(clean, labels)
    ))
    return 0


def _load_predictions(path: str) -> list[tuple[str, int]]:
    rows: list[tuple[str, int]] = []
    for lineno, raw in enumerate(_read_lines(path), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
            rows.append((str(obj["id"]), int(obj["label"])))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            raise CorpusError(
                f"{path} line {lineno}: expected {{\"id\", \"label\"}}"
            ) from None
    return rows


def _gold_labels(args) -> tuple[dict[str, int], tuple[str, ...], int]:
    dataset = _dataset(args)
    raw = load_corpus(_read_lines(_require(args, "corpus")), dataset)
    gold = {t.id: t.label for t in raw}
    names = tuple(
        name for name, _ in sorted(dataset.label_map.items(), key=lambda kv: kv[1])
    )
    return gold, names, dataset.n_classes


def _aligned(gold: dict[str, int], preds: list[tuple[str, int]], path: str):
    y_true, y_pred = [], []
    for tweet_id, label in preds:
        if tweet_id not in gold:
            raise CorpusError(f"{path}: prediction for unknown tweet id {tweet_id!r}")
        y_true.append(gold[tweet_id])
        y_pred.append(label)
    return y_true, y_pred


def _cmd_evaluate(args) -> int:
    gold, names, n_classes = _gold_labels(args)
    pred_path = _require(args, "pred")
    preds = _load_predictions(pred_path)
    y_true, y_pred = _aligned(gold, preds, pred_path)
    report = _evaluate(np.array(y_true), np.array(y_pred), n_classes, names)
    _emit_json(report, args.out)
    return 0


def _cmd_significance(args) -> int:
    gold, _, _ = _gold_labels(args)
    path_a, path_b = _require(args, "pred-a"), _require(args, "pred-b")
    preds_a = _load_predictions(path_a)
    preds_b = dict(_load_predictions(path_b))
    y_true, a, b = [], [], []
    for tweet_id, label in preds_a:
        if tweet_id not in gold:
            raise CorpusError(f"{path_a}: prediction for unknown tweet id {tweet_id!r}")
        if tweet_id not in preds_b:
            raise CorpusError(f"{path_b}: missing prediction for tweet id {tweet_id!r}")
        y_true.append(gold[tweet_id])
        a.append(label)
        b.append(preds_b[tweet_id])
    comparison = compare_predictions(y_true, a, b)
    _emit_json(
        {"n01": comparison.n01, "n10": comparison.n10, "p_value": comparison.p_value},
        args.out,
    )
    return 0


def _add_corpus_flags(p: _Parser) -> None:
    p.add_argument("--corpus", help="tweet corpus JSONL: {id, text, label}")
    p.add_argument("--dataset", default="hateval",
                   help="label vocabulary: hateval or founta")
    p.add_argument("--lemmas", help="token<TAB>lemma dictionary (optional)")


def _add_store_flags(p: _Parser) -> None:
    p.add_argument("--sentence-store",
                   help="sentence-vector JSONL path, or 'synthetic'")
    p.add_argument("--word-store", help="word-vector text path, or 'synthetic'")
    p.add_argument("--contextual-store", help="contextual-vector JSONL path")
    p.add_argument("--synthetic-sentence-dim", type=int, default=16)
    p.add_argument("--synthetic-word-dim", type=int, default=16)


def build_parser() -> _Parser:
    parser = _Parser(prog="mwehate", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized step")
    common.add_argument("--config", help="experiment config file (JSON or key=value)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("lexicon-check", parents=[common],
                       help="validate a lexicon TSV")
    p.add_argument("--lexicon")
    p.set_defaults(func=_cmd_lexicon_check)

    p = sub.add_parser("preprocess", parents=[common],
                       help="clean, tokenize and lemmatize a corpus")
    _add_corpus_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_preprocess)

    p = sub.add_parser("tag", parents=[common], help="tag MWE occurrences")
    _add_corpus_flags(p)
    p.add_argument("--lexicon")
    p.add_argument("--group", default="mweall")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_tag)

    p = sub.add_parser("stats", parents=[common],
                       help="histogram, category partition and class counts (CSV)")
    _add_corpus_flags(p)
    p.add_argument("--lexicon")
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("features", parents=[common],
                       help="assemble branch features as JSONL")
    _add_corpus_flags(p)
    p.add_argument("--lexicon")
    p.add_argument("--group", default="mwe5_vmwe5")
    _add_store_flags(p)
    p.add_argument("--max-tokens", type=int, default=64)
    p.add_argument("--max-mwe-tokens", type=int, default=16)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("train", parents=[common],
                       help="run the multi-seed experiment from --config")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", parents=[common],
                       help="label a corpus with a saved model")
    _add_corpus_flags(p)
    p.add_argument("--model")
    p.add_argument("--lexicon")
    p.add_argument("--group", default="mwe5_vmwe5",
                   help="fallback when the checkpoint has no group")
    _add_store_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("evaluate", parents=[common],
                       help="score predictions against gold labels")
    _add_corpus_flags(p)
    p.add_argument("--pred")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("significance", parents=[common],
                       help="exact paired test between two prediction files")
    _add_corpus_flags(p)
    p.add_argument("--pred-a")
    p.add_argument("--pred-b")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_significance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MwehateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
