import json

import numpy as np
import pytest

from mwehate.embed_store import SyntheticSentenceVectors, SyntheticWordVectors
from mwehate.errors import CorpusError, TrainingError
from mwehate.featurize import FeatureLimits, FeatureStores
from mwehate.lexicon import Lexicon, LexiconEntry, MweCategory, category_group
from mwehate.pipeline import (
    ExperimentConfig,
    carve_validation,
    load_config_file,
    predict_test,
    run_experiment,
    select_best_seed,
    split_corpus,
    write_experiment_outputs,
)
from mwehate.tensornet import Hyperparams, ModelConfig, ThreeBranchModel, load_checkpoint
from mwehate.textprep import CleanTweet


def ct(i: int, lemmas, label: int = 0) -> CleanTweet:
    toks = tuple(lemmas)
    return CleanTweet(f"t{i}", toks, toks, label)


def make_corpus(n: int = 30) -> list[CleanTweet]:
    """Half the tweets carry `kick bucket` and the hateful label."""
    corpus = []
    fillers = ["dog", "cat", "run", "walk", "tree", "bird"]
    for i in range(n):
        base = [fillers[i % 6], fillers[(i + 1) % 6], fillers[(i + 2) % 6]]
        if i % 2 == 0:
            corpus.append(ct(i, ["kick", "bucket"] + base, label=1))
        else:
            corpus.append(ct(i, base, label=0))
    return corpus


def make_lexicon() -> Lexicon:
    return Lexicon([
        LexiconEntry(("kick", "bucket"), MweCategory.VERBAL_IDIOM),
        LexiconEntry(("give", "up"), MweCategory.FULL_VERB_PARTICLE),
    ])


def make_stores(sentence_dim: int = 8, word_dim: int = 6) -> FeatureStores:
    return FeatureStores(
        sentence=SyntheticSentenceVectors(sentence_dim, seed=0),
        word=SyntheticWordVectors(word_dim, seed=0),
    )


SMALL_LIMITS = FeatureLimits(max_tokens=8, max_mwe_tokens=2)
FAST_HP = Hyperparams(max_epochs=2, patience=5, batch_size=8)


class TestSplitCorpus:
    def test_fraction_sizes(self):
        split = split_corpus(make_corpus(30), seed=0)
        assert len(split.train) + len(split.dropped_train) == 18
        assert len(split.dev) + len(split.dropped_dev) == 6
        assert len(split.test) == 6

    def test_reconstitutes_input_exactly(self):
        corpus = make_corpus(20) + [ct(100, ["solo"]), ct(101, [])]
        split = split_corpus(corpus, seed=3)
        seen = [t.id for part in (split.train, split.dropped_train, split.dev,
                                  split.dropped_dev, split.test) for t in part]
        assert sorted(seen) == sorted(t.id for t in corpus)
        assert len(seen) == len(set(seen))

    def test_deterministic_per_seed(self):
        corpus = make_corpus(25)
        a = split_corpus(corpus, seed=7)
        b = split_corpus(corpus, seed=7)
        c = split_corpus(corpus, seed=8)
        assert a == b
        assert a != c

    def test_short_tweets_dropped_from_train_and_dev_only(self):
        # every tweet is a single token: train/dev land in the drop lists
        corpus = [ct(i, ["x"]) for i in range(10)]
        split = split_corpus(corpus, seed=0)
        assert split.train == () and split.dev == ()
        assert len(split.dropped_train) == 6 and len(split.dropped_dev) == 2
        assert len(split.test) == 2  # test keeps everything

    def test_counts_variant_remainder_goes_to_test(self):
        split = split_corpus(make_corpus(10), counts=(3, 2), seed=0)
        assert len(split.train) + len(split.dropped_train) == 3
        assert len(split.dev) + len(split.dropped_dev) == 2
        assert len(split.test) == 5

    def test_counts_exceeding_corpus(self):
        with pytest.raises(CorpusError, match="exceed"):
            split_corpus(make_corpus(5), counts=(4, 2))

    def test_negative_counts(self):
        with pytest.raises(CorpusError, match="non-negative"):
            split_corpus(make_corpus(5), counts=(-1, 2))

    def test_bad_fractions(self):
        with pytest.raises(CorpusError, match="sum to 1"):
            split_corpus(make_corpus(5), fractions=(0.5, 0.2, 0.2))


class TestCarveValidation:
    def test_takes_tail(self):
        tweets = tuple(ct(i, ["a", "b"]) for i in range(5))
        head, tail = carve_validation(tweets, 2)
        assert [t.id for t in head] == ["t0", "t1", "t2"]
        assert [t.id for t in tail] == ["t3", "t4"]

    @pytest.mark.parametrize("count", [0, -1, 5, 6])
    def test_invalid_counts(self, count):
        tweets = tuple(ct(i, ["a", "b"]) for i in range(5))
        with pytest.raises(CorpusError):
            carve_validation(tweets, count)


class TestSelectBestSeed:
    def test_argmax_with_offset(self):
        assert select_best_seed([0.1, 0.5, 0.3], base_seed=40) == 41

    def test_tie_goes_to_lowest_seed(self):
        assert select_best_seed([0.5, 0.5, 0.5], base_seed=0) == 0
        assert select_best_seed([0.2, 0.5, 0.5], base_seed=10) == 11

    def test_empty_rejected(self):
        with pytest.raises(TrainingError):
            select_best_seed([], 0)


class TestExperimentConfig:
    def test_unknown_mode(self):
        with pytest.raises(TrainingError, match="mode"):
            ExperimentConfig(mode="bert")

    def test_nonpositive_seeds(self):
        with pytest.raises(TrainingError, match="n_seeds"):
            ExperimentConfig(n_seeds=0)


class TestPredictTest:
    def test_empty_tweets_get_nonhateful_without_model(self):
        # the model is None: proof that empty tweets never reach it
        empties = [CleanTweet("e1", (), (), 1), CleanTweet("e2", (), (), 0)]
        out = predict_test(
            None, empties, make_lexicon(), category_group("mwe5_vmwe5"),
            make_stores(), SMALL_LIMITS, nonhateful_class=0,
        )
        assert np.array_equal(out, [0, 0])

    def test_mixed_batch_keeps_corpus_order(self):
        group = category_group("mwe5_vmwe5")
        stores = make_stores()
        config = ModelConfig(
            onehot_cols=len(group.column_order()),
            mwe_embed_dim=stores.word.dim,
            sentence_dim=stores.sentence.dim,
            n_classes=2,
            max_tokens=SMALL_LIMITS.max_tokens,
            max_mwe_tokens=SMALL_LIMITS.max_mwe_tokens,
        )
        model = ThreeBranchModel(config)
        # zero head -> model always answers class 0; empty rule answers 1
        for layer in (model.dense1, model.dense2, model.out):
            for key in layer.params:
                layer.params[key] = np.zeros_like(layer.params[key])
        tweets = [
            ct(0, ["dog", "cat"]),
            CleanTweet("empty", (), (), 0),
            ct(1, ["kick", "bucket"]),
        ]
        out = predict_test(model, tweets, make_lexicon(), group, stores,
                           SMALL_LIMITS, nonhateful_class=1)
        assert np.array_equal(out, [0, 1, 0])


class TestLoadConfigFile:
    def test_key_value_format(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# a comment\nmode = static\n\nn_seeds=3\n")
        assert load_config_file(path) == {"mode": "static", "n_seeds": "3"}

    def test_json_format(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"mode": "static", "n_seeds": 3}\n')
        assert load_config_file(path) == {"mode": "static", "n_seeds": "3"}

    def test_malformed_line_reports_number(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("mode=static\nbogus line\n")
        with pytest.raises(CorpusError, match="line 2"):
            load_config_file(path)

    def test_json_non_object_rejected(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("{}")
        assert load_config_file(path) == {}
        path.write_text("[1, 2]")
        # a JSON array is not a config; list text does not start with '{'
        with pytest.raises(CorpusError):
            load_config_file(path)


@pytest.fixture(scope="module")
def mini_experiment():
    split = split_corpus(make_corpus(30), seed=0)
    config = ExperimentConfig(
        group="mwe5_vmwe5", mode="static", n_seeds=2, base_seed=0,
        hyperparams=FAST_HP, limits=SMALL_LIMITS,
    )
    result = run_experiment(split, make_lexicon(), make_stores(), 2, config,
                            class_names=("nonhateful", "hateful"))
    return split, config, result


class TestRunExperiment:
    def test_shapes_of_result(self, mini_experiment):
        split, config, result = mini_experiment
        assert len(result.dev_scores) == 2
        assert len(result.histories) == 2
        assert result.selected_seed in (0, 1)
        assert len(result.test_predictions) == len(split.test)

    def test_selected_seed_is_dev_argmax(self, mini_experiment):
        _, config, result = mini_experiment
        assert result.selected_seed == select_best_seed(result.dev_scores, config.base_seed)

    def test_report_schema(self, mini_experiment):
        split, config, result = mini_experiment
        report = result.report
        assert report["group"] == "mwe5_vmwe5"
        assert report["mode"] == "static"
        assert report["n_seeds"] == 2
        assert report["selected_seed"] == result.selected_seed
        assert set(report["dev_macro_f1_per_seed"]) == {"0", "1"}
        ev = report["evaluation"]
        assert ev["n"] == len(split.test)
        assert set(ev["per_class_f1"]) == {"nonhateful", "hateful"}
        assert np.array(ev["confusion"]).shape == (2, 2)
        assert sum(sum(row) for row in ev["confusion"]) == len(split.test)
        for row in ev["confusion_percent"]:
            assert sum(row) == pytest.approx(100.0) or sum(row) == 0.0
        assert 0.0 <= ev["macro_f1"] <= 1.0

    def test_subset_report_restricts_to_tagged_tweets(self, mini_experiment):
        split, _, result = mini_experiment
        sub = result.report_subset
        assert sub["subset"] == "tweets_with_mwe"
        n_with_mwe = sum(1 for t in split.test if "kick" in t.lemmas)
        assert sub["evaluation"]["n"] == n_with_mwe

    def test_deterministic_end_to_end(self, mini_experiment):
        split, config, result = mini_experiment
        again = run_experiment(split, make_lexicon(), make_stores(), 2, config,
                               class_names=("nonhateful", "hateful"))
        assert again.report == result.report
        assert again.report_subset == result.report_subset
        assert again.test_predictions == result.test_predictions

    def test_sentence_only_needs_no_word_store(self):
        split = split_corpus(make_corpus(20), seed=1)
        stores = FeatureStores(sentence=SyntheticSentenceVectors(8, seed=0))
        config = ExperimentConfig(
            mode="sentence-only", n_seeds=1, hyperparams=FAST_HP, limits=SMALL_LIMITS,
        )
        result = run_experiment(split, make_lexicon(), stores, 2, config)
        assert result.model.lstm is None and not result.model.conv_blocks

    def test_static_mode_requires_word_store(self):
        split = split_corpus(make_corpus(20), seed=1)
        stores = FeatureStores(sentence=SyntheticSentenceVectors(8, seed=0))
        config = ExperimentConfig(mode="static", n_seeds=1,
                                  hyperparams=FAST_HP, limits=SMALL_LIMITS)
        with pytest.raises(TrainingError, match="word-vector store"):
            run_experiment(split, make_lexicon(), stores, 2, config)

    def test_contextual_mode_requires_contextual_store(self):
        split = split_corpus(make_corpus(20), seed=1)
        config = ExperimentConfig(mode="contextual", n_seeds=1,
                                  hyperparams=FAST_HP, limits=SMALL_LIMITS)
        with pytest.raises(TrainingError, match="contextual"):
            run_experiment(split, make_lexicon(), make_stores(), 2, config)


class TestWriteOutputs:
    def test_files_written_and_loadable(self, mini_experiment, tmp_path):
        _, config, result = mini_experiment
        out = tmp_path / "run"
        write_experiment_outputs(result, out)
        names = {p.name for p in out.iterdir()}
        assert names == {"report.json", "report_subset.json",
                         "history_0.json", "history_1.json", "model_best.json"}
        report = json.loads((out / "report.json").read_text())
        assert report == result.report
        hist = json.loads((out / "history_0.json").read_text())
        assert hist["seed"] == 0
        assert len(hist["epochs"]) == len(result.histories[0].history)
        with open(out / "model_best.json") as fh:
            ckpt = load_checkpoint(fh)
        assert ckpt.metadata == {"selected_seed": result.selected_seed,
                                 "group": "mwe5_vmwe5", "mode": "static"}
        for name, value in result.model.get_weights().items():
            assert np.array_equal(value, ckpt.weights[name])

    def test_outputs_byte_stable(self, mini_experiment, tmp_path):
        _, _, result = mini_experiment
        a, b = tmp_path / "a", tmp_path / "b"
        write_experiment_outputs(result, a)
        write_experiment_outputs(result, b)
        for name in ("report.json", "report_subset.json", "model_best.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()
