"""Hate-speech classification with multiword-expression features.

The package turns a raw tweet corpus plus an MWE lexicon into three feature
branches (per-token MWE category one-hots, embeddings of the MWE member
tokens, a sentence vector), trains a small three-branch network on them with
a multi-seed protocol, and reports macro-F1 with an exact paired
significance test.
"""

from .errors import (
    CorpusError,
    FeatureError,
    LexiconError,
    MetricsError,
    MwehateError,
    ShapeError,
    StoreError,
    TrainingError,
)
from .lexicon import (
    CategoryGroup,
    CategoryStats,
    Lexicon,
    LexiconEntry,
    MweCategory,
    category_group,
    filter_categories_by_stats,
    load_lexicon,
    serialize_lexicon,
)
from .textprep import (
    DATASET_CONFIGS,
    CleanTweet,
    DatasetConfig,
    RawTweet,
    clean_text,
    is_trainable,
    lemmatize,
    load_corpus,
    load_lemma_dictionary,
    preprocess_corpus,
    preprocess_tweet,
    tokenize,
)
from .mwe_tagger import (
    GAP_BUDGET,
    MweMatch,
    TaggedSentence,
    TokenTag,
    find_candidate_matches,
    resolve_overlaps,
    tag_sentence,
)
from .embed_store import (
    ContextualEntry,
    ContextualVectorStore,
    SentenceVectorStore,
    SyntheticSentenceVectors,
    SyntheticWordVectors,
    WordVectorStore,
    load_contextual_vectors,
    load_sentence_vectors,
    load_word_vectors,
    serialize_word_vectors,
    synth_vector,
)
from .featurize import (
    ExampleFeatures,
    FeatureLimits,
    FeatureStores,
    assemble_dataset,
    mwe_embedding_sequence,
    onehot_sequence,
)
from .metrics import (
    PairedComparison,
    accuracy,
    compare_predictions,
    confusion_matrix,
    exact_binomial_p,
    macro_f1,
    per_class_f1,
)
from .corpus_stats import (
    ClassCounts,
    category_class_counts,
    category_partition,
    histogram_percentages,
    mwe_per_tweet_histogram,
)
from .pipeline import (
    CorpusSplit,
    ExperimentConfig,
    ExperimentResult,
    carve_validation,
    predict_test,
    run_experiment,
    select_best_seed,
    split_corpus,
    write_experiment_outputs,
)
from . import tensornet

__version__ = "0.1.0"

__all__ = [
    "CategoryGroup",
    "CategoryStats",
    "ClassCounts",
    "CleanTweet",
    "ContextualEntry",
    "ContextualVectorStore",
    "CorpusError",
    "CorpusSplit",
    "DATASET_CONFIGS",
    "DatasetConfig",
    "ExampleFeatures",
    "ExperimentConfig",
    "ExperimentResult",
    "FeatureError",
    "FeatureLimits",
    "FeatureStores",
    "GAP_BUDGET",
    "Lexicon",
    "LexiconEntry",
    "LexiconError",
    "MetricsError",
    "MweCategory",
    "MweMatch",
    "MwehateError",
    "PairedComparison",
    "RawTweet",
    "SentenceVectorStore",
    "ShapeError",
    "StoreError",
    "SyntheticSentenceVectors",
    "SyntheticWordVectors",
    "TaggedSentence",
    "TokenTag",
    "TrainingError",
    "WordVectorStore",
    "accuracy",
    "assemble_dataset",
    "carve_validation",
    "category_class_counts",
    "category_group",
    "category_partition",
    "clean_text",
    "compare_predictions",
    "confusion_matrix",
    "exact_binomial_p",
    "filter_categories_by_stats",
    "find_candidate_matches",
    "histogram_percentages",
    "is_trainable",
    "lemmatize",
    "load_contextual_vectors",
    "load_corpus",
    "load_lemma_dictionary",
    "load_lexicon",
    "load_sentence_vectors",
    "load_word_vectors",
    "macro_f1",
    "mwe_embedding_sequence",
    "mwe_per_tweet_histogram",
    "onehot_sequence",
    "per_class_f1",
    "predict_test",
    "preprocess_corpus",
    "preprocess_tweet",
    "resolve_overlaps",
    "run_experiment",
    "select_best_seed",
    "serialize_lexicon",
    "serialize_word_vectors",
    "split_corpus",
    "synth_vector",
    "tag_sentence",
    "tensornet",
    "tokenize",
    "write_experiment_outputs",
]
