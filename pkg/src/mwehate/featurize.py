"""Per-tweet branch inputs: one-hot category sequence, MWE-member embedding
sequence, and sentence vector.

The one-hot column mapping is the group's categories sorted by name with NoMwe
last, so feature layouts are stable across runs and checkpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .embed_store import (
    ContextualVectorStore,
    SentenceVectorStore,
    SyntheticSentenceVectors,
    SyntheticWordVectors,
    WordVectorStore,
)
from .errors import FeatureError, StoreError
from .lexicon import CategoryGroup, Lexicon
from .mwe_tagger import TaggedSentence, tag_sentence
from .textprep import CleanTweet

MAX_TOKENS = 64
MAX_MWE_TOKENS = 16


@dataclass(frozen=True)
class FeatureLimits:
    max_tokens: int = MAX_TOKENS
    max_mwe_tokens: int = MAX_MWE_TOKENS


@dataclass(frozen=True)
class ExampleFeatures:
    """The three branch inputs plus the label for one tweet."""

    tweet_id: str
    onehot: np.ndarray        # [max_tokens, K+1]
    mwe_embeds: np.ndarray    # [max_mwe_tokens, E]
    mwe_len: int
    sentence_vec: np.ndarray  # [S]
    label: int


def onehot_sequence(
    tagged: TaggedSentence, group: CategoryGroup, max_tokens: int = MAX_TOKENS
) -> np.ndarray:
    """Row t one-hot encodes token t's category; rows past the sentence are zero."""
    columns = {cat: j for j, cat in enumerate(group.column_order())}
    out = np.zeros((max_tokens, len(columns)))
    for t, tag in enumerate(tagged.tags[:max_tokens]):
        out[t, columns[tag.category]] = 1.0
    return out


def mwe_embedding_sequence(
    tagged: TaggedSentence,
    tweet: CleanTweet,
    store,
    max_mwe_tokens: int = MAX_MWE_TOKENS,
) -> tuple[np.ndarray, int]:
    """Embed the tokens that belong to a selected MWE, in sentence order.

    With a word-vector store there is one row per MWE token, keyed by the
    lowercased surface form.  With a contextual store there is one row per
    subword of each MWE token, via the store's word_index alignment.
    """
    mwe_positions = [t for t, tag in enumerate(tagged.tags) if tag.occurrence_id is not None]
    rows: list[np.ndarray] = []
    if isinstance(store, ContextualVectorStore):
        try:
            entry = store.get(tweet.id)
        except StoreError as exc:
            raise FeatureError(str(exc)) from None
        wanted = set(mwe_positions)
        for sub_idx, word_pos in enumerate(entry.word_index):
            if word_pos in wanted:
                rows.append(entry.vectors[sub_idx])
    else:
        for pos in mwe_positions:
            rows.append(store.get(tweet.surface_tokens[pos].lower()))
    rows = rows[:max_mwe_tokens]
    out = np.zeros((max_mwe_tokens, store.dim))
    for i, row in enumerate(rows):
        out[i] = row
    return out, len(rows)


@dataclass(frozen=True)
class FeatureStores:
    """The embedding sources one experiment reads from."""

    sentence: SentenceVectorStore | SyntheticSentenceVectors
    word: WordVectorStore | SyntheticWordVectors | None = None
    contextual: ContextualVectorStore | None = None

    def mwe_store(self):
        if self.contextual is not None:
            return self.contextual
        if self.word is not None:
            return self.word
        raise FeatureError("no word or contextual store configured for the MWE branch")


def assemble_dataset(
    corpus: Sequence[CleanTweet],
    lexicon: Lexicon,
    group: CategoryGroup,
    stores: FeatureStores,
    limits: FeatureLimits = FeatureLimits(),
) -> list[ExampleFeatures]:
    """textprep output -> tagger -> branch features, corpus order preserved."""
    mwe_store = stores.mwe_store()
    examples: list[ExampleFeatures] = []
    for tweet in corpus:
        tagged = tag_sentence(tweet.lemmas, lexicon, group)
        onehot = onehot_sequence(tagged, group, limits.max_tokens)
        try:
            embeds, mwe_len = mwe_embedding_sequence(
                tagged, tweet, mwe_store, limits.max_mwe_tokens
            )
            sentence_vec = stores.sentence.get(tweet.id)
        except (FeatureError, StoreError) as exc:
            raise FeatureError(f"tweet {tweet.id!r}: {exc}") from None
        examples.append(
            ExampleFeatures(tweet.id, onehot, embeds, mwe_len, sentence_vec, tweet.label)
        )
    return examples


def features_to_json(example: ExampleFeatures) -> dict:
    """Debug dump of one example; not a stability guarantee."""
    return {
        "id": example.tweet_id,
        "label": example.label,
        "mwe_len": example.mwe_len,
        "onehot": example.onehot.tolist(),
        "mwe_embeds": example.mwe_embeds.tolist(),
        "sentence_vec": example.sentence_vec.tolist(),
    }
