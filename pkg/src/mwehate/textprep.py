"""Tweet cleaning, tokenization, and lemmatization.

Cleaning removes mentions, hashtags, and URLs as whole whitespace-delimited
tokens and normalizes whitespace, keeping case.  Tokenization splits
leading/trailing punctuation into separate tokens but leaves word-internal
punctuation (contractions) alone.  Lemmatization is dictionary lookup plus a
small set of deterministic suffix rules.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CorpusError

_URL_PREFIXES = ("http://", "https://", "www.")

# Marker characters open a token that cleaning removes outright.  They are
# excluded from punctuation splitting so a stray marker can never surface as
# its own token after tokenization.
_MARKERS = "@#"


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _is_removable(token: str) -> bool:
    # Leading non-marker punctuation is transparent: ".@user" and "(http://x)"
    # count as a mention and a URL.
    i = 0
    while i < len(token) and _is_punct(token[i]) and token[i] not in _MARKERS:
        i += 1
    rest = token[i:]
    if rest.startswith(("@", "#")):
        return True
    return rest.lower().startswith(_URL_PREFIXES)


def clean_text(text: str) -> str:
    """Drop mention/hashtag/URL tokens, collapse whitespace, keep case."""
    kept = [tok for tok in text.split() if not _is_removable(tok)]
    return " ".join(kept)


def tokenize(text: str) -> list[str]:
    """Whitespace split, then peel leading/trailing punctuation into own tokens."""
    tokens: list[str] = []
    for chunk in text.split():
        lead: list[str] = []
        trail: list[str] = []
        start, end = 0, len(chunk)
        while start < end and _is_punct(chunk[start]) and chunk[start] not in _MARKERS:
            lead.append(chunk[start])
            start += 1
        while end > start and _is_punct(chunk[end - 1]) and chunk[end - 1] not in _MARKERS:
            trail.append(chunk[end - 1])
            end -= 1
        tokens.extend(lead)
        if start < end:
            tokens.append(chunk[start:end])
        tokens.extend(reversed(trail))
    return tokens


_VOWELS = "aeiou"


def _wants_final_e(stem: str) -> bool:
    # consonant-vowel-consonant ending usually dropped an -e ("mak", "hat")
    if len(stem) < 3:
        return False
    c1, v, c2 = stem[-3], stem[-2], stem[-1]
    return (
        c2 not in _VOWELS and c2 not in "wxy"
        and v in _VOWELS
        and c1 not in _VOWELS
    )


def _apply_suffix_rules(word: str) -> str:
    # Longest applicable suffix first; a rule whose guard fails falls through.
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("ing") and len(word) > 5:
        stem = word[:-3]
        return stem + "e" if _wants_final_e(stem) else stem
    if word.endswith("es") and len(word) > 3:
        stem = word[:-2]
        if stem.endswith(("x", "z", "s", "sh", "ch")):
            return stem
        return stem + "e"
    if word.endswith("ed") and len(word) > 3:
        stem = word[:-2]
        return stem + "e" if _wants_final_e(stem) else stem
    if word.endswith("s") and len(word) > 3 and not word.endswith(("ss", "is", "us")):
        return word[:-1]
    return word


def lemmatize(tokens: Iterable[str], lemma_dictionary: Mapping[str, str]) -> list[str]:
    """Lowercase each token, look it up, fall back to suffix rules, else identity."""
    lemmas = []
    for token in tokens:
        low = token.lower()
        lemmas.append(lemma_dictionary.get(low) or _apply_suffix_rules(low))
    return lemmas


@dataclass(frozen=True)
class RawTweet:
    id: str
    text: str
    label: int


@dataclass(frozen=True)
class CleanTweet:
    id: str
    surface_tokens: tuple[str, ...]
    lemmas: tuple[str, ...]
    label: int


def preprocess_tweet(tweet: RawTweet, lemma_dictionary: Mapping[str, str]) -> CleanTweet:
    surface = tokenize(clean_text(tweet.text))
    lemmas = lemmatize(surface, lemma_dictionary)
    return CleanTweet(tweet.id, tuple(surface), tuple(lemmas), tweet.label)


def preprocess_corpus(
    tweets: Iterable[RawTweet], lemma_dictionary: Mapping[str, str]
) -> list[CleanTweet]:
    return [preprocess_tweet(t, lemma_dictionary) for t in tweets]


def is_trainable(tweet: CleanTweet) -> bool:
    """Tweets kept for training contain at least two words after cleaning."""
    return len(tweet.surface_tokens) >= 2


@dataclass(frozen=True)
class DatasetConfig:
    """Maps a dataset's label vocabulary to class indices.

    ``drop_labels`` rows are discarded at load.  ``nonhateful_class`` is the
    class assigned to tweets that are empty after cleaning at test time.
    """

    name: str
    label_map: Mapping[str, int]
    drop_labels: frozenset[str] = frozenset()
    nonhateful_class: int = 0

    @property
    def n_classes(self) -> int:
        return max(self.label_map.values()) + 1


HATEVAL_LABELS = DatasetConfig("hateval", {"nonhateful": 0, "hateful": 1})
FOUNTA_LABELS = DatasetConfig(
    "founta",
    {"normal": 0, "abusive": 1, "hateful": 2},
    drop_labels=frozenset({"spam"}),
)

DATASET_CONFIGS = {c.name: c for c in (HATEVAL_LABELS, FOUNTA_LABELS)}


def load_corpus(lines: Iterable[str], config: DatasetConfig) -> list[RawTweet]:
    """Read JSON-lines tweets `{"id", "text", "label"}`; label strings mapped
    through the dataset config, drop-labeled rows removed."""
    tweets: list[RawTweet] = []
    seen_ids: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: invalid JSON ({exc})") from None
        try:
            tweet_id, text, label_str = obj["id"], obj["text"], obj["label"]
        except (KeyError, TypeError):
            raise CorpusError(f"line {lineno}: expected object with id/text/label") from None
        if label_str in config.drop_labels:
            continue
        if label_str not in config.label_map:
            raise CorpusError(f"line {lineno}: unknown label {label_str!r} for {config.name}")
        if tweet_id in seen_ids:
            raise CorpusError(f"line {lineno}: duplicate tweet id {tweet_id!r}")
        seen_ids.add(tweet_id)
        tweets.append(RawTweet(str(tweet_id), text, config.label_map[label_str]))
    return tweets


def load_lemma_dictionary(lines: Iterable[str]) -> dict[str, str]:
    """Read a `token<TAB>lemma` TSV, lowercase both sides."""
    table: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0].strip() or not fields[1].strip():
            raise CorpusError(f"line {lineno}: expected `token<TAB>lemma`")
        table[fields[0].strip().lower()] = fields[1].strip().lower()
    return table
