"""Descriptive statistics over a tagged corpus: matches-per-tweet histogram,
the per-category hateful/non-hateful/both partition, and raw per-class
occurrence counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .errors import CorpusError
from .lexicon import CategoryStats, Lexicon, MweCategory
from .mwe_tagger import TaggedSentence

LabeledTagged = tuple[TaggedSentence, int]

_REAL_CATEGORIES = tuple(sorted(
    (c for c in MweCategory if c is not MweCategory.NO_MWE),
    key=lambda c: c.value,
))


def mwe_per_tweet_histogram(tagged: Iterable[TaggedSentence]) -> dict[int, int]:
    """Maps number of matches in a tweet to how many tweets have that many."""
    hist: dict[int, int] = {}
    for sentence in tagged:
        k = len(sentence.matches)
        hist[k] = hist.get(k, 0) + 1
    return dict(sorted(hist.items()))


def histogram_percentages(hist: dict[int, int]) -> dict[int, float]:
    total = sum(hist.values())
    if total == 0:
        return {}
    return {k: 100.0 * v / total for k, v in sorted(hist.items())}


def _check_binary(label: int) -> int:
    if label not in (0, 1):
        raise CorpusError(f"expected binary labels (0/1), got {label}")
    return label


def category_partition(
    labeled: Sequence[LabeledTagged], lexicon: Lexicon
) -> dict[MweCategory, CategoryStats]:
    """Partitions distinct lexicon entries by the label set they occur in and
    sums occurrence counts within each bucket.  Label 1 is the hateful class.
    """
    per_entry: dict[int, list[int]] = {}
    for sentence, label in labeled:
        _check_binary(label)
        for match in sentence.matches:
            counts = per_entry.setdefault(match.entry_id, [0, 0])
            counts[label] += 1
    stats = {c: [0, 0, 0] for c in _REAL_CATEGORIES}
    for entry_id, (in_nonhateful, in_hateful) in per_entry.items():
        category = lexicon.entries[entry_id].category
        bucket = stats[category]
        if in_hateful and in_nonhateful:
            bucket[2] += in_hateful + in_nonhateful
        elif in_hateful:
            bucket[0] += in_hateful
        else:
            bucket[1] += in_nonhateful
    return {
        c: CategoryStats(hateful_only=h, nonhateful_only=n, both=b)
        for c, (h, n, b) in stats.items()
    }


@dataclass(frozen=True)
class ClassCounts:
    hateful: int
    nonhateful: int


def category_class_counts(
    labeled: Sequence[LabeledTagged], lexicon: Lexicon
) -> dict[MweCategory, ClassCounts]:
    """Raw occurrence counts per category per class (no distinct-entry
    bucketing)."""
    counts = {c: [0, 0] for c in _REAL_CATEGORIES}
    for sentence, label in labeled:
        _check_binary(label)
        for match in sentence.matches:
            category = lexicon.entries[match.entry_id].category
            counts[category][label] += 1
    return {
        c: ClassCounts(hateful=h, nonhateful=n)
        for c, (n, h) in counts.items()
    }


def write_histogram_csv(hist: dict[int, int], out: IO[str]) -> None:
    percents = histogram_percentages(hist)
    out.write("count,tweets,percent\n")
    for k, v in sorted(hist.items()):
        out.write(f"{k},{v},{percents[k]:.6f}\n")


def write_partition_csv(stats: dict[MweCategory, CategoryStats], out: IO[str]) -> None:
    out.write("category,hateful_only,nonhateful_only,both\n")
    for category in sorted(stats, key=lambda c: c.value):
        s = stats[category]
        out.write(f"{category.value},{s.hateful_only},{s.nonhateful_only},{s.both}\n")


def write_class_counts_csv(counts: dict[MweCategory, ClassCounts], out: IO[str]) -> None:
    out.write("category,hateful,nonhateful\n")
    for category in sorted(counts, key=lambda c: c.value):
        c = counts[category]
        out.write(f"{category.value},{c.hateful},{c.nonhateful}\n")
