import io

import pytest

from mwehate.corpus_stats import (
    ClassCounts,
    category_class_counts,
    category_partition,
    histogram_percentages,
    mwe_per_tweet_histogram,
    write_class_counts_csv,
    write_histogram_csv,
    write_partition_csv,
)
from mwehate.errors import CorpusError
from mwehate.lexicon import CategoryStats, Lexicon, LexiconEntry, MweCategory
from mwehate.mwe_tagger import MweMatch, TaggedSentence, TokenTag


def make_lexicon() -> Lexicon:
    return Lexicon([
        LexiconEntry(("kick", "bucket"), MweCategory.VERBAL_IDIOM),
        LexiconEntry(("give", "up"), MweCategory.FULL_VERB_PARTICLE),
        LexiconEntry(("of", "course"), MweCategory.ADVERB),
    ])


def tagged(n_lemmas: int, matches: list[MweMatch]) -> TaggedSentence:
    lemmas = tuple(f"w{i}" for i in range(n_lemmas))
    tags = [TokenTag.no_mwe()] * n_lemmas
    return TaggedSentence(lemmas, tuple(tags), tuple(matches))


def m(entry_id: int, *positions: int) -> MweMatch:
    return MweMatch(entry_id, positions)


class TestHistogram:
    def test_counts_matches_per_tweet(self):
        sentences = [
            tagged(4, []),
            tagged(4, [m(0, 0, 1)]),
            tagged(6, [m(0, 0, 1), m(1, 2, 3)]),
            tagged(4, []),
        ]
        assert mwe_per_tweet_histogram(sentences) == {0: 2, 1: 1, 2: 1}

    def test_empty_corpus(self):
        assert mwe_per_tweet_histogram([]) == {}

    def test_keys_sorted(self):
        sentences = [tagged(6, [m(0, 0, 1), m(1, 2, 3)]), tagged(4, [])]
        assert list(mwe_per_tweet_histogram(sentences)) == [0, 2]

    def test_percentages_sum_to_100(self):
        hist = {0: 2, 1: 1, 2: 1}
        pct = histogram_percentages(hist)
        assert pct == {0: 50.0, 1: 25.0, 2: 25.0}
        assert sum(pct.values()) == pytest.approx(100.0)

    def test_percentages_of_empty(self):
        assert histogram_percentages({}) == {}


class TestCategoryPartition:
    def test_entry_in_both_classes_pools_all_occurrences(self):
        lex = make_lexicon()
        labeled = [
            (tagged(4, [m(0, 0, 1)]), 0),
            (tagged(4, [m(0, 0, 1)]), 1),
        ]
        stats = category_partition(labeled, lex)
        assert stats[MweCategory.VERBAL_IDIOM] == CategoryStats(0, 0, 2)

    def test_single_class_entries(self):
        lex = make_lexicon()
        labeled = [
            (tagged(4, [m(0, 0, 1)]), 1),
            (tagged(4, [m(0, 0, 1)]), 1),
            (tagged(4, [m(0, 0, 1)]), 1),
            (tagged(4, [m(1, 0, 1)]), 0),
        ]
        stats = category_partition(labeled, lex)
        assert stats[MweCategory.VERBAL_IDIOM] == CategoryStats(3, 0, 0)
        assert stats[MweCategory.FULL_VERB_PARTICLE] == CategoryStats(0, 1, 0)

    def test_partition_identity_per_category(self):
        """hateful_only + nonhateful_only + both equals total occurrences."""
        lex = make_lexicon()
        labeled = [
            (tagged(8, [m(0, 0, 1), m(1, 3, 4)]), 1),
            (tagged(8, [m(0, 0, 1), m(2, 3, 4)]), 0),
            (tagged(8, [m(2, 0, 1)]), 1),
        ]
        stats = category_partition(labeled, lex)
        by_cat = {MweCategory.VERBAL_IDIOM: 2, MweCategory.FULL_VERB_PARTICLE: 1,
                  MweCategory.ADVERB: 2}
        for cat, expected_total in by_cat.items():
            assert stats[cat].total == expected_total

    def test_distinct_entry_bucketing_not_per_occurrence(self):
        # entry 0 appears twice, once per class -> all 2 occurrences are "both"
        lex = make_lexicon()
        labeled = [(tagged(4, [m(0, 0, 1)]), 0), (tagged(4, [m(0, 0, 1)]), 1)]
        stats = category_partition(labeled, lex)
        assert stats[MweCategory.VERBAL_IDIOM].both == 2
        assert stats[MweCategory.VERBAL_IDIOM].hateful_only == 0

    def test_all_real_categories_present(self):
        stats = category_partition([], make_lexicon())
        assert len(stats) == 20
        assert MweCategory.NO_MWE not in stats
        assert all(s == CategoryStats(0, 0, 0) for s in stats.values())

    def test_non_binary_label_rejected(self):
        with pytest.raises(CorpusError, match="binary"):
            category_partition([(tagged(2, []), 2)], make_lexicon())


class TestClassCounts:
    def test_raw_occurrence_counts(self):
        lex = make_lexicon()
        labeled = [
            (tagged(8, [m(0, 0, 1), m(0, 3, 4)]), 1),
            (tagged(4, [m(0, 0, 1)]), 0),
            (tagged(4, [m(2, 0, 1)]), 0),
        ]
        counts = category_class_counts(labeled, lex)
        assert counts[MweCategory.VERBAL_IDIOM] == ClassCounts(hateful=2, nonhateful=1)
        assert counts[MweCategory.ADVERB] == ClassCounts(hateful=0, nonhateful=1)
        assert counts[MweCategory.FULL_VERB_PARTICLE] == ClassCounts(0, 0)

    def test_non_binary_label_rejected(self):
        with pytest.raises(CorpusError):
            category_class_counts([(tagged(2, []), -1)], make_lexicon())

    def test_totals_match_partition_totals(self):
        lex = make_lexicon()
        labeled = [
            (tagged(8, [m(0, 0, 1), m(1, 3, 4)]), 1),
            (tagged(8, [m(0, 0, 1), m(2, 3, 4)]), 0),
        ]
        partition = category_partition(labeled, lex)
        counts = category_class_counts(labeled, lex)
        for cat in partition:
            assert partition[cat].total == counts[cat].hateful + counts[cat].nonhateful


class TestCsvOutput:
    def test_histogram_csv(self):
        buf = io.StringIO()
        write_histogram_csv({0: 2, 1: 1, 2: 1}, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "count,tweets,percent"
        assert lines[1] == "0,2,50.000000"
        assert lines[2] == "1,1,25.000000"
        assert lines[3] == "2,1,25.000000"

    def test_partition_csv_sorted_by_category_value(self):
        stats = category_partition([], make_lexicon())
        buf = io.StringIO()
        write_partition_csv(stats, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "category,hateful_only,nonhateful_only,both"
        names = [line.split(",")[0] for line in lines[1:]]
        assert names == sorted(names)
        assert len(names) == 20

    def test_class_counts_csv(self):
        lex = make_lexicon()
        counts = category_class_counts([(tagged(4, [m(0, 0, 1)]), 1)], lex)
        buf = io.StringIO()
        write_class_counts_csv(counts, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "category,hateful,nonhateful"
        row = next(line for line in lines if line.startswith("VerbalIdiom,"))
        assert row == "VerbalIdiom,1,0"

    def test_csv_deterministic(self):
        lex = make_lexicon()
        labeled = [(tagged(4, [m(0, 0, 1)]), 1), (tagged(4, [m(1, 0, 1)]), 0)]
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            write_partition_csv(category_partition(labeled, lex), buf)
            outs.append(buf.getvalue())
        assert outs[0] == outs[1]
