import io

import pytest
from hypothesis import given, strategies as st

from mwehate.errors import CorpusError
from mwehate.textprep import (
    DATASET_CONFIGS,
    FOUNTA_LABELS,
    HATEVAL_LABELS,
    RawTweet,
    clean_text,
    is_trainable,
    lemmatize,
    load_corpus,
    load_lemma_dictionary,
    preprocess_tweet,
    tokenize,
)


class TestCleanText:
    def test_removes_mentions_hashtags_urls(self):
        text = "@user I really think #winning http://x.co is fine"
        assert clean_text(text) == "I really think is fine"

    def test_url_prefixes(self):
        assert clean_text("see https://a.b ok") == "see ok"
        assert clean_text("see www.a.b ok") == "see ok"
        assert clean_text("see WWW.A.B ok") == "see ok"

    def test_leading_punctuation_is_transparent(self):
        # the reply style ".@user" and wrapped URLs still count as removable
        assert clean_text(".@user hi") == "hi"
        assert clean_text('"(http://x.co)" hi') == "hi"
        assert clean_text("...#tag hi") == "hi"

    def test_keeps_case_and_inner_tokens(self):
        assert clean_text("The CAT sat") == "The CAT sat"
        # mid-token markers are not mention starts
        assert clean_text("a@b stays") == "a@b stays"

    def test_collapses_whitespace(self):
        assert clean_text("a\t b \n c") == "a b c"

    def test_empty_results(self):
        assert clean_text("@a #b http://c") == ""
        assert clean_text("") == ""


class TestTokenize:
    def test_splits_edge_punctuation(self):
        assert tokenize("Hello, world!") == ["Hello", ",", "world", "!"]

    def test_inner_punctuation_kept(self):
        assert tokenize("don't re-do") == ["don't", "re-do"]

    def test_multiple_edge_marks_in_order(self):
        assert tokenize('"(wow)."') == ['"', "(", "wow", ")", ".", '"']

    def test_all_punctuation_chunk(self):
        assert tokenize("?!") == ["?", "!"]

    def test_markers_never_peeled(self):
        # '@'/'#' are not split off, so no bare marker token can appear
        assert tokenize("a@ b#") == ["a@", "b#"]

    @given(st.text())
    def test_tokens_nonempty_and_cover_chunks(self, text):
        tokens = tokenize(text)
        assert all(tokens)
        assert "".join(tokens) == "".join(text.split())


@given(st.text())
def test_cleaned_text_has_no_removable_tokens(text):
    tokens = tokenize(clean_text(text))
    for tok in tokens:
        assert not tok.startswith(("@", "#"))
        assert not tok.lower().startswith(("http://", "https://", "www."))


@given(st.text())
def test_clean_text_idempotent(text):
    once = clean_text(text)
    assert clean_text(once) == once


class TestLemmatize:
    @pytest.mark.parametrize("word,lemma", [
        ("cities", "city"),
        ("ties", "tie"),
        ("making", "make"),
        ("walking", "walk"),
        ("boxes", "box"),
        ("dishes", "dish"),
        ("hated", "hate"),
        ("walked", "walk"),
        ("cats", "cat"),
        ("this", "this"),
        ("pass", "pass"),
        ("virus", "virus"),
        ("go", "go"),
        ("ing", "ing"),
    ])
    def test_suffix_rules(self, word, lemma):
        assert lemmatize([word], {}) == [lemma]

    def test_dictionary_wins_over_rules(self):
        assert lemmatize(["went", "Making"], {"went": "go", "making": "craft"}) == [
            "go", "craft",
        ]

    def test_lowercases_input(self):
        assert lemmatize(["Cats"], {}) == ["cat"]

    @given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=10))
    def test_never_empty_or_longer_than_input_plus_one(self, word):
        (lemma,) = lemmatize([word], {})
        assert lemma
        assert len(lemma) <= len(word) + 1


def test_preprocess_tweet_keeps_surface_case():
    tweet = RawTweet("t1", "@u The dogs BARKED, loudly! #x", 1)
    clean = preprocess_tweet(tweet, {})
    assert clean.surface_tokens == ("The", "dogs", "BARKED", ",", "loudly", "!")
    assert clean.lemmas == ("the", "dog", "bark", ",", "loudly", "!")
    assert clean.label == 1


def test_is_trainable_needs_two_tokens():
    make = lambda toks: preprocess_tweet(RawTweet("t", " ".join(toks), 0), {})
    assert not is_trainable(make([]))
    assert not is_trainable(make(["one"]))
    assert is_trainable(make(["two", "words"]))


class TestDatasetConfigs:
    def test_hateval(self):
        assert HATEVAL_LABELS.n_classes == 2
        assert HATEVAL_LABELS.label_map["hateful"] == 1
        assert HATEVAL_LABELS.nonhateful_class == 0

    def test_founta_drops_spam(self):
        assert FOUNTA_LABELS.n_classes == 3
        assert "spam" in FOUNTA_LABELS.drop_labels

    def test_registry(self):
        assert set(DATASET_CONFIGS) == {"hateval", "founta"}


class TestLoadCorpus:
    def test_round_trip(self):
        lines = [
            '{"id": "a", "text": "hi there", "label": "hateful"}\n',
            "\n",
            '{"id": "b", "text": "bye", "label": "nonhateful"}\n',
        ]
        tweets = load_corpus(lines, HATEVAL_LABELS)
        assert [(t.id, t.label) for t in tweets] == [("a", 1), ("b", 0)]

    def test_founta_spam_dropped(self):
        lines = [
            '{"id": "a", "text": "x", "label": "spam"}\n',
            '{"id": "b", "text": "y", "label": "abusive"}\n',
        ]
        tweets = load_corpus(lines, FOUNTA_LABELS)
        assert [(t.id, t.label) for t in tweets] == [("b", 1)]

    @pytest.mark.parametrize("line,fragment", [
        ("{not json}\n", "invalid JSON"),
        ('{"id": "a", "text": "x"}\n', "id/text/label"),
        ('{"id": "a", "text": "x", "label": "meh"}\n', "unknown label"),
    ])
    def test_errors_carry_line_numbers(self, line, fragment):
        lines = ['{"id": "z", "text": "ok", "label": "hateful"}\n', line]
        with pytest.raises(CorpusError) as exc:
            load_corpus(lines, HATEVAL_LABELS)
        assert "line 2" in str(exc.value)
        assert fragment in str(exc.value)

    def test_duplicate_id(self):
        lines = [
            '{"id": "a", "text": "x", "label": "hateful"}\n',
            '{"id": "a", "text": "y", "label": "hateful"}\n',
        ]
        with pytest.raises(CorpusError, match="duplicate"):
            load_corpus(lines, HATEVAL_LABELS)


class TestLemmaDictionary:
    def test_parse(self):
        text = "# comment\nWent\tGo\nchildren\tchild\n"
        table = load_lemma_dictionary(io.StringIO(text))
        assert table == {"went": "go", "children": "child"}

    def test_bad_line(self):
        with pytest.raises(CorpusError, match="line 1"):
            load_lemma_dictionary(io.StringIO("went go\n"))
