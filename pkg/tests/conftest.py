import sys
from pathlib import Path

import pytest

from mwehate.lexicon import load_lexicon
from mwehate.textprep import load_lemma_dictionary

# so tests can import the shared reference module as a plain module
sys.path.insert(0, str(Path(__file__).parent))

FIXTURE_DIR = Path(__file__).parent.parent / "fixtures" / "synthetic"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def synth_lexicon():
    with open(FIXTURE_DIR / "lexicon.tsv", encoding="utf-8") as fh:
        return load_lexicon(fh)


@pytest.fixture(scope="session")
def synth_lemma_dict():
    with open(FIXTURE_DIR / "lemmas.tsv", encoding="utf-8") as fh:
        return load_lemma_dictionary(fh)


@pytest.fixture(scope="session")
def synth_corpus_lines():
    with open(FIXTURE_DIR / "corpus.jsonl", encoding="utf-8") as fh:
        return fh.readlines()
