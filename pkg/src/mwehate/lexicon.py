"""MWE lexicon: category taxonomy, TSV loading, and the occurrence/share filter.

Lexicon files are UTF-8 TSV, one entry per line::

    lemma1 lemma2[ lemma3...]<TAB>CategoryName

Blank lines and lines starting with ``#`` are skipped.  Category names are the
exact labels of :class:`MweCategory`.  Entry order is preserved on load; it is
the tie-break of last resort during overlap resolution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import LexiconError


class MweCategory(enum.Enum):
    """The 20 MWE lexical categories plus the distinguished NoMwe tag."""

    ADJECTIVE = "Adjective"
    ADVERB = "Adverb"
    DISCOURSE = "Discourse"
    NOMINAL = "Nominal"
    ADPOSITION_PHRASE = "AdpositionPhrase"
    INHERENTLY_ADPOSITIONAL_VERB = "InherentlyAdpositionalVerb"
    FULL_LIGHT_VERB_CONSTRUCTION = "FullLightVerbConstruction"
    VERBAL_IDIOM = "VerbalIdiom"
    FULL_VERB_PARTICLE = "FullVerbParticle"
    SEMI_VERB_PARTICLE = "SemiVerbParticle"
    AUXILIARY = "Auxiliary"
    COORDINATING_CONJUNCTION = "CoordinatingConjunction"
    DETERMINER = "Determiner"
    INFINITIVE_MARKER = "InfinitiveMarker"
    ADPOSITION = "Adposition"
    NON_POSSESSIVE_PRONOUN = "NonPossessivePronoun"
    SUBORDINATING_CONJUNCTION = "SubordinatingConjunction"
    CAUSE_LIGHT_VERB_CONSTRUCTION = "CauseLightVerbConstruction"
    SYMBOL = "Symbol"
    INTERJECTION = "Interjection"
    NO_MWE = "NoMwe"

    @classmethod
    def from_name(cls, name: str) -> "MweCategory":
        try:
            return cls(name)
        except ValueError:
            raise LexiconError(f"unknown category name {name!r}") from None


MWE5 = frozenset({
    MweCategory.ADJECTIVE,
    MweCategory.ADVERB,
    MweCategory.DISCOURSE,
    MweCategory.NOMINAL,
    MweCategory.ADPOSITION_PHRASE,
})

VMWE5 = frozenset({
    MweCategory.INHERENTLY_ADPOSITIONAL_VERB,
    MweCategory.FULL_LIGHT_VERB_CONSTRUCTION,
    MweCategory.VERBAL_IDIOM,
    MweCategory.FULL_VERB_PARTICLE,
    MweCategory.SEMI_VERB_PARTICLE,
})

# Categories with no occurrences in the tweet corpora; excluded from MWEall.
UNUSED_CATEGORIES = frozenset({MweCategory.SYMBOL, MweCategory.INTERJECTION})

MWE_ALL = frozenset(
    c for c in MweCategory
    if c is not MweCategory.NO_MWE and c not in UNUSED_CATEGORIES
)


@dataclass(frozen=True)
class LexiconEntry:
    """An MWE: an ordered sequence of >= 2 lowercase lemmas and its category."""

    lemmas: tuple[str, ...]
    category: MweCategory


@dataclass(frozen=True)
class CategoryGroup:
    """A named, fixed set of active MWE categories."""

    selector: str
    categories: frozenset[MweCategory]

    def column_order(self) -> list[MweCategory]:
        """Category -> one-hot column mapping: sorted by name, NoMwe last."""
        return sorted(self.categories, key=lambda c: c.value) + [MweCategory.NO_MWE]


_GROUPS = {
    "mweall": CategoryGroup("MWEall", MWE_ALL),
    "mwe5": CategoryGroup("MWE5", MWE5),
    "vmwe5": CategoryGroup("VMWE5", VMWE5),
    "mwe5_vmwe5": CategoryGroup("MWE5_VMWE5", MWE5 | VMWE5),
}


def category_group(selector: str) -> CategoryGroup:
    """Return the fixed category set for a selector (case-insensitive)."""
    try:
        return _GROUPS[selector.lower()]
    except KeyError:
        valid = ", ".join(g.selector for g in _GROUPS.values())
        raise LexiconError(f"unknown category group {selector!r} (valid: {valid})") from None


class Lexicon:
    """Immutable indexed list of lexicon entries.

    ``first_lemma_index`` maps each entry's first lemma to the ids of all
    entries starting with it, in entry order.
    """

    def __init__(self, entries: Iterable[LexiconEntry]):
        self.entries: list[LexiconEntry] = list(entries)
        index: dict[str, list[int]] = {}
        for i, entry in enumerate(self.entries):
            index.setdefault(entry.lemmas[0], []).append(i)
        self.first_lemma_index: dict[str, tuple[int, ...]] = {
            lemma: tuple(ids) for lemma, ids in index.items()
        }

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lexicon) and self.entries == other.entries

    def entry(self, entry_id: int) -> LexiconEntry:
        return self.entries[entry_id]


def load_lexicon(source: Iterable[str]) -> Lexicon:
    """Parse lexicon TSV from an iterable of lines (e.g. an open text file).

    Raises LexiconError (with line number) on: unknown category, entries with
    fewer than 2 lemmas, empty lemmas, NoMwe entries, malformed lines, and
    duplicate (lemmas, category) pairs.
    """
    entries: list[LexiconEntry] = []
    seen: set[tuple[tuple[str, ...], MweCategory]] = set()
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise LexiconError("expected `lemmas<TAB>category`", line=lineno)
        lemma_field, category_name = fields
        lemmas = tuple(tok.lower() for tok in lemma_field.split())
        if len(lemmas) < 2:
            raise LexiconError("entry has fewer than 2 lemmas", line=lineno)
        try:
            category = MweCategory.from_name(category_name.strip())
        except LexiconError as exc:
            raise LexiconError(str(exc), line=lineno) from None
        if category is MweCategory.NO_MWE:
            raise LexiconError("NoMwe is not a valid entry category", line=lineno)
        key = (lemmas, category)
        if key in seen:
            raise LexiconError(
                f"duplicate entry {' '.join(lemmas)!r} / {category.value}", line=lineno
            )
        seen.add(key)
        entries.append(LexiconEntry(lemmas, category))
    return Lexicon(entries)


def serialize_lexicon(lexicon: Lexicon) -> str:
    """Inverse of load_lexicon: TSV text preserving entry order."""
    return "".join(
        f"{' '.join(e.lemmas)}\t{e.category.value}\n" for e in lexicon.entries
    )


@dataclass(frozen=True)
class CategoryStats:
    """Occurrence counts of one category, partitioned by class membership."""

    hateful_only: int
    nonhateful_only: int
    both: int

    @property
    def total(self) -> int:
        return self.hateful_only + self.nonhateful_only + self.both


def filter_categories_by_stats(
    stats: Mapping[MweCategory, CategoryStats],
    min_occurrences: int,
    max_both_share: float,
) -> set[MweCategory]:
    """Keep categories with total > min_occurrences and both/total <= max_both_share.

    The share comparison is inclusive so that a category sitting exactly on the
    threshold survives.  Categories with zero occurrences are always excluded.
    """
    kept = set()
    for category, s in stats.items():
        if s.total == 0:
            continue
        if s.total > min_occurrences and s.both / s.total <= max_both_share:
            kept.add(category)
    return kept
