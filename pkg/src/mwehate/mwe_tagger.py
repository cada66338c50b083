"""Discontinuous MWE identification over lemma sequences.

An entry matches wherever its lemmas appear in order with at most
``GAP_BUDGET`` skipped tokens in total inside the span.  Overlapping
candidates are resolved greedily: longer entries claim their tokens first,
then fewer gaps, then leftmost position, then lexicon order.  Category
filtering happens after resolution so that statistics over all categories and
classification over a subgroup see the same segmentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lexicon import CategoryGroup, Lexicon, MweCategory

# Maximum number of non-member tokens allowed inside one occurrence.
GAP_BUDGET = 1


@dataclass(frozen=True)
class MweMatch:
    """One occurrence of a lexicon entry at strictly increasing positions."""

    entry_id: int
    token_positions: tuple[int, ...]

    @property
    def gap_count(self) -> int:
        first, last = self.token_positions[0], self.token_positions[-1]
        return (last - first + 1) - len(self.token_positions)


@dataclass(frozen=True)
class TokenTag:
    category: MweCategory
    occurrence_id: int | None

    @classmethod
    def no_mwe(cls) -> "TokenTag":
        return cls(MweCategory.NO_MWE, None)


@dataclass(frozen=True)
class TaggedSentence:
    lemmas: tuple[str, ...]
    tags: tuple[TokenTag, ...]
    matches: tuple[MweMatch, ...]


def find_candidate_matches(
    lemmas: Sequence[str], lexicon: Lexicon, gap_budget: int = GAP_BUDGET
) -> list[MweMatch]:
    """Enumerate every occurrence of every entry, overlaps included.

    Output order is (first position, entry id, gap count, positions).
    """
    candidates: list[MweMatch] = []
    for start, lemma in enumerate(lemmas):
        for entry_id in lexicon.first_lemma_index.get(lemma, ()):
            entry_lemmas = lexicon.entry(entry_id).lemmas
            _extend(lemmas, entry_lemmas, 1, (start,), gap_budget, entry_id, candidates)
    candidates.sort(
        key=lambda m: (m.token_positions[0], m.entry_id, m.gap_count, m.token_positions)
    )
    return candidates


def _extend(lemmas, entry_lemmas, next_idx, positions, budget_left, entry_id, out):
    if next_idx == len(entry_lemmas):
        out.append(MweMatch(entry_id, positions))
        return
    prev = positions[-1]
    # the next member lemma may sit up to budget_left tokens further right
    for pos in range(prev + 1, min(prev + 2 + budget_left, len(lemmas))):
        if lemmas[pos] == entry_lemmas[next_idx]:
            used = pos - prev - 1
            _extend(
                lemmas, entry_lemmas, next_idx + 1,
                positions + (pos,), budget_left - used, entry_id, out,
            )


def resolve_overlaps(candidates: Sequence[MweMatch], lexicon: Lexicon) -> list[MweMatch]:
    """Greedy token claiming: longest entry first, then fewest gaps, leftmost,
    lexicon order, positions.  The result is token-disjoint."""
    ranked = sorted(
        candidates,
        key=lambda m: (
            -len(lexicon.entry(m.entry_id).lemmas),
            m.gap_count,
            m.token_positions[0],
            m.entry_id,
            m.token_positions,
        ),
    )
    selected: list[MweMatch] = []
    claimed: set[int] = set()
    for match in ranked:
        if any(p in claimed for p in match.token_positions):
            continue
        selected.append(match)
        claimed.update(match.token_positions)
    return selected


def tag_sentence(
    lemmas: Sequence[str],
    lexicon: Lexicon,
    active_categories: CategoryGroup,
    gap_budget: int = GAP_BUDGET,
) -> TaggedSentence:
    """Find candidates, resolve overlaps, then drop matches whose category is
    not active.  Resolution is independent of the active set."""
    candidates = find_candidate_matches(lemmas, lexicon, gap_budget)
    resolved = resolve_overlaps(candidates, lexicon)
    kept = [
        m for m in resolved
        if lexicon.entry(m.entry_id).category in active_categories.categories
    ]
    tags = [TokenTag.no_mwe()] * len(lemmas)
    for occurrence_id, match in enumerate(kept):
        category = lexicon.entry(match.entry_id).category
        for pos in match.token_positions:
            tags[pos] = TokenTag(category, occurrence_id)
    return TaggedSentence(tuple(lemmas), tuple(tags), tuple(kept))
