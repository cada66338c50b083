"""Reader for the cleaned-corpus JSONL (one ``{"id", "tokens", ...}`` object
per line, tokens being the cleaned surface forms)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import ExportError


@dataclass(frozen=True)
class CorpusEntry:
    tweet_id: str
    tokens: tuple[str, ...]


def read_cleaned_corpus(lines: Iterable[str]) -> list[CorpusEntry]:
    """Parses and validates; input order is preserved.

    Ids must be unique: the vector stores are keyed on them and their loaders
    reject duplicates, so the export aborts up front instead of emitting a
    file the consumer will refuse.
    """
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ExportError(f"line {lineno}: invalid JSON ({exc})") from None
        if not isinstance(obj, dict) or "id" not in obj or "tokens" not in obj:
            raise ExportError(f"line {lineno}: expected object with id/tokens")
        tweet_id, tokens = obj["id"], obj["tokens"]
        if not isinstance(tweet_id, str):
            raise ExportError(f"line {lineno}: id must be a string")
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise ExportError(f"line {lineno}: tokens must be a list of strings")
        if tweet_id in seen:
            raise ExportError(f"line {lineno}: duplicate tweet id {tweet_id!r}")
        seen.add(tweet_id)
        entries.append(CorpusEntry(tweet_id, tuple(tokens)))
    return entries
