"""Precomputed embedding stores: static word vectors, per-tweet sentence
vectors, per-tweet contextual token vectors, plus deterministic synthetic
stand-ins for desk-scale runs.

Word vectors use the text format ``<count> <dim>`` header followed by
``<token> <v1> ... <vdim>`` lines.  Sentence and contextual vectors are
JSON-lines; see the loader docstrings.  All stores are immutable after load.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .errors import StoreError


class WordVectorStore:
    """token -> vector table; unknown tokens map to the zero vector."""

    def __init__(self, dim: int, table: dict[str, np.ndarray]):
        if dim <= 0:
            raise StoreError("word vector dim must be positive")
        self.dim = dim
        self.table = table
        self._zero = np.zeros(dim)

    def __len__(self) -> int:
        return len(self.table)

    def get(self, token: str) -> np.ndarray:
        return self.table.get(token, self._zero)


def load_word_vectors(lines: Iterable[str]) -> WordVectorStore:
    it = iter(lines)
    try:
        header = next(it)
    except StopIteration:
        raise StoreError("empty word vector file (missing header)") from None
    parts = header.split()
    if len(parts) != 2:
        raise StoreError("word vector header must be `<count> <dim>`")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise StoreError("word vector header must be `<count> <dim>`") from None
    table: dict[str, np.ndarray] = {}
    for lineno, raw in enumerate(it, start=2):
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != dim + 1:
            raise StoreError(
                f"line {lineno}: expected 1 token + {dim} floats, got {len(fields)} fields"
            )
        try:
            vec = np.array([float(x) for x in fields[1:]])
        except ValueError:
            raise StoreError(f"line {lineno}: non-numeric vector component") from None
        table[fields[0]] = vec
    if len(table) != count:
        raise StoreError(f"header promised {count} entries, file has {len(table)}")
    return WordVectorStore(dim, table)


def serialize_word_vectors(store: WordVectorStore, out: IO[str]) -> None:
    """Write the text format back out, 9 significant digits per component."""
    out.write(f"{len(store.table)} {store.dim}\n")
    for token, vec in store.table.items():
        comps = " ".join(f"{x:.9g}" for x in vec)
        out.write(f"{token} {comps}\n")


class SentenceVectorStore:
    """tweet id -> sentence vector."""

    def __init__(self, dim: int, table: dict[str, np.ndarray]):
        self.dim = dim
        self.table = table

    def __len__(self) -> int:
        return len(self.table)

    def __contains__(self, tweet_id: str) -> bool:
        return tweet_id in self.table

    def get(self, tweet_id: str) -> np.ndarray:
        try:
            return self.table[tweet_id]
        except KeyError:
            raise StoreError(f"no sentence vector for tweet id {tweet_id!r}") from None


def load_sentence_vectors(lines: Iterable[str]) -> SentenceVectorStore:
    """JSONL `{"id": str, "vec": [floats]}`, uniform dim, unique ids."""
    table: dict[str, np.ndarray] = {}
    dim: int | None = None
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        obj = _parse_json_line(raw, lineno)
        try:
            tweet_id, vec = obj["id"], obj["vec"]
        except (KeyError, TypeError):
            raise StoreError(f"line {lineno}: expected object with id/vec") from None
        arr = _as_vector(vec, lineno)
        if dim is None:
            dim = len(arr)
        elif len(arr) != dim:
            raise StoreError(f"line {lineno}: vector has dim {len(arr)}, expected {dim}")
        if tweet_id in table:
            raise StoreError(f"line {lineno}: duplicate tweet id {tweet_id!r}")
        table[tweet_id] = arr
    if dim is None:
        raise StoreError("sentence vector file contains no entries")
    return SentenceVectorStore(dim, table)


@dataclass(frozen=True)
class ContextualEntry:
    """Subword tokens, their word alignment, and one vector per subword."""

    subword_tokens: tuple[str, ...]
    word_index: tuple[int, ...]
    vectors: np.ndarray  # [n_subwords, dim]


class ContextualVectorStore:
    """tweet id -> per-subword vectors with word alignment."""

    def __init__(self, dim: int, table: dict[str, ContextualEntry]):
        self.dim = dim
        self.table = table

    def __len__(self) -> int:
        return len(self.table)

    def __contains__(self, tweet_id: str) -> bool:
        return tweet_id in self.table

    def get(self, tweet_id: str) -> ContextualEntry:
        try:
            return self.table[tweet_id]
        except KeyError:
            raise StoreError(f"no contextual vectors for tweet id {tweet_id!r}") from None


def load_contextual_vectors(lines: Iterable[str]) -> ContextualVectorStore:
    """JSONL `{"id", "tokens", "word_index", "vecs"}`; tokens/word_index/vecs
    are parallel, word_index is non-decreasing, vectors have uniform dim."""
    table: dict[str, ContextualEntry] = {}
    dim: int | None = None
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        obj = _parse_json_line(raw, lineno)
        try:
            tweet_id = obj["id"]
            tokens = obj["tokens"]
            word_index = obj["word_index"]
            vecs = obj["vecs"]
        except (KeyError, TypeError):
            raise StoreError(
                f"line {lineno}: expected object with id/tokens/word_index/vecs"
            ) from None
        if not (len(tokens) == len(word_index) == len(vecs)):
            raise StoreError(
                f"line {lineno}: tokens/word_index/vecs lengths differ "
                f"({len(tokens)}/{len(word_index)}/{len(vecs)})"
            )
        if any(b < a for a, b in zip(word_index, word_index[1:])):
            raise StoreError(f"line {lineno}: word_index must be non-decreasing")
        rows = [_as_vector(v, lineno) for v in vecs]
        for row in rows:
            if dim is None:
                dim = len(row)
            elif len(row) != dim:
                raise StoreError(f"line {lineno}: vector has dim {len(row)}, expected {dim}")
        if tweet_id in table:
            raise StoreError(f"line {lineno}: duplicate tweet id {tweet_id!r}")
        vectors = np.array(rows) if rows else None
        table[tweet_id] = ContextualEntry(tuple(tokens), tuple(word_index), vectors)
    if dim is None:
        raise StoreError("contextual vector file contains no vectors")
    # entries with no subwords get a well-shaped empty matrix once dim is known
    for tweet_id, entry in table.items():
        if entry.vectors is None:
            table[tweet_id] = ContextualEntry(
                entry.subword_tokens, entry.word_index, np.zeros((0, dim))
            )
    return ContextualVectorStore(dim, table)


def _parse_json_line(raw: str, lineno: int) -> dict:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise StoreError(f"line {lineno}: invalid JSON ({exc})") from None


def _as_vector(values, lineno: int) -> np.ndarray:
    if not isinstance(values, list) or not all(isinstance(x, (int, float)) for x in values):
        raise StoreError(f"line {lineno}: vector must be a list of numbers")
    return np.array(values, dtype=float)


def synth_vector(key: str, dim: int, seed: int) -> np.ndarray:
    """Deterministic unit-norm pseudo-random vector for a string key.

    Stable across runs and platforms: the PRNG is seeded from a SHA-256 digest
    of (seed, key).
    """
    if dim <= 0:
        raise StoreError("synth_vector dim must be positive")
    digest = hashlib.sha256(f"{seed}:{key}".encode("utf-8")).digest()
    rng = np.random.Generator(np.random.PCG64(int.from_bytes(digest[:16], "little")))
    vec = rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


class SyntheticWordVectors:
    """Drop-in WordVectorStore replacement backed by synth_vector."""

    def __init__(self, dim: int, seed: int):
        self.dim = dim
        self.seed = seed

    def get(self, token: str) -> np.ndarray:
        return synth_vector(f"word:{token}", self.dim, self.seed)


class SyntheticSentenceVectors:
    """Drop-in SentenceVectorStore replacement backed by synth_vector."""

    def __init__(self, dim: int, seed: int):
        self.dim = dim
        self.seed = seed

    def __contains__(self, tweet_id: str) -> bool:
        return True

    def get(self, tweet_id: str) -> np.ndarray:
        return synth_vector(f"sent:{tweet_id}", self.dim, self.seed)
