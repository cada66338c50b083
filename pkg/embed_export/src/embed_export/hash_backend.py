"""Deterministic stand-in encoders, selected with ``--model-id hash``.

They exercise the full export path (batching, subword alignment, file
formats) without pretrained weights, so pipelines can be validated offline
and in CI.  The vectors are SHA-256-seeded pseudo-random noise and carry no
meaning; platform-stable because the PRNG is seeded from the digest alone.
"""

from __future__ import annotations

import hashlib

import numpy as np

SUBWORD_CHUNK = 4


def digest_vector(key: str, dim: int) -> np.ndarray:
    """Unit-norm vector derived only from the key string."""
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    rng = np.random.Generator(np.random.PCG64(int.from_bytes(digest[:16], "little")))
    vec = rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


class HashSentenceEncoder:
    def __init__(self, dim: int):
        self.dim = dim

    def encode_batch(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim))
        for i, text in enumerate(texts):
            words = text.split()
            if not words:
                continue
            mean = np.mean([digest_vector(f"tok:{w}", self.dim) for w in words], axis=0)
            norm = np.linalg.norm(mean)
            out[i] = mean / norm if norm > 0 else mean
        return out


def split_subwords(word: str) -> list[str]:
    """Fixed-width chunks of the lowercased word; words longer than the
    chunk width split into several subwords, mimicking wordpiece behavior."""
    lower = word.lower()
    return [lower[i:i + SUBWORD_CHUNK] for i in range(0, len(lower), SUBWORD_CHUNK)]


class HashContextualEncoder:
    def __init__(self, dim: int):
        self.dim = dim

    def encode_batch(
        self, word_lists: list[list[str]]
    ) -> list[tuple[list[str], list[int], np.ndarray]]:
        results = []
        for words in word_lists:
            subwords: list[str] = []
            word_index: list[int] = []
            for pos, word in enumerate(words):
                for sub in split_subwords(word):
                    subwords.append(sub)
                    word_index.append(pos)
            # the position in the key makes repeated subwords context-distinct
            vectors = np.array([
                digest_vector(f"ctx:{pos}:{sub}", self.dim)
                for sub, pos in zip(subwords, word_index)
            ]) if subwords else np.zeros((0, self.dim))
            results.append((subwords, word_index, vectors))
        return results
