"""Sentence-vector export: one ``{"id", "vec"}`` JSON line per tweet, in
corpus order.

The encoded text is the cleaned tokens joined with single spaces, matching
what the downstream classifier was trained against.  Tweets whose cleaning
removed every token get the zero vector without touching the encoder.
"""

from __future__ import annotations

import json
from typing import IO

import numpy as np

from ._cli import batched, build_parser, run_export
from .corpus import CorpusEntry, read_cleaned_corpus
from .errors import ExportError
from .hash_backend import HashSentenceEncoder

SENTENCE_DIM = 512


class _HubSentenceEncoder:
    """TF-Hub universal sentence encoder wrapper (loaded lazily)."""

    def __init__(self, module):
        self._module = module
        self.dim = SENTENCE_DIM

    def encode_batch(self, texts: list[str]) -> np.ndarray:
        return np.asarray(self._module(texts))


def load_encoder(model_id: str):
    if model_id == "hash":
        return HashSentenceEncoder(SENTENCE_DIM)
    try:
        import tensorflow_hub
    except ImportError:
        raise ExportError(
            "sentence encoder backend needs the tensorflow_hub package; install it "
            "and pass a local SavedModel path or hub URL as --model-id, or use "
            "--model-id hash for the deterministic offline stand-in"
        ) from None
    try:
        module = tensorflow_hub.load(model_id)
    except Exception as exc:
        raise ExportError(f"could not load sentence encoder {model_id!r}: {exc}") from None
    return _HubSentenceEncoder(module)


def export_sentence_vectors(
    entries: list[CorpusEntry], encoder, out: IO[str], batch_size: int = 32
) -> None:
    for chunk in batched(entries, batch_size):
        texts = [" ".join(e.tokens) for e in chunk if e.tokens]
        encoded = encoder.encode_batch(texts) if texts else np.zeros((0, SENTENCE_DIM))
        if encoded.shape[0] and encoded.shape[1] != SENTENCE_DIM:
            raise ExportError(
                f"encoder produced dim {encoded.shape[1]}, expected {SENTENCE_DIM}"
            )
        it = iter(encoded)
        for entry in chunk:
            vec = next(it) if entry.tokens else np.zeros(SENTENCE_DIM)
            out.write(json.dumps({"id": entry.tweet_id, "vec": [float(x) for x in vec]}))
            out.write("\n")


def main(argv=None) -> int:
    parser = build_parser(
        "export-sentence-vectors",
        "Write per-tweet sentence vectors as JSONL ({id, vec} per line).",
    )

    def export(args):
        with open(args.corpus, encoding="utf-8") as fh:
            entries = read_cleaned_corpus(fh)
        encoder = load_encoder(args.model_id)
        with open(args.out, "w", encoding="utf-8") as out:
            export_sentence_vectors(entries, encoder, out, args.batch_size)

    return run_export(parser, argv, export)


if __name__ == "__main__":
    raise SystemExit(main())
