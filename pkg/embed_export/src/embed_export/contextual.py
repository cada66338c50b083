"""Contextual-vector export: per tweet, the encoder's subword tokens, their
alignment to the cleaned words, and one last-layer vector per subword.

Output line: ``{"id", "tokens", "word_index", "vecs"}``.  ``word_index[i]``
is the position of the cleaned word subword i came from; the sequence is
non-decreasing and must cover every word position, otherwise the export
aborts naming the tweet.  Encoder special tokens are dropped because they
align to no word.
"""

from __future__ import annotations

import json
from typing import IO

import numpy as np

from ._cli import batched, build_parser, run_export
from .corpus import CorpusEntry, read_cleaned_corpus
from .errors import ExportError
from .hash_backend import HashContextualEncoder

CONTEXTUAL_DIM = 768


class _TransformerContextualEncoder:
    """Hugging Face encoder wrapper; last hidden layer, fast-tokenizer
    word alignment."""

    def __init__(self, tokenizer, model, torch):
        self._tokenizer = tokenizer
        self._model = model
        self._torch = torch
        self.dim = CONTEXTUAL_DIM

    def encode_batch(self, word_lists):
        enc = self._tokenizer(
            word_lists, is_split_into_words=True, padding=True, truncation=True,
            return_tensors="pt",
        )
        with self._torch.no_grad():
            hidden = self._model(**enc).last_hidden_state
        if hidden.shape[-1] != CONTEXTUAL_DIM:
            raise ExportError(
                f"encoder last layer has width {hidden.shape[-1]}, expected {CONTEXTUAL_DIM}"
            )
        results = []
        for i in range(len(word_lists)):
            tokens = self._tokenizer.convert_ids_to_tokens(enc["input_ids"][i])
            subwords, word_index, rows = [], [], []
            for j, word_pos in enumerate(enc.word_ids(i)):
                if word_pos is None:  # special or padding token
                    continue
                subwords.append(tokens[j])
                word_index.append(word_pos)
                rows.append(hidden[i, j].numpy())
            results.append((subwords, word_index,
                            np.array(rows) if rows else np.zeros((0, self.dim))))
        return results


def load_encoder(model_id: str):
    if model_id == "hash":
        return HashContextualEncoder(CONTEXTUAL_DIM)
    try:
        import torch
        from transformers import AutoModel, AutoTokenizer
    except ImportError:
        raise ExportError(
            "contextual encoder backend needs the transformers and torch packages; "
            "install them and pass a model id or local path as --model-id, or use "
            "--model-id hash for the deterministic offline stand-in"
        ) from None
    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id, use_fast=True)
        model = AutoModel.from_pretrained(model_id)
    except Exception as exc:
        raise ExportError(f"could not load contextual encoder {model_id!r}: {exc}") from None
    model.eval()
    return _TransformerContextualEncoder(tokenizer, model, torch)


def export_contextual_vectors(
    entries: list[CorpusEntry], encoder, out: IO[str], batch_size: int = 32
) -> None:
    for chunk in batched(entries, batch_size):
        nonempty = [e for e in chunk if e.tokens]
        encoded = iter(encoder.encode_batch([list(e.tokens) for e in nonempty])
                       if nonempty else [])
        for entry in chunk:
            if entry.tokens:
                subwords, word_index, vectors = next(encoded)
                covered = set(word_index)
                missing = [p for p in range(len(entry.tokens)) if p not in covered]
                if missing:
                    raise ExportError(
                        f"tweet {entry.tweet_id!r}: alignment failure, word positions "
                        f"{missing} have no subword (text may exceed the encoder limit)"
                    )
                if any(b < a for a, b in zip(word_index, word_index[1:])):
                    raise ExportError(
                        f"tweet {entry.tweet_id!r}: alignment failure, word_index "
                        "not non-decreasing"
                    )
            else:
                subwords, word_index, vectors = [], [], np.zeros((0, encoder.dim))
            out.write(json.dumps({
                "id": entry.tweet_id,
                "tokens": list(subwords),
                "word_index": list(word_index),
                "vecs": [[float(x) for x in row] for row in vectors],
            }))
            out.write("\n")


def main(argv=None) -> int:
    parser = build_parser(
        "export-contextual-vectors",
        "Write per-subword contextual vectors with word alignment as JSONL.",
    )

    def export(args):
        with open(args.corpus, encoding="utf-8") as fh:
            entries = read_cleaned_corpus(fh)
        encoder = load_encoder(args.model_id)
        with open(args.out, "w", encoding="utf-8") as out:
            export_contextual_vectors(entries, encoder, out, args.batch_size)

    return run_export(parser, argv, export)


if __name__ == "__main__":
    raise SystemExit(main())
