"""Static word-vector export in the ``<count> <dim>`` text format.

``--model-id`` is either ``hash`` (deterministic vectors for every corpus
token) or a path to a source vector file in the same text format.  The
source is re-emitted filtered to the lowercased corpus vocabulary so
experiment archives stay small; tokens absent from the source are omitted,
which the consumer's unknown-token policy (zero vector) covers downstream.
"""

from __future__ import annotations

from typing import IO

from ._cli import build_parser, run_export
from .corpus import CorpusEntry, read_cleaned_corpus
from .errors import ExportError
from .hash_backend import digest_vector

WORD_DIM = 400


def corpus_vocabulary(entries: list[CorpusEntry]) -> set[str]:
    """The consumer looks word vectors up by lowercased surface form."""
    return {token.lower() for entry in entries for token in entry.tokens}


def _write_hash_vectors(vocab: list[str], out: IO[str]) -> None:
    out.write(f"{len(vocab)} {WORD_DIM}\n")
    for token in vocab:
        comps = " ".join(f"{x:.9g}" for x in digest_vector(f"word:{token}", WORD_DIM))
        out.write(f"{token} {comps}\n")


def _filter_source_vectors(source: IO[str], vocab: set[str], out: IO[str]) -> None:
    try:
        header = next(source)
    except StopIteration:
        raise ExportError("source vector file is empty (missing header)") from None
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ExportError("source vector header must be `<count> <dim>`")
    dim = int(parts[1])
    if dim != WORD_DIM:
        raise ExportError(f"source vectors have dim {dim}, expected {WORD_DIM}")
    kept: list[str] = []
    for lineno, raw in enumerate(source, start=2):
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != dim + 1:
            raise ExportError(
                f"source line {lineno}: expected 1 token + {dim} floats, "
                f"got {len(fields)} fields"
            )
        if fields[0] in vocab:
            kept.append(" ".join(fields))
    out.write(f"{len(kept)} {WORD_DIM}\n")
    for line in kept:
        out.write(line)
        out.write("\n")


def export_word_vectors(entries: list[CorpusEntry], model_id: str, out: IO[str]) -> None:
    vocab = corpus_vocabulary(entries)
    if model_id == "hash":
        _write_hash_vectors(sorted(vocab), out)
    else:
        try:
            with open(model_id, encoding="utf-8") as source:
                _filter_source_vectors(source, vocab, out)
        except FileNotFoundError:
            raise ExportError(
                f"source vector file {model_id!r} not found; pass a readable "
                "vector file path or --model-id hash for the offline stand-in"
            ) from None


def main(argv=None) -> int:
    parser = build_parser(
        "export-word-vectors",
        "Write a corpus-filtered static word-vector table in text format.",
    )

    def export(args):
        with open(args.corpus, encoding="utf-8") as fh:
            entries = read_cleaned_corpus(fh)
        with open(args.out, "w", encoding="utf-8") as out:
            export_word_vectors(entries, args.model_id, out)

    return run_export(parser, argv, export)


if __name__ == "__main__":
    raise SystemExit(main())
