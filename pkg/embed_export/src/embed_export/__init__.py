"""Offline exporters for the three embedding-store file formats the
classification pipeline reads: per-tweet sentence vectors, per-subword
contextual vectors with word alignment, and a static word-vector table.

The file formats are the entire contract with the consumer; nothing else is
shared.  Each exporter is runnable as ``python -m embed_export.<name>`` and
takes ``--corpus`` (the cleaned-corpus JSONL the tagging CLI's ``preprocess``
subcommand emits), ``--out``, ``--model-id``, and ``--batch-size``.
"""

from .errors import ExportError

__all__ = ["ExportError"]
