"""Shared argument plumbing.  Exit codes mirror the consumer CLI's
convention: 0 success, 1 usage error, 2 data or environment error."""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Iterator, Sequence, TypeVar

from .errors import ExportError

T = TypeVar("T")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we own the code
        raise _UsageError(message)


def build_parser(prog: str, description: str) -> _Parser:
    parser = _Parser(prog=prog, description=description)
    parser.add_argument("--corpus", required=True,
                        help="cleaned-corpus JSONL ({id, tokens, ...} per line)")
    parser.add_argument("--out", required=True, help="output file path")
    parser.add_argument("--model-id", required=True,
                        help="encoder to use; `hash` selects the deterministic offline stand-in")
    parser.add_argument("--batch-size", type=int, default=32,
                        help="examples per encoder call (default 32)")
    return parser


def batched(seq: Sequence[T], size: int) -> Iterator[Sequence[T]]:
    for start in range(0, len(seq), size):
        yield seq[start:start + size]


def run_export(parser: _Parser, argv, export: Callable[[argparse.Namespace], None]) -> int:
    """Parses argv, runs the export, converts failures to exit codes."""
    try:
        args = parser.parse_args(argv)
        if args.batch_size < 1:
            raise _UsageError("--batch-size must be >= 1")
    except _UsageError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1
    try:
        export(args)
    except ExportError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 2
    return 0
