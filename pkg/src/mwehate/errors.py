"""Exception types shared across the package.

All data/validation failures raise a subclass of MwehateError so the CLI can
map them to a single exit code.
"""


class MwehateError(Exception):
    pass


class LexiconError(MwehateError):
    """Malformed lexicon input; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CorpusError(MwehateError):
    pass


class StoreError(MwehateError):
    pass


class FeatureError(MwehateError):
    pass


class ShapeError(MwehateError):
    pass


class TrainingError(MwehateError):
    pass


class MetricsError(MwehateError):
    pass
