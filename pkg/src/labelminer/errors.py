"""Exception types shared across the package.

DataError covers malformed input content (bad labels, broken records);
callers that map errors to process exit codes rely on the distinction
between content errors and everything else.
"""


class LabelMinerError(Exception):
    """Base class for all errors raised by this package."""


class DataError(LabelMinerError):
    """Malformed input content (bad label, broken record, bad vector row)."""


class CorpusError(DataError):
    """Problems while building the transaction database."""


class PatternError(LabelMinerError):
    """Invalid pattern structure (non-disjoint clauses, unknown token id)."""


class PatternSyntaxError(DataError):
    """Unparseable pattern text; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class EmbeddingError(DataError):
    """Malformed word-vector input."""


class SynthError(LabelMinerError):
    """Infeasible synthetic-benchmark specification."""
