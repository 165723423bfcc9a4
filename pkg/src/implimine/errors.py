"""Semantic exception hierarchy.

Public functions never raise bare ``ValueError``; every failure mode maps to
one of the classes below so the CLI can translate it into a stable exit code
(config error -> 2, input/usage error -> 3).
"""


class ImplimineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(ImplimineError):
    """Invalid parameters or settings: bad operator parameters, degenerate
    partitions, thresholds outside their domain."""


class UsageError(ImplimineError):
    """A call that violates an operation's contract: empty inputs, unknown
    labels, mismatched vocabularies, guard limits exceeded."""


class IngestionError(ImplimineError):
    """Unreadable or malformed input data (CSV files, rule-set files)."""
