"""Exception hierarchy shared by every module."""


class TwSparseError(Exception):
    """Base class for package errors."""


class NotFoundError(TwSparseError, KeyError):
    """An edit or query referenced a vertex or edge id that does not exist."""

    def __str__(self):
        return Exception.__str__(self)


class InfeasibleError(TwSparseError):
    """A routing request has no solution.

    ``cut`` holds a vertex set of size smaller than the demand whose removal
    separates what is left of the sources from what is left of the sinks.
    """

    def __init__(self, message, cut=frozenset()):
        super().__init__(message)
        self.cut = frozenset(cut)


class InvariantError(TwSparseError):
    """A structural invariant that must hold on the input was violated."""


class ProtocolError(TwSparseError):
    """The cut-matching game received an illegal move."""


class FormatError(TwSparseError, ValueError):
    """A serialized artifact could not be parsed."""


class VersionError(FormatError):
    """A serialized artifact carries an unsupported schema version."""


class CertificateError(TwSparseError):
    """A certificate does not match the witnesses it claims to summarize."""
