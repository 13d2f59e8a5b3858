"""Exception hierarchy shared by every stage of the pipeline.

Each error class carries a stable ``exit_code`` so the CLI can map failures
to distinct process exit statuses (documented in the README).
"""


class PcsError(Exception):
    """Base class for all pipeline errors."""

    exit_code = 1


class EmptyQueryError(PcsError):
    """The query string contains no usable clause."""

    exit_code = 3


class UnterminatedPhraseError(PcsError):
    """A double quote was opened and never closed, or quotes do not wrap a whole clause."""

    exit_code = 4


class ApiUnreachableError(PcsError):
    """Transport-level failure talking to the patent search API, after retries."""

    exit_code = 5


class ApiSchemaMismatchError(PcsError):
    """The API response lacks fields the configured dialect requires."""

    exit_code = 6


class PageCapExceededError(PcsError):
    """The result set needs more pages than the configured cap allows."""

    exit_code = 7


class EmptyCorpusError(PcsError):
    """No citing patent carries a single dated reference."""

    exit_code = 8


class NoPositivePeakError(PcsError):
    """Every detrended/normalized score is <= 0, so no landmark can be declared."""

    exit_code = 9


class UnknownFixtureError(PcsError):
    """A named fixture does not exist in the fixtures directory."""

    exit_code = 10


class CacheError(PcsError):
    exit_code = 11


class CorruptEntryError(CacheError):
    """A cache entry failed checksum or parse validation."""


class StorageFullError(CacheError):
    """The cache device has no room for the entry."""


class PermissionDeniedError(CacheError):
    """The cache directory is not writable."""
