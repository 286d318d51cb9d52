"""Exception hierarchy shared across the toolkit."""


class MorphalignError(Exception):
    """Base class for all toolkit errors."""


class InputError(MorphalignError):
    """Bad runtime input: empty corpora, mismatched words, missing columns."""


class ConfigError(MorphalignError):
    """Invalid configuration: impossible vocab targets, bad generator specs."""


class FormatError(MorphalignError):
    """Malformed file contents; message carries path/line context."""


class StatError(MorphalignError):
    """Statistical preconditions violated: undersized groups, rank deficiency."""


class DatasetTooSmall(InputError):
    """Raised when a finalized dataset has fewer items than the required floor."""

    def __init__(self, count: int, minimum: int):
        self.count = count
        self.minimum = minimum
        super().__init__(f"dataset has {count} items, below the minimum of {minimum}")
