"""Exception types shared across the package."""


class TrendlabError(Exception):
    """Base class for all errors raised by this package."""


class EmptyDatasetError(TrendlabError):
    """Raised when an operation needs at least one link event and got none."""


class UnknownNodeError(TrendlabError):
    """Raised when a degree query names a node that never received a link."""


class NoEligibleNodesError(TrendlabError):
    """Raised when no node has received any link by the evaluation time."""


class SpanError(TrendlabError):
    """Raised when a requested time or sampling interval falls outside the data span."""


class PageRankConvergenceError(TrendlabError):
    """Power iteration did not reach the tolerance within the iteration cap.

    Carries the last L1 change between successive iterates as ``residual``.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class FormatError(TrendlabError):
    """Raised when an input file cannot be parsed under the declared format.

    ``lines`` holds the offending 1-based line numbers when they are known.
    """

    def __init__(self, message: str, lines: list[int] | None = None):
        super().__init__(message)
        self.lines = list(lines) if lines else []
