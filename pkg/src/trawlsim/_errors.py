"""Exception types shared across the toolkit."""


class TrawlSimError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(TrawlSimError, ValueError):
    """Invalid specification, configuration or argument."""


class RegimeError(TrawlSimError):
    """Operation invoked outside the limit regime it implements."""


class AccuracyError(TrawlSimError):
    """A requested tolerance could not be certified.

    ``achieved`` carries the best error bound that was reached.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class UnsupportedSpecError(TrawlSimError):
    """Specification outside what this operation supports."""


class WindowError(TrawlSimError):
    """Estimator window is ill-conditioned.

    ``suggested`` carries a usable (low, high) range when one exists.
    """

    def __init__(self, message, suggested=None):
        super().__init__(message)
        self.suggested = suggested


class FormatError(TrawlSimError):
    """Malformed ensemble file."""
