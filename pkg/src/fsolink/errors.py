"""Exception types raised by the simulator.

ConfigError signals bad user input (config file or CLI values) and maps
to exit code 1; everything else derived from FsoLinkError maps to exit
code 2.
"""


class FsoLinkError(Exception):
    """Base class for all simulator errors."""


class ConfigError(FsoLinkError):
    """Config file or argument parse error, with optional line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidSeedError(FsoLinkError):
    """LFSR seed reduces to the all-zero (absorbing) state."""


class InvalidFormatError(FsoLinkError):
    """Modulation format tag is not one of the five supported values."""


class DegenerateSignalError(FsoLinkError):
    """Signal has no energy where some is required (e.g. all-zero drive)."""


class InvalidCutoffError(FsoLinkError):
    """Filter cutoff is at or above the Nyquist frequency."""


class InsufficientDataError(FsoLinkError):
    """Too few samples in a symbol class to form eye statistics."""


class InvalidSeriesError(FsoLinkError):
    """Chart series is empty, too short, or contains non-finite points."""


class RunFailedError(FsoLinkError):
    """A sweep point raised; the message carries the (format, value) pair."""
