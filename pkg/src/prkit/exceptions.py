"""Exception types shared across the toolkit."""


class PRKitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(PRKitError, ValueError):
    """Invalid argument values or malformed in-memory data."""


class FormatError(PRKitError):
    """A file does not conform to an expected on-disk format."""


class CorruptionError(FormatError):
    """A file has a valid header but an inconsistent payload."""
