"""Exception types shared across the package."""


class SGAError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ValidationError(SGAError, ValueError):
    """An input violates an axiom; the message names the witness."""


class CapExceeded(SGAError):
    """A computation would exceed a configured size cap."""
