"""Exception types shared across the package."""


class McgsError(Exception):
    """Base class for all package errors."""


class DomainError(McgsError):
    """Input is outside the mathematical domain of an operation."""


class UnsupportedGate(McgsError):
    """A gate kind the operation cannot handle."""


class ResourceError(McgsError):
    """The request exceeds a hard resource cap (e.g. dense simulation width)."""


class WidthMismatch(McgsError):
    """Two circuits with different widths were combined."""
