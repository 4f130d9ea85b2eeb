"""Exception types shared across the package.

The command-line interface maps these onto distinct exit codes, so
library code should raise the most specific type that applies.
"""


class SpinDropsError(Exception):
    """Base class for all package-specific errors."""


class FormatError(SpinDropsError):
    """Malformed input: files, expressions, or parameter values."""


class ScopeError(SpinDropsError):
    """Request outside the supported problem domain."""


class NumericalError(SpinDropsError):
    """A computation failed to meet its accuracy contract."""
