"""Exception types shared across the package.

The CLI maps these onto its exit codes: format errors exit 64, guard
violations exit 65.
"""


class GraphFormatError(ValueError):
    """A graph/walk/map file or literal is malformed.

    Carries the offending line number when one is known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GuardExceeded(RuntimeError):
    """A size guard was hit before the computation was attempted."""
