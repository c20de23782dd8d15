"""Exception types raised across the package."""

from __future__ import annotations


class BitflipError(Exception):
    """Base class for all package errors."""


class NotLeftRegularError(BitflipError, ValueError):
    """Column weights of a parity-check matrix are not all equal."""

    def __init__(self, histogram: dict[int, int]):
        self.histogram = dict(sorted(histogram.items()))
        super().__init__(f"not left-regular: column weight histogram {self.histogram}")


class TrivialCodeError(BitflipError, ValueError):
    """The code has dimension 0, so the minimum distance is undefined."""


class InstanceTooLargeError(BitflipError):
    """An exhaustive enumeration exceeds its hard cap."""


class BudgetExceededError(BitflipError):
    """An exhaustive search would exceed the configured work budget."""


class NotPartialGeometryError(BitflipError, ValueError):
    """Two blocks share more than one point."""


class ConstructionError(BitflipError):
    """A construction failed one of its own postcondition checks."""


class AlistFormatError(BitflipError, ValueError):
    """Malformed alist text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateSpectrumError(BitflipError, ValueError):
    """The two top eigenvalues coincide, so a spectral bound is undefined."""


class ConvergenceError(BitflipError):
    """An iterative eigensolver did not converge within its sweep cap."""
