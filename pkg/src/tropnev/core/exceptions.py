"""
Custom exceptions for tropnev.
"""

from typing import Optional


class TropNevException(Exception):
    """Base exception for tropnev."""

    pass


class ValidationError(TropNevException):
    """Raised when validation fails."""

    pass


class ConfigurationError(TropNevException):
    """Raised when configuration is invalid."""

    pass


class BottomDivisor(TropNevException):
    """Raised when dividing by the tropical zero (-inf)."""

    pass


class NegativePowerOfBottom(TropNevException):
    """Raised when -inf is raised to a negative tropical power."""

    pass


class NotSquare(TropNevException):
    """Raised when a square matrix is required."""

    pass


class BadPartition(TropNevException):
    """Raised when index sets do not partition the family or all coefficients are bottom."""

    pass


class DimMismatch(TropNevException):
    """Raised when a point or vector does not match the ambient dimension."""

    pass


class ZeroQ(TropNevException):
    """Raised when a q-scaling by zero is requested."""

    pass


class BadScale(TropNevException):
    """Raised when a q-Casorati scale factor is 0 or 1."""

    pass


class BudgetExceeded(TropNevException):
    """Raised when a slicer or an expansion exceeds its configured budget."""

    pass


class BadSize(TropNevException):
    """Raised when a quadrature size or dimension is invalid."""

    pass


class DegenerateGrid(TropNevException):
    """Raised when an r-grid is too short for a growth estimate."""

    pass


class ArityMismatch(TropNevException):
    """Raised when a hypersurface and a map disagree on the number of coordinates."""

    pass


class DegenerateMap(TropNevException):
    """Raised when a map appears to lie inside a tropical hypersurface."""

    pass


class NotComplete(TropNevException):
    """Raised when a complete homogeneous polynomial is required."""

    pass


class BoundedCharacteristic(TropNevException):
    """Raised when the characteristic does not grow over the grid."""

    pass


class TooFewHypersurfaces(TropNevException):
    """Raised when fewer hypersurfaces than the target dimension are supplied."""

    pass


class ParseError(TropNevException):
    """Raised when an expression or document cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class AboveLfWarning(UserWarning):
    """Emitted when a value is not below the minimum of f over its poles."""

    pass
