"""
Tests for tropnev.core.exceptions module.
"""

import pytest

from tropnev.core import exceptions
from tropnev.core.exceptions import AboveLfWarning, ParseError, TropNevException

DOMAIN_ERRORS = [
    "ValidationError",
    "ConfigurationError",
    "BottomDivisor",
    "NegativePowerOfBottom",
    "NotSquare",
    "BadPartition",
    "DimMismatch",
    "ZeroQ",
    "BadScale",
    "BudgetExceeded",
    "BadSize",
    "DegenerateGrid",
    "ArityMismatch",
    "DegenerateMap",
    "NotComplete",
    "BoundedCharacteristic",
    "TooFewHypersurfaces",
    "ParseError",
]


class TestExceptionHierarchy:
    """Every domain error derives from the package base class."""

    @pytest.mark.parametrize("name", DOMAIN_ERRORS)
    def test_subclass_of_base(self, name):
        cls = getattr(exceptions, name)
        assert issubclass(cls, TropNevException)
        with pytest.raises(TropNevException):
            raise cls("boom")

    def test_above_lf_is_a_warning(self):
        """Test that the L_f condition is a warning, not an error."""
        assert issubclass(AboveLfWarning, UserWarning)
        assert not issubclass(AboveLfWarning, TropNevException)


class TestParseError:
    """Test parse error positions."""

    def test_message_with_position(self):
        error = ParseError("Unexpected '/'", 2, 7)
        assert error.line == 2
        assert error.column == 7
        assert str(error) == "Unexpected '/' (line 2, column 7)"

    def test_message_without_position(self):
        error = ParseError("Invalid document")
        assert error.line is None
        assert str(error) == "Invalid document"
