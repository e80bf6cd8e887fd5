"""
Max-plus semiring arithmetic on T = R u {-inf}.

Tropical numbers are plain Python floats. The bottom element (the tropical zero) is the IEEE value
``float("-inf")``, never a large negative sentinel, so that maxima over it stay exact.
"""

import math
from functools import reduce
from typing import Any, Iterable

from ..core.exceptions import BottomDivisor, NegativePowerOfBottom, ValidationError

TropicalNumber = float

BOTTOM: TropicalNumber = float("-inf")
ONE: TropicalNumber = 0.0

BOTTOM_LITERAL = "-inf"


def is_bottom(x: TropicalNumber) -> bool:
    """Return True for the tropical zero."""
    return x == BOTTOM


def as_tropical(value: Any) -> TropicalNumber:
    """
    Coerce a number or the literal ``"-inf"`` to a tropical number.

    Raises:
        ValidationError: For NaN, +inf or unparsable values.
    """
    if isinstance(value, str):
        text = value.strip().lower()
        if text in (BOTTOM_LITERAL, "-infinity", "bottom"):
            return BOTTOM
        try:
            value = float(text)
        except ValueError as e:
            raise ValidationError(f"Not a tropical number: {value!r}") from e
    try:
        x = float(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Not a tropical number: {value!r}") from e
    if math.isnan(x) or x == math.inf:
        raise ValidationError(f"Tropical numbers exclude NaN and +inf, got {value!r}")
    return x


def format_tropical(x: TropicalNumber) -> str:
    """Render a tropical number; bottom becomes ``-inf``."""
    if is_bottom(x):
        return BOTTOM_LITERAL
    return repr(float(x))


def t_add(x: TropicalNumber, y: TropicalNumber) -> TropicalNumber:
    """Tropical sum x (+) y = max(x, y)."""
    return x if x >= y else y


def t_mul(x: TropicalNumber, y: TropicalNumber) -> TropicalNumber:
    """Tropical product x (*) y = x + y, absorbing at bottom."""
    if is_bottom(x) or is_bottom(y):
        return BOTTOM
    return x + y


def t_div(x: TropicalNumber, y: TropicalNumber) -> TropicalNumber:
    """
    Tropical quotient x (/) y = x - y.

    Raises:
        BottomDivisor: When y is bottom.
    """
    if is_bottom(y):
        raise BottomDivisor(f"Cannot divide {format_tropical(x)} by the tropical zero")
    if is_bottom(x):
        return BOTTOM
    return x - y


def t_pow(x: TropicalNumber, a: float) -> TropicalNumber:
    """
    Tropical power x^a = a * x.

    Raises:
        NegativePowerOfBottom: When x is bottom and a < 0.
    """
    if a == 0:
        return ONE
    if is_bottom(x):
        if a < 0:
            raise NegativePowerOfBottom(f"(-inf)^{a} is undefined for a negative exponent")
        return BOTTOM
    return a * x


def t_sum(values: Iterable[TropicalNumber]) -> TropicalNumber:
    """Fold of (+); the empty sum is bottom."""
    return reduce(t_add, values, BOTTOM)


def t_prod(values: Iterable[TropicalNumber]) -> TropicalNumber:
    """Fold of (*); the empty product is 1_T = 0."""
    values = list(values)
    if any(is_bottom(v) for v in values):
        return BOTTOM
    return math.fsum(values)


def t_close(x: TropicalNumber, y: TropicalNumber, tol: float = 1e-9) -> bool:
    """Equality within tol, scaled by magnitude; two bottoms are equal."""
    if is_bottom(x) or is_bottom(y):
        return is_bottom(x) and is_bottom(y)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))
