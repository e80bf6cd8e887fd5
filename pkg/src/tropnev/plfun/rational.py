"""
Tropical meromorphic functions: ordered pairs of tropical polynomials.
"""

from typing import Any, Optional

import numpy as np

from ..core.exceptions import DimMismatch, ValidationError, ZeroQ
from ..utils.logger import get_logger
from .polynomial import DEFAULT_TERM_CAP, TropicalPolynomial, as_point

logger = get_logger(__name__)


class TropicalRational:
    """
    f(x) = num(x) - den(x) for finite-term polynomials num and den.

    An entire function is the case den = 1_T. Every operation returns a new object; all algebra is
    symbolic and exact.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: TropicalPolynomial, den: Optional[TropicalPolynomial] = None):
        if den is None:
            den = TropicalPolynomial.one(num.dim)
        if num.dim != den.dim:
            raise DimMismatch(f"Numerator has dim {num.dim} but denominator has dim {den.dim}")
        self._num = num
        self._den = den

    @classmethod
    def entire(cls, poly: TropicalPolynomial) -> "TropicalRational":
        return cls(poly)

    @classmethod
    def constant(cls, c: float, dim: int) -> "TropicalRational":
        return cls(TropicalPolynomial.constant(c, dim))

    @property
    def num(self) -> TropicalPolynomial:
        return self._num

    @property
    def den(self) -> TropicalPolynomial:
        return self._den

    @property
    def dim(self) -> int:
        return self._num.dim

    @property
    def is_entire(self) -> bool:
        return self._den.is_one()

    def is_constant(self) -> bool:
        return self._num.is_constant() and self._den.is_constant()

    def evaluate(self, x: Any) -> float:
        return self._num.evaluate(x) - self._den.evaluate(x)

    __call__ = evaluate

    def evaluate_many(self, X: Any) -> np.ndarray:
        return self._num.evaluate_many(X) - self._den.evaluate_many(X)

    def t_mul(
        self, other: "TropicalRational", term_cap: int = DEFAULT_TERM_CAP
    ) -> "TropicalRational":
        """f (*) g = (n_f n_g) / (d_f d_g), pointwise f + g."""
        return TropicalRational(
            self._num.tensor(other._num, term_cap), self._den.tensor(other._den, term_cap)
        )

    def t_add(
        self, other: "TropicalRational", term_cap: int = DEFAULT_TERM_CAP
    ) -> "TropicalRational":
        """f (+) g = (n_f d_g (+) n_g d_f) / (d_f d_g), pointwise max(f, g)."""
        num = self._num.tensor(other._den, term_cap).oplus(other._num.tensor(self._den, term_cap))
        return TropicalRational(num, self._den.tensor(other._den, term_cap))

    def add_constant(self, a: float) -> "TropicalRational":
        """f (+) a = (n (+) a d) / d, pointwise max(f, a)."""
        return TropicalRational(self._num.oplus(self._den.add_to_coeffs(a)), self._den)

    def scale(self, a: float) -> "TropicalRational":
        """a (*) f, pointwise f + a."""
        return TropicalRational(self._num.add_to_coeffs(a), self._den)

    def reciprocal(self) -> "TropicalRational":
        """1_T (/) f, pointwise -f."""
        return TropicalRational(self._den, self._num)

    def quotient(
        self, other: "TropicalRational", term_cap: int = DEFAULT_TERM_CAP
    ) -> "TropicalRational":
        """f (/) g, pointwise f - g."""
        return self.t_mul(other.reciprocal(), term_cap)

    def power(self, alpha: float) -> "TropicalRational":
        """f^alpha, pointwise alpha f; negative alpha swaps numerator and denominator."""
        if alpha < 0:
            return self.reciprocal().power(-alpha)
        return TropicalRational(self._num.power(alpha), self._den.power(alpha))

    def shift(self, c: Any) -> "TropicalRational":
        """x -> f(x + c)."""
        c = as_point(c, self.dim)
        return TropicalRational(self._num.shift(c), self._den.shift(c))

    def q_scale(self, q: float) -> "TropicalRational":
        """x -> f(q x)."""
        if q == 0:
            raise ZeroQ("q-scaling requires q != 0")
        return TropicalRational(self._num.q_scale(q), self._den.q_scale(q))

    def __repr__(self) -> str:
        return f"TropicalRational(num={self._num!r}, den={self._den!r})"


def as_rational(f: Any) -> TropicalRational:
    """Accept a rational or a polynomial (read as entire)."""
    if isinstance(f, TropicalRational):
        return f
    if isinstance(f, TropicalPolynomial):
        return TropicalRational(f)
    raise ValidationError(f"Expected a tropical polynomial or rational, got {type(f).__name__}")


def eval_poly(P: TropicalPolynomial, x: Any) -> float:
    """Max over terms of coeff + <expo, x>."""
    return P.evaluate(x)


def eval_rational(f: Any, x: Any) -> float:
    return as_rational(f).evaluate(x)


def shift(f: Any, c: Any) -> TropicalRational:
    """Exact coefficient transform with eval(shift(f, c), x) == eval(f, x + c)."""
    return as_rational(f).shift(c)


def q_scale(f: Any, q: float) -> TropicalRational:
    """Exact exponent transform with eval(q_scale(f, q), x) == eval(f, q x)."""
    return as_rational(f).q_scale(q)
