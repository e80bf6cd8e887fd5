"""
Finite-term tropical polynomials on R^n.

A polynomial is max_i (a_i + <m_i, x>) with real exponent vectors m_i. Terms are held as a
coefficient vector and an exponent matrix so that evaluation at many points is one numpy call.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import BudgetExceeded, DimMismatch, ValidationError
from ..maxplus.semiring import as_tropical
from ..utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_TERM_CAP = 100_000


@dataclass(frozen=True)
class Monomial:
    """One term a (*) x^m of a tropical polynomial."""

    coeff: float
    expo: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", as_tropical(self.coeff))
        expo = tuple(float(v) for v in self.expo)
        if len(expo) < 1:
            raise ValidationError("A monomial needs an exponent vector of length n >= 1")
        if any(math.isnan(v) or math.isinf(v) for v in expo):
            raise ValidationError(f"Exponents must be finite reals, got {expo}")
        object.__setattr__(self, "expo", expo)

    @property
    def dim(self) -> int:
        return len(self.expo)

    def evaluate(self, x: Any) -> float:
        return self.coeff + float(np.dot(self.expo, as_point(x, self.dim)))


def as_point(x: Any, dim: int) -> np.ndarray:
    """Coerce x to a float vector of length dim."""
    point = np.atleast_1d(np.asarray(x, dtype=float))
    if point.shape != (dim,):
        raise DimMismatch(f"Expected a point in R^{dim}, got shape {point.shape}")
    return point


def as_points(X: Any, dim: int) -> np.ndarray:
    """Coerce X to an (N, dim) float array; a 1-D array is read as N points when dim == 1."""
    points = np.asarray(X, dtype=float)
    if points.ndim == 1 and dim == 1:
        points = points[:, None]
    if points.ndim != 2 or points.shape[1] != dim:
        raise DimMismatch(f"Expected points in R^{dim}, got shape {points.shape}")
    return points


class TropicalPolynomial:
    """
    Immutable finite-term tropical polynomial.

    Bottom coefficients are dropped at construction and duplicated exponent vectors are merged
    keeping the largest coefficient, so every stored term is finite and distinct.
    """

    __slots__ = ("_coeffs", "_expos")

    def __init__(self, coeffs: Sequence[Any], expos: Any):
        expo_arr = np.asarray(expos, dtype=float)
        if expo_arr.ndim == 1:
            expo_arr = expo_arr[:, None]
        if expo_arr.ndim != 2 or expo_arr.shape[1] < 1:
            raise ValidationError(f"Exponents must form a (terms, n) matrix, got {expo_arr.shape}")
        coeff_arr = np.array([as_tropical(c) for c in coeffs], dtype=float)
        if coeff_arr.shape[0] != expo_arr.shape[0]:
            raise ValidationError(
                f"{coeff_arr.shape[0]} coefficients for {expo_arr.shape[0]} exponent vectors"
            )
        if not np.isfinite(expo_arr).all():
            raise ValidationError("Exponents must be finite reals")

        finite = np.isfinite(coeff_arr)
        if not finite.any():
            raise ValidationError("A tropical polynomial needs at least one finite coefficient")
        if not finite.all():
            logger.debug(f"Dropping {int((~finite).sum())} bottom term(s)")
        coeff_arr, expo_arr = _merge_duplicates(coeff_arr[finite], expo_arr[finite])

        coeff_arr.setflags(write=False)
        expo_arr.setflags(write=False)
        self._coeffs = coeff_arr
        self._expos = expo_arr

    @classmethod
    def from_monomials(
        cls, monomials: Iterable[Monomial], dim: Optional[int] = None
    ) -> "TropicalPolynomial":
        terms = list(monomials)
        if not terms:
            raise ValidationError("A tropical polynomial needs at least one term")
        dims = {t.dim for t in terms}
        if len(dims) != 1 or (dim is not None and dims != {dim}):
            raise DimMismatch(f"Monomials disagree on the dimension: {sorted(dims)}")
        return cls([t.coeff for t in terms], [t.expo for t in terms])

    @classmethod
    def constant(cls, c: float, dim: int) -> "TropicalPolynomial":
        return cls([c], np.zeros((1, dim)))

    @classmethod
    def one(cls, dim: int) -> "TropicalPolynomial":
        """The tropical unit 1_T = 0 as a polynomial."""
        return cls.constant(0.0, dim)

    @classmethod
    def variable(cls, index: int, dim: int, coeff: float = 0.0) -> "TropicalPolynomial":
        expo = np.zeros((1, dim))
        expo[0, index] = 1.0
        return cls([coeff], expo)

    @property
    def dim(self) -> int:
        return int(self._expos.shape[1])

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def expos(self) -> np.ndarray:
        return self._expos

    @property
    def num_terms(self) -> int:
        return int(self._coeffs.shape[0])

    def monomials(self) -> List[Monomial]:
        return [Monomial(float(c), tuple(m)) for c, m in zip(self._coeffs, self._expos)]

    def is_constant(self) -> bool:
        return self.num_terms == 1 and not self._expos.any()

    def is_one(self) -> bool:
        return self.is_constant() and float(self._coeffs[0]) == 0.0

    def term_values(self, x: Any) -> np.ndarray:
        """Values a_i + <m_i, x> of every term at x."""
        return self._coeffs + self._expos @ as_point(x, self.dim)

    def evaluate(self, x: Any) -> float:
        return float(np.max(self.term_values(x)))

    __call__ = evaluate

    def evaluate_many(self, X: Any) -> np.ndarray:
        points = as_points(X, self.dim)
        return np.max(self._coeffs[None, :] + points @ self._expos.T, axis=1)

    def active_terms(self, x: Any, tol: float = 1e-9) -> np.ndarray:
        """Indices of terms attaining the maximum at x within tol."""
        values = self.term_values(x)
        top = float(values.max())
        return np.flatnonzero(values >= top - tol * max(1.0, abs(top)))

    def ray_lines(self, theta: Any) -> Tuple[np.ndarray, np.ndarray]:
        """Intercepts and slopes of t -> a_i + t <m_i, theta>."""
        return self._coeffs.copy(), self._expos @ as_point(theta, self.dim)

    def tensor(
        self, other: "TropicalPolynomial", term_cap: int = DEFAULT_TERM_CAP
    ) -> "TropicalPolynomial":
        """Tropical product: the Minkowski sum of the two term lists."""
        _check_dims(self, other)
        count = self.num_terms * other.num_terms
        if count > term_cap:
            raise BudgetExceeded(f"Product would have {count} terms (cap {term_cap})")
        coeffs = (self._coeffs[:, None] + other._coeffs[None, :]).ravel()
        expos = (self._expos[:, None, :] + other._expos[None, :, :]).reshape(-1, self.dim)
        return TropicalPolynomial(coeffs, expos).pruned()

    def oplus(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        """Tropical sum: the union of the two term lists."""
        _check_dims(self, other)
        coeffs = np.concatenate([self._coeffs, other._coeffs])
        expos = np.vstack([self._expos, other._expos])
        return TropicalPolynomial(coeffs, expos).pruned()

    def add_to_coeffs(self, a: float) -> "TropicalPolynomial":
        """Tropical scalar multiple a (*) P."""
        return TropicalPolynomial(self._coeffs + a, self._expos)

    def shift(self, c: Any) -> "TropicalPolynomial":
        """P(x + c): each term (a, m) becomes (a + <m, c>, m)."""
        return TropicalPolynomial(self._coeffs + self._expos @ as_point(c, self.dim), self._expos)

    def q_scale(self, q: float) -> "TropicalPolynomial":
        """P(q x): each term (a, m) becomes (a, q m)."""
        return TropicalPolynomial(self._coeffs, self._expos * q)

    def power(self, alpha: float) -> "TropicalPolynomial":
        """P^alpha = alpha P for alpha >= 0."""
        if alpha < 0:
            raise ValidationError(
                "Negative powers of a polynomial are rational; use TropicalRational"
            )
        if alpha == 0:
            return TropicalPolynomial.one(self.dim)
        return TropicalPolynomial(self._coeffs * alpha, self._expos * alpha)

    def pruned(self) -> "TropicalPolynomial":
        """
        Drop terms that never attain the maximum alone.

        Exact in one variable (upper hull of the (slope, intercept) points); higher dimensions are
        returned unchanged.
        """
        if self.dim != 1 or self.num_terms <= 2:
            return self
        keep = upper_envelope_indices(self._coeffs, self._expos[:, 0])
        if len(keep) == self.num_terms:
            return self
        return TropicalPolynomial(self._coeffs[keep], self._expos[keep])

    def same_terms(self, other: "TropicalPolynomial") -> bool:
        """Structural equality of the term lists up to ordering."""
        if self.dim != other.dim or self.num_terms != other.num_terms:
            return False
        mine = sorted(zip(map(tuple, self._expos.tolist()), self._coeffs.tolist()))
        theirs = sorted(zip(map(tuple, other._expos.tolist()), other._coeffs.tolist()))
        return mine == theirs

    def __repr__(self) -> str:
        pairs = zip(self._coeffs.tolist(), self._expos.tolist())
        terms = ", ".join(f"({c!r}, {tuple(m)})" for c, m in pairs)
        return f"TropicalPolynomial(dim={self.dim}, terms=[{terms}])"


def _check_dims(p: TropicalPolynomial, q: TropicalPolynomial) -> None:
    if p.dim != q.dim:
        raise DimMismatch(f"Dimension mismatch: {p.dim} vs {q.dim}")


def _merge_duplicates(coeffs: np.ndarray, expos: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    best: Dict[Tuple[float, ...], float] = {}
    for c, m in zip(coeffs.tolist(), map(tuple, expos.tolist())):
        if m not in best or c > best[m]:
            best[m] = c
    if len(best) == len(coeffs):
        return coeffs.copy(), expos.copy()
    keys = list(best)
    return np.array([best[k] for k in keys], dtype=float), np.array(keys, dtype=float)


def upper_envelope_indices(intercepts: np.ndarray, slopes: np.ndarray) -> List[int]:
    """Indices of the lines on the upper envelope of a + s t over the whole real line."""
    order = sorted(range(len(slopes)), key=lambda i: (slopes[i], intercepts[i]))
    hull: List[int] = []
    for i in order:
        if hull and slopes[hull[-1]] == slopes[i]:
            hull.pop()
        while len(hull) >= 2 and _middle_redundant(hull[-2], hull[-1], i, intercepts, slopes):
            hull.pop()
        hull.append(i)
    return hull


def _middle_redundant(i: int, j: int, k: int, a: np.ndarray, s: np.ndarray) -> bool:
    # line j is dominated when the i/k crossing lies at or left of the i/j crossing
    return (a[i] - a[k]) * (s[j] - s[i]) <= (a[i] - a[j]) * (s[k] - s[i])
