"""
Homogeneous tropical polynomials in m + 1 variables and their composition with maps.
"""

import math
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ArityMismatch, BudgetExceeded, ValidationError
from ..maxplus.semiring import as_tropical, is_bottom
from ..plfun.polynomial import DEFAULT_TERM_CAP, TropicalPolynomial
from ..utils.logger import get_logger
from .space import ProjectiveMap

logger = get_logger(__name__)

MultiIndex = Tuple[int, ...]


@lru_cache(maxsize=None)
def multi_indices(m: int, d: int) -> Tuple[MultiIndex, ...]:
    """All (i_0, ..., i_m) with nonnegative entries summing to d, in lexicographic order."""
    if m == 0:
        return ((d,),)
    out: List[MultiIndex] = []
    for first in range(d, -1, -1):
        for rest in multi_indices(m - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


class HomogeneousPolynomial:
    """
    P(y) = max_I (c_I + <I, y>) over multi-indices I of total degree d in m + 1 variables.

    Only finite coefficients are stored; a missing index has coefficient -inf.
    """

    __slots__ = ("_m", "_d", "_coeffs")

    def __init__(self, m: int, d: int, coeffs: Mapping[Sequence[int], Any]):
        if m < 1:
            raise ValidationError(f"Target dimension m must be at least 1, got {m}")
        if d < 1:
            raise ValidationError(f"Degree must be a positive integer, got {d}")
        stored: Dict[MultiIndex, float] = {}
        for index, value in coeffs.items():
            key = tuple(int(i) for i in index)
            if len(key) != m + 1 or any(i < 0 for i in key) or sum(key) != d:
                raise ValidationError(f"Index {key} is not a degree-{d} index in {m + 1} variables")
            c = as_tropical(value)
            if not is_bottom(c):
                stored[key] = max(c, stored.get(key, c))
        if not stored:
            raise ValidationError("A homogeneous polynomial needs at least one finite coefficient")
        self._m = m
        self._d = d
        self._coeffs = dict(sorted(stored.items(), reverse=True))

    @classmethod
    def complete(cls, m: int, d: int, value: float = 0.0) -> "HomogeneousPolynomial":
        """Every coefficient equal to value."""
        return cls(m, d, {index: value for index in multi_indices(m, d)})

    @classmethod
    def linear(cls, coeffs: Sequence[Any]) -> "HomogeneousPolynomial":
        """Degree-one polynomial max_k (c_k + y_k)."""
        m = len(coeffs) - 1
        unit = [tuple(int(j == k) for j in range(m + 1)) for k in range(m + 1)]
        return cls(m, 1, dict(zip(unit, coeffs)))

    @property
    def m(self) -> int:
        return self._m

    @property
    def d(self) -> int:
        return self._d

    @property
    def coeffs(self) -> Dict[MultiIndex, float]:
        return dict(self._coeffs)

    @property
    def M(self) -> int:
        """C(m + d, d) - 1."""
        return math.comb(self._m + self._d, self._d) - 1

    @property
    def num_terms(self) -> int:
        return len(self._coeffs)

    def is_complete(self) -> bool:
        return len(self._coeffs) == self.M + 1

    @property
    def max_coeff(self) -> float:
        """||a||, the largest finite coefficient."""
        return max(self._coeffs.values())

    @property
    def min_coeff(self) -> float:
        return min(self._coeffs.values())

    @property
    def coeff_spread(self) -> float:
        return self.max_coeff - self.min_coeff

    def _arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return (
            np.array(list(self._coeffs.values()), dtype=float),
            np.array(list(self._coeffs.keys()), dtype=float),
        )

    def term_values_many(self, Y: Any) -> np.ndarray:
        """c_I + <I, y> for every row y of Y, shape (points, terms)."""
        c, idx = self._arrays()
        Y = np.atleast_2d(np.asarray(Y, dtype=float))
        if Y.shape[1] != self._m + 1:
            raise ArityMismatch(f"Expected {self._m + 1} coordinates, got {Y.shape[1]}")
        return c[None, :] + Y @ idx.T

    def evaluate(self, y: Any) -> float:
        return float(self.term_values_many(y)[0].max())

    def evaluate_many(self, Y: Any) -> np.ndarray:
        return self.term_values_many(Y).max(axis=1)

    def __repr__(self) -> str:
        return f"HomogeneousPolynomial(m={self._m}, d={self._d}, coeffs={self._coeffs})"


def map_monomial(
    F: ProjectiveMap,
    index: Sequence[int],
    term_cap: int = DEFAULT_TERM_CAP,
    cache: Optional[Dict[Tuple[int, int], TropicalPolynomial]] = None,
) -> TropicalPolynomial:
    """f^I = f_0^{i_0} (*) ... (*) f_m^{i_m} as a tropical entire function."""
    if len(index) != F.m + 1:
        raise ArityMismatch(f"Index {tuple(index)} does not match {F.m + 1} map components")
    cache = cache if cache is not None else {}
    product = TropicalPolynomial.one(F.dim)
    for k, i in enumerate(index):
        if not i:
            continue
        if (k, i) not in cache:
            cache[(k, i)] = F.components[k].power(float(i))
        product = product.tensor(cache[(k, i)], term_cap)
    return product


def map_monomials(
    F: ProjectiveMap, d: int, term_cap: int = DEFAULT_TERM_CAP
) -> List[TropicalPolynomial]:
    """Every f^I of total degree d, in :func:`multi_indices` order."""
    cache: Dict[Tuple[int, int], TropicalPolynomial] = {}
    return [map_monomial(F, index, term_cap, cache) for index in multi_indices(F.m, d)]


def compose(
    P: HomogeneousPolynomial, F: ProjectiveMap, term_cap: int = DEFAULT_TERM_CAP
) -> TropicalPolynomial:
    """
    Symbolic P o f as a tropical entire function.

    Each monomial of P contributes c_I plus the tropical product f^I; the contributions are merged
    with duplicated exponents keeping the largest coefficient.

    Raises:
        ArityMismatch: If P has a different number of variables than F has components.
        BudgetExceeded: If the expansion would exceed term_cap terms.
    """
    if P.m != F.m:
        raise ArityMismatch(
            f"Hypersurface has {P.m + 1} variables but the map has {F.m + 1} components"
        )

    cache: Dict[Tuple[int, int], TropicalPolynomial] = {}
    coeff_parts: List[np.ndarray] = []
    expo_parts: List[np.ndarray] = []
    total = 0
    for index, c in P.coeffs.items():
        product = map_monomial(F, index, term_cap, cache)
        total += product.num_terms
        if total > term_cap:
            raise BudgetExceeded(f"Composition exceeds the term cap of {term_cap}")
        coeff_parts.append(product.coeffs + c)
        expo_parts.append(product.expos)

    result = TropicalPolynomial(np.concatenate(coeff_parts), np.vstack(expo_parts)).pruned()
    logger.debug(f"Composed degree-{P.d} hypersurface into {result.num_terms} terms")
    return result


def evaluate_composition_many(P: HomogeneousPolynomial, F: ProjectiveMap, X: Any) -> np.ndarray:
    """P(f(x)) by direct evaluation, the oracle for :func:`compose`."""
    return P.evaluate_many(F.evaluate_many(X))


def hypersurface_from_values(values: Iterable[float]) -> List[HomogeneousPolynomial]:
    """Degree-one polynomials 0 (*) y_0 (+) (-a) (*) y_1, one per value a."""
    out = []
    for a in values:
        a = float(a)
        if not math.isfinite(a):
            raise ValidationError(f"Values must be finite reals, got {a}")
        out.append(HomogeneousPolynomial(1, 1, {(1, 0): 0.0, (0, 1): -a}))
    return out


def lcm_degree(polys: Sequence[HomogeneousPolynomial]) -> int:
    """Least common multiple of the degrees."""
    return math.lcm(*(p.d for p in polys)) if polys else 1
