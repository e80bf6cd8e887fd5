"""
Shift families and the tropical Casorati and q-Casorati determinants.

The determinant is a lazy pointwise object: each evaluation assembles the (M+1) x (M+1) matrix
g_i(x + j c) (or g_i(q^j x)) and solves one assignment problem. Symbolic expansion over all
permutations is available for small orders as an oracle.
"""

import itertools
import math
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import BadScale, DimMismatch, ValidationError
from ..maxplus.matrix import optimal_permutation, trop_det
from ..maxplus.semiring import TropicalNumber
from ..nevanlinna.functionals import counting_profile
from ..nevanlinna.quadrature import SphereQuadrature
from ..nevanlinna.table import check_grid
from ..plfun.polynomial import DEFAULT_TERM_CAP, as_point, as_points
from ..plfun.rational import TropicalRational, as_rational
from ..plfun.slicing import RaySlice, blackbox_slice
from ..projective.hypersurface import HomogeneousPolynomial, compose, lcm_degree
from ..projective.space import ProjectiveMap
from ..utils.logger import get_logger

logger = get_logger(__name__)

SYMBOLIC_MAX_ORDER = 4


class ShiftFamily:
    """
    Base functions g_0, ..., g_M with either a shift vector c or a scale factor q.

    Entry (i, j) is g_i shifted j times, built with the exact symbolic transforms.
    """

    __slots__ = ("_base", "_shift", "_scale", "_entries")

    def __init__(self, base: Sequence[Any], c: Optional[Any] = None, q: Optional[float] = None):
        functions = [as_rational(g) for g in base]
        if not functions:
            raise ValidationError("A shift family needs at least one function")
        dims = {g.dim for g in functions}
        if len(dims) != 1:
            raise DimMismatch(f"Family members disagree on the dimension: {sorted(dims)}")
        if (c is None) == (q is None):
            raise ValidationError("Give exactly one of a shift vector c or a scale factor q")
        dim = functions[0].dim
        self._base = tuple(functions)
        self._shift = as_point(c, dim) if c is not None else None
        if q is not None:
            q = float(q)
            if q == 0.0 or q == 1.0 or not math.isfinite(q):
                raise BadScale(f"The scale factor must be finite and outside {{0, 1}}, got {q}")
        self._scale = q
        k = len(functions)
        self._entries = tuple(tuple(self._step(g, j) for j in range(k)) for g in functions)

    def _step(self, g: TropicalRational, j: int) -> TropicalRational:
        if self._shift is not None:
            return g.shift(j * self._shift)
        return g.q_scale(self._scale ** j)

    @classmethod
    def from_map(
        cls, F: ProjectiveMap, c: Optional[Any] = None, q: Optional[float] = None
    ) -> "ShiftFamily":
        """The components of F as the base."""
        return cls(list(F.components), c=c, q=q)

    @classmethod
    def from_hypersurfaces(
        cls,
        F: ProjectiveMap,
        P_list: Sequence[HomogeneousPolynomial],
        c: Optional[Any] = None,
        q: Optional[float] = None,
        term_cap: int = DEFAULT_TERM_CAP,
    ) -> "ShiftFamily":
        """
        The first M + 1 compositions P_j o f, each raised to d / d_j.

        d is the least common multiple of all degrees and M = C(m + d, d) - 1. Fewer hypersurfaces
        than M + 1 give a family of that smaller order.
        """
        if not P_list:
            raise ValidationError("At least one hypersurface is required")
        d = lcm_degree(P_list)
        order = math.comb(F.m + d, d)
        base = [compose(P, F, term_cap).power(d / P.d) for P in P_list[:order]]
        return cls(base, c=c, q=q)

    @property
    def base(self) -> Tuple[TropicalRational, ...]:
        return self._base

    @property
    def order(self) -> int:
        """M + 1."""
        return len(self._base)

    @property
    def dim(self) -> int:
        return self._base[0].dim

    @property
    def is_q_family(self) -> bool:
        return self._scale is not None

    @property
    def shift_vector(self) -> Optional[np.ndarray]:
        return None if self._shift is None else self._shift.copy()

    @property
    def scale(self) -> Optional[float]:
        return self._scale

    @property
    def entries(self) -> Tuple[Tuple[TropicalRational, ...], ...]:
        return self._entries

    def rebased(self, c: Any) -> "ShiftFamily":
        """The same family over the base shifted by c."""
        return ShiftFamily(
            [g.shift(c) for g in self._base],
            c=self._shift,
            q=self._scale,
        )

    def matrix_at(self, x: Any) -> np.ndarray:
        """Numeric matrix A_ij = g_i shifted j times, evaluated at x."""
        point = as_point(x, self.dim)
        return np.array([[e.evaluate(point) for e in row] for row in self._entries], dtype=float)

    def __repr__(self) -> str:
        step = f"c={tuple(self._shift)}" if self._shift is not None else f"q={self._scale}"
        return f"ShiftFamily(order={self.order}, {step})"


def casorati_eval(family: ShiftFamily, x: Any) -> TropicalNumber:
    """C(x) = trop_det of the shift matrix at x, by linear assignment."""
    return trop_det(family.matrix_at(x))


def casorati_many(family: ShiftFamily, X: Any) -> np.ndarray:
    """Casorati values at every row of X."""
    points = as_points(X, family.dim)
    values = np.stack(
        [np.column_stack([e.evaluate_many(points) for e in row]) for row in family.entries], axis=1
    )
    return np.array([trop_det(values[k]) for k in range(points.shape[0])], dtype=float)


def casorati_pattern(family: ShiftFamily, x: Any) -> Tuple[TropicalNumber, Tuple[int, ...]]:
    """Casorati value at x with the shift count assigned to each function."""
    return optimal_permutation(family.matrix_at(x))


def casorati_function(family: ShiftFamily) -> Callable[[Any], float]:
    """The Casorati determinant as a plain callable on points."""
    return lambda x: float(casorati_eval(family, x))


def casorati_symbolic(family: ShiftFamily, term_cap: int = DEFAULT_TERM_CAP) -> TropicalRational:
    """
    (+) over permutations of (*)_i g_i shifted pi(i) times, as an explicit function.

    Raises:
        ValidationError: If the order exceeds the symbolic limit.
    """
    k = family.order
    if k > SYMBOLIC_MAX_ORDER:
        raise ValidationError(
            f"Symbolic Casorati expansion is limited to order {SYMBOLIC_MAX_ORDER}, got {k}"
        )
    total: Optional[TropicalRational] = None
    for perm in itertools.permutations(range(k)):
        product = family.entries[0][perm[0]]
        for i in range(1, k):
            product = product.t_mul(family.entries[i][perm[i]], term_cap)
        total = product if total is None else total.t_add(product, term_cap)
    return total


def casorati_slices(
    family: ShiftFamily,
    quad: SphereQuadrature,
    R: float,
    tol: float = 1e-7,
    min_width: float = 1e-6,
    cells: int = 64,
    max_evals: int = 200_000,
) -> List[RaySlice]:
    """Black-box slices of the Casorati function along every pair representative on (-R, R)."""
    if quad.dim != family.dim:
        raise DimMismatch(f"Family has dim {family.dim} but the quadrature has dim {quad.dim}")
    slices = []
    for theta in quad.pair_nodes:
        direction = np.asarray(theta, dtype=float)
        slices.append(
            blackbox_slice(
                lambda t, u=direction: float(casorati_eval(family, t * u)),
                (-R, R),
                tol=tol,
                min_width=min_width,
                cells=cells,
                max_evals=max_evals,
                direction=direction,
            )
        )
    logger.debug(f"Sliced the Casorati function along {len(slices)} pairs at R={R}")
    return slices


def casorati_roots_counting(
    family: ShiftFamily,
    r: Any,
    quad: SphereQuadrature,
    tol: float = 1e-7,
    min_width: float = 1e-6,
    cells: int = 64,
    max_evals: int = 200_000,
) -> Union[float, np.ndarray]:
    """
    N(r, 1_T / C) for the Casorati function C, at one radius or over a grid.

    Roots of C are the breakpoints with positive jump.

    Raises:
        BudgetExceeded: When the slicer runs out of evaluations.
    """
    scalar = np.ndim(r) == 0
    grid = check_grid([float(r)] if scalar else r)
    slices = casorati_slices(family, quad, float(grid[-1]), tol, min_width, cells, max_evals)
    _, counting = counting_profile(slices, quad.pair_weights, grid, poles=False)
    return float(counting[0]) if scalar else counting
