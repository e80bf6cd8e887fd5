"""
Tropical matrices: determinant, regularity and Gondran-Minoux dependence certificates.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..core.exceptions import BadPartition, NotSquare, ValidationError
from ..utils.logger import get_logger
from .semiring import BOTTOM, TropicalNumber, as_tropical, is_bottom, t_close

logger = get_logger(__name__)

Point = Any
Evaluable = Callable[[np.ndarray], float]


@dataclass(frozen=True, eq=False)
class TropicalMatrix:
    """Dense rows x cols grid of tropical numbers."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        grid = np.asarray(self.entries, dtype=float)
        if grid.ndim != 2 or grid.shape[0] < 1 or grid.shape[1] < 1:
            raise ValidationError(
                f"A tropical matrix needs rows >= 1 and cols >= 1, got {grid.shape}"
            )
        if np.isnan(grid).any() or (grid == np.inf).any():
            raise ValidationError("Tropical matrix entries exclude NaN and +inf")
        grid = grid.copy()
        grid.setflags(write=False)
        object.__setattr__(self, "entries", grid)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "TropicalMatrix":
        """Build from nested lists; entries may be numbers or ``"-inf"``."""
        widths = {len(row) for row in rows}
        if len(widths) != 1:
            raise ValidationError("All rows of a tropical matrix must have the same length")
        return cls(np.array([[as_tropical(v) for v in row] for row in rows], dtype=float))

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_rows(self) -> List[List[float]]:
        return [[float(v) for v in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"TropicalMatrix({self.to_rows()})"


def _as_matrix(A: Any) -> TropicalMatrix:
    if isinstance(A, TropicalMatrix):
        return A
    if isinstance(A, np.ndarray):
        return TropicalMatrix(A)
    return TropicalMatrix.from_rows(A)


def _require_square(A: TropicalMatrix) -> None:
    if not A.is_square:
        raise NotSquare(f"Expected a square matrix, got {A.rows}x{A.cols}")


def _path_weight(values: Sequence[float]) -> TropicalNumber:
    if any(is_bottom(v) for v in values):
        return BOTTOM
    return math.fsum(values)


def has_finite_assignment(A: Any) -> bool:
    """True iff the finite support of a square matrix admits a perfect matching."""
    A = _as_matrix(A)
    _require_square(A)
    support = np.isfinite(A.entries).astype(float)
    rows, cols = linear_sum_assignment(support, maximize=True)
    return bool(support[rows, cols].sum() == A.rows)


def optimal_permutation(A: Any) -> Tuple[TropicalNumber, Tuple[int, ...]]:
    """
    Maximizing assignment of a square tropical matrix.

    Returns:
        The determinant value and the permutation ``p`` with row ``i`` matched to column ``p[i]``.
        When no finite-weight permutation exists the value is bottom and ``p`` is the identity.
    """
    A = _as_matrix(A)
    _require_square(A)
    k = A.rows
    grid = A.entries

    if not has_finite_assignment(A):
        return BOTTOM, tuple(range(k))

    finite = grid[np.isfinite(grid)]
    lo, hi = float(finite.min()), float(finite.max())
    # any assignment touching a penalty entry loses to every fully finite one
    penalty = lo - (k + 1) * (hi - lo + 1.0)
    work = np.where(np.isfinite(grid), grid, penalty)

    rows, cols = linear_sum_assignment(work, maximize=True)
    perm = tuple(int(c) for c in cols[np.argsort(rows)])
    value = _path_weight([grid[i, perm[i]] for i in range(k)])
    logger.debug(f"Assignment on {k}x{k} matrix gave {value}")
    return value, perm


def trop_det(A: Any) -> TropicalNumber:
    """
    Tropical determinant: the max over permutations of the summed entries.

    Computed with a maximize-sum linear assignment (cubic time).

    Raises:
        NotSquare: If A is not square.
    """
    value, _ = optimal_permutation(A)
    return value


def trop_det_enumerate(A: Any, max_order: int = 9) -> TropicalNumber:
    """Permutation-enumeration determinant (factorial time), kept as an oracle."""
    A = _as_matrix(A)
    _require_square(A)
    k = A.rows
    if k > max_order:
        raise ValidationError(f"Enumeration is limited to order {max_order}, got {k}")
    grid = A.entries
    best = BOTTOM
    for perm in itertools.permutations(range(k)):
        weight = _path_weight([grid[i, perm[i]] for i in range(k)])
        if weight > best:
            best = weight
    return best


def is_regular(A: Any) -> bool:
    """
    Row-wise regularity: every row has a finite entry.

    The determinant-based predicate (``trop_det(A) != -inf``) is reported separately by
    :func:`has_finite_assignment`; the two disagree when rows are finite but no finite-weight
    permutation exists.

    Raises:
        NotSquare: If A is not square.
    """
    A = _as_matrix(A)
    _require_square(A)
    return bool(np.isfinite(A.entries).any(axis=1).all())


def _as_point(x: Point) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


def _side_value(
    g: Sequence[Evaluable], idx: Sequence[int], coeffs: Sequence[float], x: np.ndarray
) -> TropicalNumber:
    best = BOTTOM
    for i in idx:
        if is_bottom(coeffs[i]):
            continue
        value = coeffs[i] + float(g[i](x))
        if value > best:
            best = value
    return best


def verify_gm_dependence(
    g: Sequence[Evaluable],
    I: Sequence[int],
    J: Sequence[int],
    coeffs: Sequence[Any],
    samples: Sequence[Point],
    tol: float = 1e-9,
) -> bool:
    """
    Check a Gondran-Minoux dependence certificate on sample points.

    True iff max_{i in I}(a_i + g_i(x)) equals max_{j in J}(a_j + g_j(x)) at every sample, within
    tol. This certifies the samples only, not all of R^n.

    Raises:
        BadPartition: If I and J overlap, miss an index, or all coefficients are bottom.
    """
    k = len(g)
    left, right = set(I), set(J)
    if left & right:
        raise BadPartition(f"Index sets overlap: {sorted(left & right)}")
    if left | right != set(range(k)) or len(I) != len(left) or len(J) != len(right):
        raise BadPartition(f"Index sets must partition 0..{k - 1}")
    if len(coeffs) != k:
        raise BadPartition(f"Expected {k} coefficients, got {len(coeffs)}")
    a = [as_tropical(c) for c in coeffs]
    if all(is_bottom(c) for c in a):
        raise BadPartition("At least one coefficient must be finite")

    for sample in samples:
        x = _as_point(sample)
        if not t_close(_side_value(g, I, a, x), _side_value(g, J, a, x), tol):
            return False
    return True


def search_gm_certificate(
    g: Sequence[Evaluable],
    samples: Sequence[Point],
    trials: int = 3,
    rng: Optional[np.random.Generator] = None,
    tol: float = 1e-9,
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[float, ...]]]:
    """
    Randomized search for a Gondran-Minoux dependence certificate.

    Every split of the indices into two nonempty sets is tried with ``trials`` coefficient
    vectors: all zeros, values aligning the family at the first sample, then random draws.

    Returns:
        ``(I, J, coeffs)`` for the first certificate that validates, else None.
    """
    k = len(g)
    if k < 2 or not samples:
        return None
    rng = rng if rng is not None else np.random.default_rng(0)
    x0 = _as_point(samples[0])

    candidates: List[Tuple[float, ...]] = [tuple(0.0 for _ in range(k))]
    candidates.append(tuple(-float(gi(x0)) for gi in g))
    while len(candidates) < trials:
        candidates.append(tuple(float(v) for v in rng.normal(0.0, 1.0, size=k)))
    candidates = candidates[:trials]

    others = list(range(1, k))
    for size in range(0, k - 1):
        for extra in itertools.combinations(others, size):
            I = (0,) + extra
            J = tuple(j for j in range(k) if j not in I)
            for coeffs in candidates:
                if verify_gm_dependence(g, I, J, coeffs, samples, tol):
                    logger.debug(f"Dependence certificate found: I={I}, J={J}")
                    return I, J, coeffs
    return None
