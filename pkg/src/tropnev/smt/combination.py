"""
Max-plus combinations of a fixed basis, their essential terms and the degree of degeneracy.

A term k of F = (+)_k a_k (*) g_k is essential when it strictly beats every other term somewhere.
Probe points find essential terms quickly; every index the probes miss is settled by a linear
program over the monomials of the basis when the dimension allows it.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from ..core.exceptions import DimMismatch, ValidationError
from ..maxplus.semiring import BOTTOM, as_tropical, is_bottom
from ..plfun.local import probe_directions
from ..plfun.polynomial import DEFAULT_TERM_CAP, TropicalPolynomial
from ..projective.hypersurface import HomogeneousPolynomial, map_monomials, multi_indices
from ..projective.space import ProjectiveMap
from ..utils.logger import get_logger

logger = get_logger(__name__)

PROBE_RADII = (1.0, 10.0, 100.0)


@dataclass(frozen=True, eq=False)
class CombinationBasis:
    """F = (+)_k a_k (*) g_k over a basis g_0, ..., g_M of tropical entire functions."""

    basis: Tuple[TropicalPolynomial, ...]
    coeffs: Tuple[float, ...]

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        coeffs = tuple(as_tropical(c) for c in self.coeffs)
        if not basis:
            raise ValidationError("A combination needs a nonempty basis")
        if len(coeffs) != len(basis):
            raise ValidationError(f"Expected {len(basis)} coefficients, got {len(coeffs)}")
        if len({g.dim for g in basis}) != 1:
            raise DimMismatch("Basis functions disagree on the dimension")
        if all(is_bottom(c) for c in coeffs):
            raise ValidationError("A combination needs at least one finite coefficient")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_composition(
        cls, P: HomogeneousPolynomial, F: ProjectiveMap, term_cap: int = DEFAULT_TERM_CAP
    ) -> "CombinationBasis":
        """P o f written over the basis f^I, I of degree d; missing indices get -inf."""
        coeffs = P.coeffs
        return cls(
            tuple(map_monomials(F, P.d, term_cap)),
            tuple(coeffs.get(index, BOTTOM) for index in multi_indices(P.m, P.d)),
        )

    @property
    def M(self) -> int:
        return len(self.basis) - 1

    @property
    def dim(self) -> int:
        return self.basis[0].dim

    @property
    def finite_indices(self) -> List[int]:
        return [k for k, c in enumerate(self.coeffs) if not is_bottom(c)]

    def term_values_many(self, X: Any) -> np.ndarray:
        """a_k + g_k(x) for every row x of X, shape (points, M + 1)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        columns = [
            np.full(X.shape[0], BOTTOM) if is_bottom(a) else a + g.evaluate_many(X)
            for g, a in zip(self.basis, self.coeffs)
        ]
        return np.column_stack(columns)

    def evaluate_many(self, X: Any) -> np.ndarray:
        return self.term_values_many(X).max(axis=1)


@dataclass(frozen=True)
class EssentialTerms:
    """Indices found essential, whether the set is certified exact, and one witness per index."""

    indices: Tuple[int, ...]
    exact: bool
    witnesses: Dict[int, Tuple[float, ...]] = field(default_factory=dict)

    @property
    def length(self) -> int:
        """Lower bound on l(F); equal to it when exact."""
        return len(self.indices)


def probe_points(dim: int, count: int, seed: int = 0) -> np.ndarray:
    """Origin, scaled axis and diagonal directions, then seeded normal samples."""
    directions = probe_directions(dim)
    rng = np.random.default_rng(seed)
    blocks = [np.zeros((1, dim))]
    blocks.extend(r * directions for r in PROBE_RADII)
    blocks.append(rng.normal(0.0, 10.0, size=(count, dim)))
    return np.vstack(blocks)


def _dominance_lp(comb: CombinationBasis, k: int, tol: float) -> Optional[np.ndarray]:
    """
    A point where term k strictly beats all others, or None when no such point exists.

    For each monomial l of g_k, maximize s subject to
    (e_i - e_l) x + s <= (a_k + c_l) - (a_j + c_i) over the monomials i of every other term j.
    """
    n = comb.dim
    a_k = comb.coeffs[k]
    rows: List[np.ndarray] = []
    rhs: List[np.ndarray] = []
    for j in comb.finite_indices:
        if j == k:
            continue
        g = comb.basis[j]
        rows.append(np.asarray(g.expos))
        rhs.append(comb.coeffs[j] + np.asarray(g.coeffs))
    if not rows:
        return np.zeros(n)
    other_expos = np.vstack(rows)
    other_consts = np.concatenate(rhs)

    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    bounds = [(None, None)] * n + [(None, 1.0)]
    own = comb.basis[k]
    for c_l, e_l in zip(own.coeffs, own.expos):
        A = np.hstack([other_expos - e_l[None, :], np.ones((other_expos.shape[0], 1))])
        b = (a_k + c_l) - other_consts
        result = linprog(cost, A_ub=A, b_ub=b, bounds=bounds, method="highs")
        if result.status == 0 and -result.fun > tol:
            return np.asarray(result.x[:n])
    return None


def essential_terms(
    comb: CombinationBasis,
    probe_count: int = 256,
    seed: int = 0,
    tol: float = 1e-9,
    exact_dim_limit: int = 3,
) -> EssentialTerms:
    """
    Indices k with a_k finite whose term strictly dominates somewhere by more than tol.

    Probe points are tried first. Indices they miss are decided by linear programming when the
    dimension is at most ``exact_dim_limit``; above it the result is a lower bound flagged inexact.
    """
    finite = comb.finite_indices
    if len(finite) == 1:
        return EssentialTerms((finite[0],), True, {finite[0]: tuple(np.zeros(comb.dim))})

    points = probe_points(comb.dim, probe_count, seed)
    values = comb.term_values_many(points)
    witnesses: Dict[int, Tuple[float, ...]] = {}
    for k in finite:
        others = np.delete(values, k, axis=1).max(axis=1)
        margin = values[:, k] - others
        hits = np.flatnonzero(margin > tol * np.maximum(1.0, np.abs(values[:, k])))
        if hits.size:
            witnesses[k] = tuple(float(v) for v in points[hits[0]])

    undecided = [k for k in finite if k not in witnesses]
    exact = True
    if undecided:
        if comb.dim <= exact_dim_limit:
            for k in undecided:
                point = _dominance_lp(comb, k, tol)
                if point is not None:
                    witnesses[k] = tuple(float(v) for v in point)
        else:
            exact = False
            logger.info(
                f"{len(undecided)} term(s) left undecided above dimension {exact_dim_limit}"
            )

    indices = tuple(sorted(witnesses))
    logger.debug(f"Essential terms {indices} of {len(finite)} finite (exact={exact})")
    return EssentialTerms(indices, exact, witnesses)


def ddg(
    Q: Sequence[CombinationBasis],
    M: Optional[int] = None,
    probe_count: int = 256,
    seed: int = 0,
    tol: float = 1e-9,
    exact_dim_limit: int = 3,
) -> int:
    """Number of members whose essential set is shorter than M + 1; each member uses its own M."""
    return ddg_interval(Q, M, probe_count, seed, tol, exact_dim_limit)[0]


def ddg_interval(
    Q: Sequence[CombinationBasis],
    M: Optional[int] = None,
    probe_count: int = 256,
    seed: int = 0,
    tol: float = 1e-9,
    exact_dim_limit: int = 3,
) -> Tuple[int, int]:
    """
    (lambda_min, lambda_max) for the degree of degeneracy.

    Members with a certified essential set count towards both ends; an uncertified member that
    looks incomplete counts only towards lambda_max.
    """
    low = high = 0
    for comb in Q:
        order = (M if M is not None else comb.M) + 1
        terms = essential_terms(comb, probe_count, seed, tol, exact_dim_limit)
        if terms.length < order:
            high += 1
            if terms.exact:
                low += 1
    return low, high
