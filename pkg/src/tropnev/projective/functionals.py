"""
Cartan characteristic, Weil function and hypersurface value-distribution sequences.
"""

import warnings
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..core.exceptions import BoundedCharacteristic, DegenerateMap, NotComplete
from ..nevanlinna.quadrature import SphereQuadrature
from ..nevanlinna.table import char_table, check_grid
from ..nevanlinna.theorems import warn_if_above_lf
from ..plfun.local import probe_directions
from ..plfun.polynomial import DEFAULT_TERM_CAP, TropicalPolynomial
from ..plfun.rational import TropicalRational, as_rational
from ..utils.logger import get_logger
from .hypersurface import HomogeneousPolynomial, compose
from .space import ProjectiveMap

logger = get_logger(__name__)

PROBE_RADII = (1.0, 10.0, 100.0)


def cartan_characteristic(F: ProjectiveMap, r: float, quad: SphereQuadrature) -> float:
    """T_f(r): sphere average of ||f(r theta)|| minus ||f(0)||."""
    return quad.average(F.norm_many(r * quad.nodes)) - F.norm(np.zeros(F.dim))


def cartan_table(F: ProjectiveMap, r_grid: Any, quad: SphereQuadrature) -> np.ndarray:
    return np.array([cartan_characteristic(F, float(r), quad) for r in check_grid(r_grid)])


def weil_function(P: HomogeneousPolynomial, F: ProjectiveMap, x: Any) -> float:
    """d ||f(x)|| + ||a|| - P(f(x)); nonnegative."""
    return float(weil_many(P, F, np.atleast_2d(np.asarray(x, dtype=float)).reshape(1, F.dim))[0])


def weil_many(P: HomogeneousPolynomial, F: ProjectiveMap, X: Any) -> np.ndarray:
    values = F.evaluate_many(X)
    return P.d * values.max(axis=1) + P.max_coeff - P.evaluate_many(values)


def hyper_proximity(
    P: HomogeneousPolynomial, F: ProjectiveMap, r: float, quad: SphereQuadrature
) -> float:
    """m_f(r, V_P): sphere average of the Weil function at radius r."""
    return quad.average(weil_many(P, F, r * quad.nodes))


def _probe_points(dim: int, quad: Optional[SphereQuadrature], count: int, seed: int) -> np.ndarray:
    directions = np.asarray(quad.nodes) if quad is not None else probe_directions(dim)
    rng = np.random.default_rng(seed)
    blocks = [np.zeros((1, dim))]
    blocks.extend(r * directions for r in PROBE_RADII)
    blocks.append(rng.normal(0.0, 10.0, size=(count, dim)))
    return np.vstack(blocks)


def nondegeneracy_witness(
    P: HomogeneousPolynomial,
    F: ProjectiveMap,
    quad: Optional[SphereQuadrature] = None,
    probe_count: int = 256,
    seed: int = 0,
    tol: float = 1e-9,
) -> Optional[np.ndarray]:
    """
    A point where one term of P o f beats every other by more than tol, or None.

    Such a point shows f(R^n) is not inside V_P. Polynomials with a single finite term and
    constant maps never get a witness.
    """
    if P.num_terms < 2 or F.is_constant():
        return None
    points = _probe_points(F.dim, quad, probe_count, seed)
    terms = P.term_values_many(F.evaluate_many(points))
    ordered = np.sort(terms, axis=1)
    margin = ordered[:, -1] - ordered[:, -2]
    scale = np.maximum(1.0, np.abs(ordered[:, -1]))
    hits = np.flatnonzero(margin > tol * scale)
    if hits.size == 0:
        return None
    return points[hits[0]]


def require_nondegenerate(
    P: HomogeneousPolynomial,
    F: ProjectiveMap,
    quad: Optional[SphereQuadrature] = None,
    probe_count: int = 256,
    seed: int = 0,
    tol: float = 1e-9,
) -> np.ndarray:
    witness = nondegeneracy_witness(P, F, quad, probe_count, seed, tol)
    if witness is None:
        raise DegenerateMap(
            "The map appears to lie in the hypersurface (no single-term dominance found)"
        )
    return witness


@dataclass
class HyperFmtTable:
    """Per-radius terms of the hypersurface first main theorem."""

    r_grid: np.ndarray
    mf: np.ndarray
    Nf: np.ndarray
    dTf: np.ndarray

    @property
    def residual(self) -> np.ndarray:
        return self.mf + self.Nf - self.dTf

    @property
    def header(self) -> List[str]:
        return ["r", "mf", "Nf", "dTf", "residual"]

    def rows(self) -> List[List[float]]:
        return [
            [float(r), float(m), float(n), float(t), float(z)]
            for r, m, n, t, z in zip(self.r_grid, self.mf, self.Nf, self.dTf, self.residual)
        ]


def composition_root_counting(
    P: HomogeneousPolynomial,
    F: ProjectiveMap,
    r_grid: Any,
    quad: SphereQuadrature,
    tol: float = 1e-9,
    term_cap: int = DEFAULT_TERM_CAP,
) -> np.ndarray:
    """N(r, 1_T / (P o f)) over the grid."""
    composed = compose(P, F, term_cap)
    return char_table(TropicalRational(composed).reciprocal(), r_grid, quad, tol).N_vals


def hyper_fmt_table(
    P: HomogeneousPolynomial,
    F: ProjectiveMap,
    r_grid: Any,
    quad: SphereQuadrature,
    tol: float = 1e-9,
    term_cap: int = DEFAULT_TERM_CAP,
    probe_count: int = 256,
    seed: int = 0,
) -> HyperFmtTable:
    """
    m_f(r, V_P), N(r, 1_T / (P o f)) and d T_f(r) over the grid.

    Raises:
        DegenerateMap: When no nondegeneracy witness is found.
    """
    require_nondegenerate(P, F, quad, probe_count, seed, tol)
    grid = check_grid(r_grid)
    mf = np.array([hyper_proximity(P, F, float(r), quad) for r in grid])
    Nf = composition_root_counting(P, F, grid, quad, tol, term_cap)
    return HyperFmtTable(grid, mf, Nf, P.d * cartan_table(F, grid, quad))


def hyper_fmt_residual(
    P: HomogeneousPolynomial,
    F: ProjectiveMap,
    r_grid: Any,
    quad: SphereQuadrature,
    tol: float = 1e-9,
    term_cap: int = DEFAULT_TERM_CAP,
    probe_count: int = 256,
    seed: int = 0,
) -> np.ndarray:
    """m_f + N(r, 1_T / (P o f)) - d T_f over the grid; bounded."""
    return hyper_fmt_table(P, F, r_grid, quad, tol, term_cap, probe_count, seed).residual


def complete_poly_gap(
    P: HomogeneousPolynomial,
    F: ProjectiveMap,
    r_grid: Any,
    quad: SphereQuadrature,
    tol: float = 1e-9,
    term_cap: int = DEFAULT_TERM_CAP,
) -> np.ndarray:
    """
    T_f(r) - N(r, 1_T / (P o f)) / d for a complete P.

    The values stay within [min a, max a] / d of a constant.

    Raises:
        NotComplete: If some coefficient of P is -inf.
    """
    if not P.is_complete():
        raise NotComplete(f"P has {P.num_terms} of {P.M + 1} coefficients finite")
    grid = check_grid(r_grid)
    roots = composition_root_counting(P, F, grid, quad, tol, term_cap)
    return cartan_table(F, grid, quad) - roots / P.d


def _top_decade(grid: np.ndarray) -> np.ndarray:
    return grid >= grid[-1] / 10.0


def _require_growth(T: np.ndarray, tol: float) -> None:
    if not (T[-1] > tol and T[-1] - T[0] > tol):
        raise BoundedCharacteristic("The characteristic does not grow over the grid")


def defect(
    P: HomogeneousPolynomial,
    F: ProjectiveMap,
    r_grid: Any,
    quad: SphereQuadrature,
    tol: float = 1e-9,
    probe_count: int = 256,
    seed: int = 0,
) -> float:
    """
    Grid estimate of liminf m_f / (d T_f): the minimum over the top decade of the grid.

    Raises:
        DegenerateMap: When no nondegeneracy witness is found.
        BoundedCharacteristic: When T_f does not grow over the grid.
    """
    require_nondegenerate(P, F, quad, probe_count, seed, tol)
    grid = check_grid(r_grid)
    T = cartan_table(F, grid, quad)
    _require_growth(T, tol)
    top = _top_decade(grid) & (T > tol)
    ratios = [hyper_proximity(P, F, float(r), quad) / (P.d * t) for r, t in zip(grid[top], T[top])]
    return float(min(ratios))


def value_defect(f: Any, a: float, r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9) -> float:
    """1 - max over the top decade of N(r, 1_T / (f (+) a)) / T(r, f)."""
    f = as_rational(f)
    grid = check_grid(r_grid)
    T = char_table(f, grid, quad, tol).T_vals
    _require_growth(T, tol)
    N = char_table(f.add_constant(a).reciprocal(), grid, quad, tol).N_vals
    top = _top_decade(grid) & (T > tol)
    return float(1.0 - np.max(N[top] / T[top]))


def value_identity_residual(
    f: Any, values: Sequence[float], r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9
) -> np.ndarray:
    """q T(r, f) - sum_j N(r, 1_T / (f (+) a_j)) for q values below L_f; bounded."""
    f = as_rational(f)
    grid = check_grid(r_grid)
    for a in values:
        warn_if_above_lf(f, float(a), quad, float(grid[-1]), tol)
    T = char_table(f, grid, quad, tol).T_vals
    total = np.zeros_like(grid)
    for a in values:
        total += char_table(f.add_constant(float(a)).reciprocal(), grid, quad, tol).N_vals
    return len(values) * T - total


def one_dim_identity_residual(
    f: Any, a: float, r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9
) -> np.ndarray:
    """
    T(r, f) - [N(r, 1_T / (f (+) a)) - N(r, f (+) a) + N(r, f)] over the grid; bounded.

    Returns an empty array (with a warning) for constant f.
    """
    f = as_rational(f)
    grid = check_grid(r_grid)
    if f.is_constant():
        message = "Identity residual skipped: f is constant"
        logger.warning(message)
        warnings.warn(message, UserWarning, stacklevel=2)
        return np.array([], dtype=float)
    raised = f.add_constant(a)
    table = char_table(f, grid, quad, tol)
    roots = char_table(raised.reciprocal(), grid, quad, tol).N_vals
    poles = char_table(raised, grid, quad, tol).N_vals
    return table.T_vals - (roots - poles + table.N_vals)


def cartan_vs_characteristic(
    f: Any, r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9
) -> np.ndarray:
    """T_f(r) - T(r, f) for the map [den : num]; bounded."""
    f = as_rational(f)
    grid = check_grid(r_grid)
    F = ProjectiveMap.from_rational(f)
    return cartan_table(F, grid, quad) - char_table(f, grid, quad, tol).T_vals


def residual_summary(values: Sequence[float]) -> Dict[str, float]:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return {"min": 0.0, "max": 0.0, "spread": 0.0}
    low, high = float(values.min()), float(values.max())
    return {"min": low, "max": high, "spread": high - low}
