"""
Sampled Nevanlinna functionals over a radius grid.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from ..core.exceptions import ValidationError
from ..plfun.rational import as_rational
from ..utils.logger import get_logger
from .functionals import counting_profile, pair_slices
from .quadrature import SphereQuadrature

logger = get_logger(__name__)

TABLE_HEADER = ("r", "m", "n", "N", "T")


def check_grid(r_grid: Any) -> np.ndarray:
    """Return the grid as an array; it must be nonempty, positive and increasing."""
    grid = np.atleast_1d(np.asarray(r_grid, dtype=float))
    if grid.ndim != 1 or grid.size == 0:
        raise ValidationError("Radius grid must be a nonempty sequence")
    if not (grid > 0).all():
        raise ValidationError("Radius grid must be positive")
    if grid.size > 1 and not (np.diff(grid) > 0).all():
        raise ValidationError("Radius grid must be strictly increasing")
    return grid


@dataclass
class CharTable:
    """Values of m, n, N and T = m + N at every grid radius."""

    r_grid: np.ndarray
    m_vals: np.ndarray
    n_vals: np.ndarray
    N_vals: np.ndarray
    T_vals: np.ndarray
    quad: Dict[str, Any] = field(default_factory=dict)

    @property
    def header(self) -> List[str]:
        return list(TABLE_HEADER)

    def rows(self) -> List[List[float]]:
        return [
            [float(r), float(m), float(n), float(N), float(T)]
            for r, m, n, N, T in zip(
                self.r_grid, self.m_vals, self.n_vals, self.N_vals, self.T_vals
            )
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "quad": dict(self.quad),
            "columns": self.header,
            "rows": self.rows(),
        }


def char_table(
    f: Any, r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9, workers: int = 1
) -> CharTable:
    """
    Tabulate m, n, N and T over the grid.

    Rays are sliced once at the largest radius; every smaller radius reuses those slices.
    """
    f = as_rational(f)
    grid = check_grid(r_grid)
    slices = pair_slices(f, quad, float(grid[-1]), tol, workers)
    n_vals, N_vals = counting_profile(slices, quad.pair_weights, grid)

    positive = np.empty_like(grid)
    for k, r in enumerate(grid):
        positive[k] = quad.average(np.maximum(f.evaluate_many(r * quad.nodes), 0.0))

    logger.debug(f"Characteristic table over {grid.size} radii with {quad.size} nodes")
    return CharTable(
        r_grid=grid,
        m_vals=positive,
        n_vals=n_vals,
        N_vals=N_vals,
        T_vals=positive + N_vals,
        quad=quad.descriptor(),
    )
