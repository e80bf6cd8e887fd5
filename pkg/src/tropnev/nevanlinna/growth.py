"""
Order, hyper-order and subnormal-growth estimates from a sampled characteristic.

These are least-squares trends over the top decade of a finite grid and certify nothing about
the limsup they imitate.
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict

import numpy as np

from ..core.exceptions import DegenerateGrid
from ..utils.logger import get_logger
from .quadrature import SphereQuadrature
from .table import CharTable, char_table, check_grid

logger = get_logger(__name__)

MIN_DECADES = 3.0
MIN_FIT_POINTS = 3
SUBNORMAL_THRESHOLD = 0.01
_FLAT = 1e-12


@dataclass(frozen=True)
class GrowthEstimate:
    """Estimated order, hyper-order and the subnormal-growth indicator."""

    rho: float
    rho2: float
    subnormal: bool
    log_t_over_r: float
    fit_points: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    if x.size < 2:
        return 0.0
    return float(np.polyfit(x, y, 1)[0])


def growth_from_series(r_grid: Any, T_vals: Any) -> GrowthEstimate:
    """
    Growth estimate from sampled characteristic values.

    Raises:
        DegenerateGrid: If the grid spans fewer than three decades or its top decade holds fewer
            than three radii.
    """
    r = np.asarray(r_grid, dtype=float)
    T = np.asarray(T_vals, dtype=float)
    r_max = float(r[-1])
    if math.log10(r_max / float(r[0])) < MIN_DECADES - 1e-9:
        raise DegenerateGrid(f"Growth estimates need a grid spanning {MIN_DECADES:g} decades")
    top = r >= r_max / 10.0
    if int(top.sum()) < MIN_FIT_POINTS:
        raise DegenerateGrid(f"The top decade of the grid needs at least {MIN_FIT_POINTS} radii")

    r_top, T_top = r[top], T[top]
    positive = T_top > _FLAT
    rho = _slope(np.log(r_top[positive]), np.log(T_top[positive])) if positive.sum() >= 2 else 0.0
    above_one = T_top > 1.0
    rho2 = (
        _slope(np.log(r_top[above_one]), np.log(np.log(T_top[above_one])))
        if above_one.sum() >= 2
        else 0.0
    )

    T_last = float(T[-1])
    log_t_over_r = math.log(T_last) / r_max if T_last > _FLAT else 0.0
    estimate = GrowthEstimate(
        rho=max(rho, 0.0) if positive.sum() >= 2 else 0.0,
        rho2=rho2,
        subnormal=log_t_over_r < SUBNORMAL_THRESHOLD,
        log_t_over_r=log_t_over_r,
        fit_points=int(top.sum()),
    )
    logger.debug(f"Growth estimate: {estimate}")
    return estimate


def growth_estimate(
    f: Any, r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9, workers: int = 1
) -> GrowthEstimate:
    """Estimate (rho, rho2, subnormal) of f over the grid."""
    return growth_from_table(char_table(f, check_grid(r_grid), quad, tol, workers))


def growth_from_table(table: CharTable) -> GrowthEstimate:
    """Growth estimate from an existing characteristic table."""
    return growth_from_series(table.r_grid, table.T_vals)
