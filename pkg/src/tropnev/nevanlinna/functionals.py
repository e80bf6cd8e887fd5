"""
Proximity, counting and characteristic functions on spheres of radius r.

Counting works per antipodal pair of quadrature nodes: the exact slice along a pair
representative on (-R, R) covers both rays, and the pair carries the combined weight.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, List, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from ..core.exceptions import ValidationError
from ..plfun.rational import TropicalRational, as_rational
from ..plfun.slicing import RaySlice, ray_slice
from ..utils.logger import get_logger
from .quadrature import SphereQuadrature

logger = get_logger(__name__)


def _check_quad(f: TropicalRational, quad: SphereQuadrature) -> None:
    if f.dim != quad.dim:
        raise ValidationError(f"Function has dim {f.dim} but the quadrature has dim {quad.dim}")


def pair_slices(
    f: Any, quad: SphereQuadrature, R: float, tol: float = 1e-9, workers: int = 1
) -> List[RaySlice]:
    """Exact slices along every pair representative, in node order."""
    f = as_rational(f)
    _check_quad(f, quad)
    directions = list(quad.pair_nodes)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            slices = list(executor.map(lambda theta: ray_slice(f, theta, R, tol), directions))
    else:
        slices = [ray_slice(f, theta, R, tol) for theta in directions]
    logger.debug(f"Sliced {len(slices)} antipodal pairs at R={R}")
    return slices


def _flatten(slices: Sequence[RaySlice], poles: bool) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pair index, |position| and multiplicity of every pole (or root) over all slices."""
    index, position, mult = [], [], []
    for k, s in enumerate(slices):
        for t, j in s.breakpoints:
            if (j < 0) if poles else (j > 0):
                index.append(k)
                position.append(abs(t))
                mult.append(abs(j))
    return np.array(index, dtype=int), np.array(position, dtype=float), np.array(mult, dtype=float)


def counting_profile(
    slices: Sequence[RaySlice], pair_weights: np.ndarray, radii: Any, poles: bool = True
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Counting density n(r) and counting function N(r) at every radius from one set of slices.

    Slices must reach at least the largest radius. Breakpoints with |t| = r are excluded.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    index, position, mult = _flatten(slices, poles)
    if index.size == 0:
        zeros = np.zeros_like(radii)
        return zeros, zeros.copy()

    inside = position[None, :] < radii[:, None]
    weight = np.asarray(pair_weights, dtype=float)[index] * mult
    density = (inside * weight[None, :]).sum(axis=1)
    reach = np.where(inside, radii[:, None] - position[None, :], 0.0)
    counting = 0.5 * (reach * weight[None, :]).sum(axis=1)
    return density, counting


def proximity(f: Any, r: float, quad: SphereQuadrature) -> float:
    """m(r, f): the sphere average of max(f, 0) at radius r."""
    f = as_rational(f)
    _check_quad(f, quad)
    values = f.evaluate_many(r * quad.nodes)
    return quad.average(np.maximum(values, 0.0))


def sphere_mean(f: Any, r: float, quad: SphereQuadrature) -> float:
    """Sphere average of f itself at radius r."""
    f = as_rational(f)
    _check_quad(f, quad)
    return quad.average(f.evaluate_many(r * quad.nodes))


def counting_density(
    f: Any, t: float, quad: SphereQuadrature, tol: float = 1e-9, workers: int = 1
) -> float:
    """n(t, f): averaged sum of |J| over poles strictly inside radius t."""
    if not t > 0:
        raise ValidationError(f"Radius must be positive, got {t}")
    slices = pair_slices(f, quad, t, tol, workers)
    density, _ = counting_profile(slices, quad.pair_weights, [t])
    return float(density[0])


def counting(
    f: Any, r: float, quad: SphereQuadrature, tol: float = 1e-9, workers: int = 1
) -> float:
    """N(r, f) from the closed form (1/2) sum |J| (r - |t|) per pair, averaged."""
    if not r > 0:
        raise ValidationError(f"Radius must be positive, got {r}")
    slices = pair_slices(f, quad, r, tol, workers)
    _, values = counting_profile(slices, quad.pair_weights, [r])
    return float(values[0])


def characteristic(
    f: Any, r: float, quad: SphereQuadrature, tol: float = 1e-9, workers: int = 1
) -> float:
    """T(r, f) = m(r, f) + N(r, f)."""
    return proximity(f, r, quad) + counting(f, r, quad, tol, workers)


def counting_by_integration(
    f: Any, r: float, quad: SphereQuadrature, steps: int = 2000, tol: float = 1e-9
) -> float:
    """Trapezoid value of (1/2) int_0^r n(t, f) dt, an oracle for the closed form."""
    slices = pair_slices(f, quad, r, tol)
    _, position, _ = _flatten(slices, poles=True)
    # n(t) is a step function; nodes on both sides of every step keep the rule exact
    ts = np.unique(
        np.concatenate([np.linspace(0.0, r, steps + 1), position, np.nextafter(position, np.inf)])
    )
    ts = ts[ts <= r]
    density, _ = counting_profile(slices, quad.pair_weights, ts)
    return 0.5 * float(trapezoid(density, ts))
