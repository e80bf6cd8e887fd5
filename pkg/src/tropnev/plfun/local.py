"""
Local analysis at a point: one-sided directional derivatives, jumps and point classification.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

import numpy as np

from ..utils.logger import get_logger
from .polynomial import TropicalPolynomial, as_point
from .rational import as_rational

logger = get_logger(__name__)


class PointKind(Enum):
    """Classification of a point of a tropical meromorphic function."""

    SMOOTH = "smooth"
    ROOT = "root"
    POLE = "pole"


@dataclass(frozen=True)
class PointClass:
    """Kind of a point and its multiplicity (0 for smooth points)."""

    kind: PointKind
    multiplicity: float

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "multiplicity": self.multiplicity}


def _as_directions(phi: Any, dim: int) -> np.ndarray:
    directions = np.asarray(phi, dtype=float)
    if directions.ndim <= 1:
        return as_point(directions, dim)[None, :]
    return directions


def _poly_derivative(
    P: TropicalPolynomial, x: np.ndarray, directions: np.ndarray, tol: float
) -> np.ndarray:
    # the right derivative along phi is the best slope among the terms active at x
    active = P.expos[P.active_terms(x, tol)]
    return np.max(directions @ active.T, axis=1)


def dir_deriv_plus(f: Any, x: Any, phi: Any, tol: float = 1e-9) -> Any:
    """
    One-sided derivative lim_{h -> 0+} (f(x + h phi) - f(x)) / h.

    Computed exactly from the terms active at x. ``phi`` may be one direction or an array of
    directions, in which case an array is returned.
    """
    f = as_rational(f)
    point = as_point(x, f.dim)
    directions = _as_directions(phi, f.dim)
    values = _poly_derivative(f.num, point, directions, tol) - _poly_derivative(
        f.den, point, directions, tol
    )
    if np.asarray(phi).ndim <= 1:
        return float(values[0])
    return values


def jump_J(f: Any, x: Any, phi: Any, tol: float = 1e-9) -> Any:
    """J_f(x; phi): the sum of the one-sided derivatives along phi and -phi."""
    directions = _as_directions(phi, as_rational(f).dim)
    values = dir_deriv_plus(f, x, directions, tol) + dir_deriv_plus(f, x, -directions, tol)
    if np.asarray(phi).ndim <= 1:
        return float(values[0])
    return values


def probe_directions(dim: int) -> np.ndarray:
    """Coordinate axes and diagonal directions, both signs."""
    axes = np.vstack([np.eye(dim), -np.eye(dim)])
    if dim == 1:
        return axes
    if dim <= 4:
        signs = np.array(list(itertools.product((-1.0, 1.0), repeat=dim)))
    else:
        signs = np.vstack([np.ones(dim), -np.ones(dim)])
    return np.vstack([axes, signs / np.sqrt(dim)])


def classify_point(f: Any, x: Any, quad: Optional[Any] = None, tol: float = 1e-9) -> PointClass:
    """
    Classify x as smooth, root or pole.

    The jump is sampled on the quadrature nodes and on the axis and diagonal probes. A negative
    sample makes x a pole (pole takes precedence over root) with multiplicity the quadrature of
    |J| over negative samples; otherwise positive samples make it a root. In one variable the
    two-point rule makes the result exact.

    When the sign region is thin enough to miss every node but not every probe, the multiplicity
    is taken from the probes as an equal-weight rule carrying the total node weight, so its
    scale matches the node quadrature. That estimate is coarse (the probes are not a uniform
    sphere design); raise K when the result matters.

    Args:
        f: Function to classify.
        x: Point in R^n.
        quad: Sphere quadrature (anything with ``nodes`` and ``weights``); the default rule for
            the dimension is used when omitted.
        tol: Jumps within tol of zero count as zero.
    """
    f = as_rational(f)
    point = as_point(x, f.dim)
    if quad is None:
        from ..nevanlinna.quadrature import make_quadrature

        quad = make_quadrature(f.dim)

    nodes = np.asarray(quad.nodes, dtype=float)
    weights = np.asarray(quad.weights, dtype=float)
    node_jumps = jump_J(f, point, nodes, tol)
    probes = probe_directions(f.dim)
    probe_jumps = jump_J(f, point, probes, tol)
    probe_weight = float(weights.sum()) / len(probes)

    def mass(mask: np.ndarray, probe_mask: np.ndarray) -> float:
        value = float(np.dot(weights[mask], np.abs(node_jumps[mask])))
        if value == 0.0 and probe_mask.any():
            value = probe_weight * float(np.abs(probe_jumps[probe_mask]).sum())
        return value

    negative, probe_negative = node_jumps < -tol, probe_jumps < -tol
    if negative.any() or probe_negative.any():
        return PointClass(PointKind.POLE, mass(negative, probe_negative))

    positive, probe_positive = node_jumps > tol, probe_jumps > tol
    if positive.any() or probe_positive.any():
        return PointClass(PointKind.ROOT, mass(positive, probe_positive))

    return PointClass(PointKind.SMOOTH, 0.0)
