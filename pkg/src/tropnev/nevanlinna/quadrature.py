"""
Antipodally symmetric quadrature rules for the normalized average over the unit sphere.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from ..core.exceptions import BadSize
from ..utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_SIZE = 4096


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """
    Nodes on S^{n-1} with positive weights summing to 1.

    Node ``i + K/2`` is the antipode of node ``i`` and carries the same weight, so the first half
    of the nodes indexes the antipodal pairs.
    """

    dim: int
    scheme: str
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    seed: Optional[int] = None

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])

    @property
    def pair_nodes(self) -> np.ndarray:
        """One representative per antipodal pair."""
        return self.nodes[: self.size // 2]

    @property
    def pair_weights(self) -> np.ndarray:
        """Combined weight of each antipodal pair."""
        half = self.size // 2
        return self.weights[:half] + self.weights[half:]

    def average(self, values: Any) -> float:
        """Weighted average of per-node values, summed in node order."""
        return float(np.dot(self.weights, np.asarray(values, dtype=float)))

    def error_bound(self, factor: float = 5.0) -> float:
        """Heuristic error scale factor / K, zero for the exact one-variable rule."""
        return 0.0 if self.dim == 1 else factor / self.size

    def descriptor(self) -> Dict[str, Any]:
        return {"scheme": self.scheme, "K": self.size, "seed": self.seed}


def omega_n(n: int) -> float:
    """Surface area 2 pi^{n/2} / Gamma(n/2) of the unit sphere in R^n."""
    if n < 1:
        raise BadSize(f"Dimension must be at least 1, got {n}")
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def make_quadrature(
    n: int, size: int = DEFAULT_SIZE, seed: int = 0, scheme: Optional[str] = None
) -> SphereQuadrature:
    """
    Build a sphere quadrature.

    Args:
        n: Ambient dimension.
        size: Number of nodes K (even, at least 2); ignored by the exact one-variable rule.
        seed: Seed for the Monte Carlo scheme.
        scheme: ``exact-pair``, ``uniform-angle`` or ``monte-carlo``; chosen from n when omitted.

    Raises:
        BadSize: For n < 1, odd K, K < 2 or a scheme that does not fit the dimension.
    """
    if n < 1:
        raise BadSize(f"Dimension must be at least 1, got {n}")
    if size < 2 or size % 2:
        raise BadSize(f"Quadrature size must be an even integer >= 2, got {size}")
    if scheme in (None, "auto"):
        scheme = "exact-pair" if n == 1 else "uniform-angle" if n == 2 else "monte-carlo"

    if n == 1:
        if scheme != "exact-pair":
            logger.debug(f"Scheme {scheme} replaced by the exact two-point rule in one variable")
        nodes = np.array([[1.0], [-1.0]])
        return _build(1, "exact-pair", nodes, seed)

    if scheme == "uniform-angle":
        if n != 2:
            raise BadSize(f"The uniform-angle rule needs n = 2, got {n}")
        angles = 2.0 * np.pi * np.arange(size) / size
        nodes = np.column_stack([np.cos(angles), np.sin(angles)])
        # exact axis values keep the axis probes on the nodes
        nodes[np.abs(nodes) < 1e-15] = 0.0
        return _build(2, scheme, nodes, seed)

    if scheme == "monte-carlo":
        rng = np.random.default_rng(seed)
        half = rng.standard_normal((size // 2, n))
        half /= np.linalg.norm(half, axis=1, keepdims=True)
        return _build(n, scheme, np.vstack([half, -half]), seed)

    raise BadSize(f"Unknown quadrature scheme {scheme!r} for dimension {n}")


def _build(n: int, scheme: str, nodes: np.ndarray, seed: int) -> SphereQuadrature:
    weights = np.full(nodes.shape[0], 1.0 / nodes.shape[0])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    logger.debug(f"Quadrature {scheme} on S^{n - 1} with {nodes.shape[0]} nodes")
    return SphereQuadrature(dim=n, scheme=scheme, nodes=nodes, weights=weights, seed=seed)
