"""
Tropical projective points and holomorphic maps into TP^m.
"""

from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import DimMismatch, ValidationError
from ..maxplus.matrix import search_gm_certificate
from ..maxplus.semiring import BOTTOM, as_tropical, is_bottom, t_close
from ..plfun.polynomial import TropicalPolynomial, as_point, as_points
from ..plfun.rational import TropicalRational, as_rational
from ..plfun.slicing import ray_slice
from ..utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ProjectivePoint:
    """[a_0 : ... : a_m], defined up to adding a common real to every coordinate."""

    coords: Tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(as_tropical(c) for c in self.coords)
        if len(coords) < 2:
            raise ValidationError("A projective point needs at least two coordinates")
        if all(is_bottom(c) for c in coords):
            raise ValidationError("A projective point needs a finite coordinate")
        object.__setattr__(self, "coords", coords)

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    def normalized(self) -> "ProjectivePoint":
        """Canonical representative with maximum coordinate 0."""
        top = max(self.coords)
        return ProjectivePoint(tuple(BOTTOM if is_bottom(c) else c - top for c in self.coords))

    def scaled(self, lam: float) -> "ProjectivePoint":
        """lam (*) p, the same projective point."""
        return ProjectivePoint(tuple(BOTTOM if is_bottom(c) else c + lam for c in self.coords))

    def equivalent(self, other: "ProjectivePoint", tol: float = 1e-9) -> bool:
        if self.m != other.m:
            return False
        a, b = self.normalized().coords, other.normalized().coords
        return all(t_close(x, y, tol) for x, y in zip(a, b))


def _as_entire(component: Any) -> TropicalPolynomial:
    if isinstance(component, TropicalPolynomial):
        return component
    if isinstance(component, TropicalRational) and component.is_entire:
        return component.num
    raise ValidationError("Map components must be tropical entire functions (polynomials)")


class ProjectiveMap:
    """f = [f_0 : ... : f_m] with tropical entire components on R^n."""

    __slots__ = ("_components",)

    def __init__(self, components: Sequence[Any]):
        polys = [_as_entire(c) for c in components]
        if len(polys) < 2:
            raise ValidationError("A projective map needs at least two components")
        dims = {p.dim for p in polys}
        if len(dims) != 1:
            raise DimMismatch(f"Map components disagree on the dimension: {sorted(dims)}")
        self._components = tuple(polys)

    @classmethod
    def from_rational(cls, f: Any) -> "ProjectiveMap":
        """[den : num], so that f = f_1 (/) f_0."""
        f = as_rational(f)
        return cls([f.den, f.num])

    @property
    def components(self) -> Tuple[TropicalPolynomial, ...]:
        return self._components

    @property
    def dim(self) -> int:
        return self._components[0].dim

    @property
    def m(self) -> int:
        return len(self._components) - 1

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self._components)

    def evaluate(self, x: Any) -> ProjectivePoint:
        point = as_point(x, self.dim)
        return ProjectivePoint(tuple(c.evaluate(point) for c in self._components))

    def evaluate_many(self, X: Any) -> np.ndarray:
        """Component values, shape (points, m + 1)."""
        points = as_points(X, self.dim)
        return np.column_stack([c.evaluate_many(points) for c in self._components])

    def norm(self, x: Any) -> float:
        """||f(x)|| = max_k f_k(x)."""
        point = as_point(x, self.dim)
        return max(c.evaluate(point) for c in self._components)

    def norm_many(self, X: Any) -> np.ndarray:
        return self.evaluate_many(X).max(axis=1)

    def verify_reduced(self, quad: Any, R: float, tol: float = 1e-9) -> bool:
        """
        Sampled check that the components share no root.

        Roots of the first component along every quadrature ray are tested against the roots of
        the others at the same position.
        """
        for theta in np.asarray(quad.nodes)[: max(1, len(quad.nodes) // 2)]:
            slices = [ray_slice(TropicalRational(c), theta, R, tol) for c in self._components]
            candidates = [t for t, _ in slices[0].roots()]
            for t in candidates:
                shared = all(
                    any(abs(t - u) <= tol * max(1.0, abs(t)) for u, _ in s.roots())
                    for s in slices[1:]
                )
                if shared:
                    logger.debug(f"Common root at t={t} along {tuple(theta)}")
                    return False
        return True

    def dependence_certificate(
        self, samples: Sequence[Any], trials: int = 3, seed: int = 0, tol: float = 1e-9
    ) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[float, ...]]]:
        """Randomized search for a Gondran-Minoux dependence among the components."""
        return search_gm_certificate(
            list(self._components), samples, trials=trials, rng=np.random.default_rng(seed), tol=tol
        )

    def __repr__(self) -> str:
        return f"ProjectiveMap(dim={self.dim}, components={list(self._components)!r})"


def sample_points(dim: int, count: int, scale: float = 10.0, seed: int = 0) -> List[np.ndarray]:
    """Reproducible normal sample points of the given scale."""
    rng = np.random.default_rng(seed)
    return list(rng.normal(0.0, scale, size=(count, dim)))
