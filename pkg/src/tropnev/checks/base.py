"""
Check registry for the verification harness.

A check takes a request (functions, map, hypersurfaces and parameters), computes a table and
decides whether the statement it verifies held on the grid.
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

import numpy as np

from ..core.config import RunConfig
from ..core.exceptions import ValidationError
from ..formats.output import render
from ..maxplus.matrix import TropicalMatrix
from ..nevanlinna.quadrature import SphereQuadrature
from ..plfun.rational import TropicalRational
from ..projective.hypersurface import HomogeneousPolynomial, hypersurface_from_values
from ..projective.space import ProjectiveMap
from ..utils.logger import get_logger

logger = get_logger(__name__)


class CheckStatus(Enum):
    """Outcome of a check."""

    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass
class CheckResult:
    """Result of a check run."""

    name: str
    status: CheckStatus
    message: str = ""
    header: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    execution_time: float = 0.0

    @property
    def exit_code(self) -> int:
        return 1 if self.status == CheckStatus.FAILED else 0

    def render(self, fmt: str = "csv") -> str:
        summary = {"check": self.name, "status": self.status.value, **self.summary}
        if self.message:
            summary["message"] = self.message
        return render(self.header, self.rows, fmt, self.metadata, summary)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status.value,
            "message": self.message,
            "header": list(self.header),
            "rows": [list(r) for r in self.rows],
            "summary": dict(self.summary),
            "metadata": dict(self.metadata),
        }


@dataclass
class CheckRequest:
    """Inputs shared by every check; each check reads the fields it needs."""

    functions: List[TropicalRational] = field(default_factory=list)
    projective_map: Optional[ProjectiveMap] = None
    hypersurfaces: List[HomogeneousPolynomial] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    points: List[Tuple[float, ...]] = field(default_factory=list)
    theta: Optional[Tuple[float, ...]] = None
    c: Optional[Tuple[float, ...]] = None
    q: Optional[float] = None
    alpha: float = 2.0
    matrix: Optional[TropicalMatrix] = None
    r_grid: Optional[np.ndarray] = None

    def require_functions(self) -> List[TropicalRational]:
        if not self.functions:
            raise ValidationError("This check needs at least one function (-f/--function)")
        return self.functions

    def require_map(self) -> ProjectiveMap:
        """The given map, else [den : num] of the first function."""
        if self.projective_map is not None:
            return self.projective_map
        if self.functions:
            return ProjectiveMap.from_rational(self.functions[0])
        raise ValidationError("This check needs a map (--map) or a function (-f)")

    def require_hypersurfaces(self) -> List[HomogeneousPolynomial]:
        """The given hypersurfaces, else the degree-one ones built from the values."""
        if self.hypersurfaces:
            return self.hypersurfaces
        if self.values:
            return hypersurface_from_values(self.values)
        raise ValidationError("This check needs hypersurfaces (--hyper) or values (-a/--value)")

    def require_grid(self) -> np.ndarray:
        if self.r_grid is None:
            raise ValidationError("This check needs a radius grid (--r)")
        return self.r_grid

    def point_list(self, dim: int) -> List[np.ndarray]:
        """The requested points, or the origin."""
        if not self.points:
            return [np.zeros(dim)]
        return [np.asarray(p, dtype=float) for p in self.points]


class Check(ABC):
    """Base class for registered checks."""

    name: str = ""
    description: str = ""

    def __init__(self, settings: Optional[RunConfig] = None):
        self.settings = settings or RunConfig()
        self._quadratures: Dict[int, SphereQuadrature] = {}

    def quadrature(self, dim: int) -> SphereQuadrature:
        if dim not in self._quadratures:
            self._quadratures[dim] = self.settings.make_quadrature_for(dim)
        return self._quadratures[dim]

    def result(
        self,
        status: CheckStatus,
        header: Sequence[str],
        rows: Sequence[Sequence[Any]],
        message: str = "",
        **summary: Any,
    ) -> CheckResult:
        return CheckResult(
            name=self.name,
            status=status,
            message=message,
            header=list(header),
            rows=[list(r) for r in rows],
            summary=summary,
            metadata=self.settings.metadata(),
        )

    @abstractmethod
    def execute(self, request: CheckRequest) -> CheckResult:
        """Compute the table and decide the status."""
        pass

    def run(self, request: CheckRequest) -> CheckResult:
        """Execute with timing and logging; domain errors propagate to the caller."""
        logger.info(f"Running check: {self.name}")
        start = time.perf_counter()
        result = self.execute(request)
        result.execution_time = time.perf_counter() - start
        logger.info(
            f"Check '{self.name}' finished with status {result.status.value} "
            f"in {result.execution_time:.3f}s"
        )
        return result


class CheckRegistry:
    """Registry of check classes by name."""

    def __init__(self):
        self._checks: Dict[str, Type[Check]] = {}

    def register(self, check_class: Type[Check]) -> None:
        name = check_class.name or check_class.__name__.lower().replace("check", "")
        self._checks[name] = check_class
        logger.debug(f"Registered check: {name}")

    def create(self, name: str, settings: Optional[RunConfig] = None) -> Check:
        if name not in self._checks:
            raise ValidationError(f"Unknown check: {name}")
        return self._checks[name](settings)

    def list_checks(self) -> List[str]:
        return sorted(self._checks)

    def describe(self) -> Dict[str, str]:
        return {name: cls.description for name, cls in sorted(self._checks.items())}


# Global check registry
registry = CheckRegistry()


def register_check(check_class: Type[Check]) -> Type[Check]:
    """Decorator to register a check."""
    registry.register(check_class)
    return check_class
