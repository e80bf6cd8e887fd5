"""
Run configuration for tropnev: radius grid, quadrature, tolerances and report thresholds.
"""

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Optional, Tuple, Union

import numpy as np
import toml
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .._version import __version__
from ..utils.logger import get_logger
from .exceptions import ConfigurationError, ValidationError

if TYPE_CHECKING:
    from ..nevanlinna.quadrature import SphereQuadrature

logger = get_logger(__name__)

SCHEMES = ("auto", "exact-pair", "uniform-angle", "monte-carlo")
SPACINGS = ("linear", "log")
OUTPUT_FORMATS = ("csv", "json")


def parse_r_spec(spec: str) -> Tuple[float, float, int, str]:
    """
    Parse a radius grid spec ``min:max:count[:log]``.

    Returns:
        ``(r_min, r_max, count, spacing)``

    Raises:
        ConfigurationError: If the spec is malformed.
    """
    parts = [p.strip() for p in spec.split(":")]
    if len(parts) not in (3, 4):
        raise ConfigurationError(f"Radius grid must look like min:max:count[:log], got {spec!r}")
    try:
        r_min, r_max, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ConfigurationError(f"Bad radius grid {spec!r}: {e}") from e
    spacing = "linear"
    if len(parts) == 4:
        if parts[3] not in ("log", "linear", "lin"):
            raise ConfigurationError(f"Grid spacing must be 'log' or 'linear', got {parts[3]!r}")
        spacing = "log" if parts[3] == "log" else "linear"
    return r_min, r_max, count, spacing


class RunConfig(BaseSettings):
    """Settings shared by every functional, check and CLI subcommand."""

    model_config = SettingsConfigDict(
        env_prefix="TROPNEV_",
        case_sensitive=False,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Radius grid
    r_min: float = Field(1.0, description="Smallest radius of the grid")
    r_max: float = Field(100.0, description="Largest radius of the grid")
    r_count: int = Field(100, description="Number of grid radii")
    r_spacing: str = Field("linear", description="Grid spacing (linear or log)")

    # Quadrature
    scheme: str = Field("auto", description="Sphere quadrature scheme")
    quad_size: int = Field(4096, description="Number of quadrature nodes K (even)")
    seed: int = Field(0, description="Seed for Monte Carlo nodes and random probes")

    # Tolerances and thresholds
    tol: float = Field(1e-9, description="Equality tolerance for tropical comparisons")
    quad_error_factor: float = Field(5.0, description="Quadrature error bound is factor / K")
    ratio_threshold: float = Field(0.05, description="Threshold for m/T and defect estimates")
    slack_epsilon: float = Field(0.5, description="Allowed negative slack in SMT reports")
    slack_r_min: float = Field(10.0, description="Radius from which SMT slack is enforced")

    # Black-box slicer
    slicer_cells: int = Field(64, description="Initial uniform cells of the slicer")
    slicer_min_width: float = Field(1e-6, description="Terminal subdivision width")
    slicer_slope_tol: float = Field(1e-7, description="Slope agreement tolerance")
    slicer_max_evals: int = Field(200_000, description="Evaluation budget per slice")

    # Symbolic expansion and probing
    composition_term_cap: int = Field(100_000, description="Term cap for P o f expansion")
    probe_count: int = Field(256, description="Random probes for dominance and nondegeneracy")
    exact_dim_limit: int = Field(3, description="Largest dimension for LP dominance certificates")

    # Runtime
    workers: int = Field(1, description="Worker threads for per-node slicing")
    output_format: str = Field("csv", description="Output format (csv or json)")
    log_level: str = Field("WARNING", description="Logging level")

    @field_validator("r_min", "r_max")
    @classmethod
    def validate_radius(cls, v: float) -> float:
        """Radii must be positive."""
        if not v > 0:
            raise ValueError("Radii must be positive")
        return v

    @field_validator("quad_size")
    @classmethod
    def validate_quad_size(cls, v: int) -> int:
        """K must be even and at least 2 so nodes pair up antipodally."""
        if v < 2 or v % 2:
            raise ValueError("Quadrature size must be an even integer >= 2")
        return v

    @field_validator("r_spacing")
    @classmethod
    def validate_spacing(cls, v: str) -> str:
        v = v.lower()
        if v not in SPACINGS:
            raise ValueError(f"Grid spacing must be one of: {', '.join(SPACINGS)}")
        return v

    @field_validator("scheme")
    @classmethod
    def validate_scheme(cls, v: str) -> str:
        v = v.lower()
        if v not in SCHEMES:
            raise ValueError(f"Quadrature scheme must be one of: {', '.join(SCHEMES)}")
        return v

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        v = v.lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"Output format must be one of: {', '.join(OUTPUT_FORMATS)}")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        allowed = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in allowed:
            raise ValueError(f"Log level must be one of: {', '.join(sorted(allowed))}")
        return v.upper()

    @field_validator("tol", "slicer_min_width", "slicer_slope_tol")
    @classmethod
    def validate_positive_tolerance(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("Tolerances must be positive")
        return v

    def validate(self) -> None:
        """Cross-field checks; raises ValidationError listing every problem."""
        errors = []

        if self.r_max <= self.r_min:
            errors.append("r_max must exceed r_min")
        if self.r_count < 2:
            errors.append("r_count must be at least 2")
        if self.workers < 1:
            errors.append("workers must be at least 1")
        if self.slicer_cells < 1:
            errors.append("slicer_cells must be at least 1")
        if self.composition_term_cap < 1:
            errors.append("composition_term_cap must be at least 1")
        if self.probe_count < 1:
            errors.append("probe_count must be at least 1")

        if errors:
            raise ValidationError(f"Configuration validation failed: {'; '.join(errors)}")

        if self.scheme == "monte-carlo" and self.quad_size < 512:
            logger.warning(f"Configuration warning: only {self.quad_size} Monte Carlo nodes")

    def with_r_spec(self, spec: str) -> "RunConfig":
        """Copy with the radius grid replaced by a ``min:max:count[:log]`` spec."""
        r_min, r_max, count, spacing = parse_r_spec(spec)
        return self.model_copy(
            update={"r_min": r_min, "r_max": r_max, "r_count": count, "r_spacing": spacing}
        )

    def r_grid(self) -> np.ndarray:
        """The increasing radius grid."""
        self.validate()
        if self.r_spacing == "log":
            return np.geomspace(self.r_min, self.r_max, self.r_count)
        return np.linspace(self.r_min, self.r_max, self.r_count)

    def resolved_scheme(self, dim: int) -> str:
        if self.scheme != "auto":
            return self.scheme
        if dim == 1:
            return "exact-pair"
        if dim == 2:
            return "uniform-angle"
        return "monte-carlo"

    def make_quadrature_for(self, dim: int) -> "SphereQuadrature":
        """Quadrature for the given dimension, resolving scheme ``auto``."""
        from ..nevanlinna.quadrature import make_quadrature

        return make_quadrature(dim, self.quad_size, self.seed, scheme=self.resolved_scheme(dim))

    def metadata(self) -> Dict[str, Any]:
        """Keys embedded in every output so a run can be reproduced."""
        return {
            "scheme": self.scheme,
            "K": self.quad_size,
            "seed": self.seed,
            "tol": self.tol,
            "quad_error_factor": self.quad_error_factor,
            "ratio_threshold": self.ratio_threshold,
            "slack_epsilon": self.slack_epsilon,
            "version": __version__,
        }

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return self.model_dump()

    def to_file(self, file_path: Union[str, Path]) -> None:
        """Save configuration as JSON (``.json``) or TOML (anything else)."""
        file_path = Path(file_path)
        data = self.to_dict()

        if file_path.suffix.lower() == ".json":
            with open(file_path, "w", encoding="utf-8") as f:
                json.dump(data, f, indent=2)
        else:
            with open(file_path, "w", encoding="utf-8") as f:
                toml.dump(data, f)

    @classmethod
    def from_file(cls, file_path: Union[str, Path], **overrides: Any) -> "RunConfig":
        """Load configuration from a JSON or TOML file."""
        file_path = Path(file_path)

        if not file_path.exists():
            raise ConfigurationError(f"Configuration file not found: {file_path}")

        try:
            if file_path.suffix.lower() == ".json":
                with open(file_path, encoding="utf-8") as f:
                    data = json.load(f)
            else:
                with open(file_path, encoding="utf-8") as f:
                    data = toml.load(f)
            if not isinstance(data, dict):
                raise ConfigurationError("Top level of a configuration file must be a mapping")
            data.update(overrides)
            return cls(**data)
        except ConfigurationError:
            raise
        except Exception as e:
            raise ConfigurationError(f"Failed to load configuration from {file_path}: {e}") from e

    @classmethod
    def from_env(cls) -> "RunConfig":
        """Load configuration from ``TROPNEV_*`` environment variables and ``.env``."""
        return cls()


def load_config(path: Optional[Union[str, Path]] = None, **overrides: Any) -> RunConfig:
    """
    Build a validated RunConfig from an optional file plus keyword overrides.

    Overrides set to None are ignored so CLI flags that were not given fall through to the file
    and the environment.
    """
    overrides = {k: v for k, v in overrides.items() if v is not None}
    try:
        if path is not None:
            config = RunConfig.from_file(path, **overrides)
        else:
            config = RunConfig(**overrides)
    except ConfigurationError:
        raise
    except Exception as e:
        raise ConfigurationError(f"Invalid configuration: {e}") from e
    config.validate()
    logger.debug(f"Loaded configuration: {config.metadata()}")
    return config
