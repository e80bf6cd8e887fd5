"""
tropnev - higher-dimensional tropical Nevanlinna theory, computed.

Max-plus piecewise-linear functions on R^n with their roots and poles, the proximity, counting
and characteristic functionals, tropical projective maps and hypersurfaces, and a verification
harness that checks the identities and inequalities of the theory on concrete functions.

Example Usage:
    >>> from tropnev import RunConfig, parse_expr, char_table
    >>>
    >>> f = parse_expr("0:1|0:0/0:1|1:0")        # (x (+) 0) (/) (x (+) 1)
    >>> config = RunConfig(r_min=1, r_max=100, r_count=100)
    >>> table = char_table(f, config.r_grid(), config.make_quadrature_for(f.dim))
    >>> round(float(table.T_vals[-1]), 6)
    49.5
"""

# Version information
try:
    from ._version import __version__, __version_tuple__
except ImportError:
    __version__ = "0.1.0"
    __version_tuple__ = (0, 1, 0)

# Verification harness
from .checks import Check, CheckRequest, CheckResult, CheckStatus, registry

# Core functionality
from .core.config import RunConfig, load_config
from .core.exceptions import (
    AboveLfWarning,
    ConfigurationError,
    DegenerateMap,
    ParseError,
    TropNevException,
    ValidationError,
)

# Text and JSON formats
from .formats import format_expr, parse_expr, parse_hypersurface, parse_map

# Max-plus arithmetic
from .maxplus import BOTTOM, TropicalMatrix, trop_det

# Nevanlinna functionals
from .nevanlinna import (
    characteristic,
    char_table,
    counting,
    growth_estimate,
    make_quadrature,
    proximity,
)

# Piecewise-linear functions
from .plfun import TropicalPolynomial, TropicalRational, classify_point, ray_slice

# Projective maps and hypersurfaces
from .projective import HomogeneousPolynomial, ProjectiveMap, cartan_characteristic

# Second main theorem harness
from .smt import ShiftFamily, casorati_eval, q_smt_check, smt_check
from .utils.logger import get_logger

__author__ = "tropnev developers"
__license__ = "MIT"
__description__ = "Tropical Nevanlinna functionals and numerical theorem checks on R^n"


def get_info() -> dict:
    """
    Get package information.

    Returns:
        Dictionary with package metadata
    """
    return {
        "name": "tropnev",
        "version": __version__,
        "description": __description__,
        "author": __author__,
        "license": __license__,
        "checks": registry.list_checks(),
    }


__all__ = [
    "__version__",
    "__version_tuple__",
    "__author__",
    "__license__",
    "__description__",
    "get_info",
    "RunConfig",
    "load_config",
    "TropNevException",
    "ConfigurationError",
    "ValidationError",
    "ParseError",
    "DegenerateMap",
    "AboveLfWarning",
    "BOTTOM",
    "TropicalMatrix",
    "trop_det",
    "TropicalPolynomial",
    "TropicalRational",
    "classify_point",
    "ray_slice",
    "make_quadrature",
    "proximity",
    "counting",
    "characteristic",
    "char_table",
    "growth_estimate",
    "ProjectiveMap",
    "HomogeneousPolynomial",
    "cartan_characteristic",
    "ShiftFamily",
    "casorati_eval",
    "smt_check",
    "q_smt_check",
    "parse_expr",
    "parse_map",
    "parse_hypersurface",
    "format_expr",
    "Check",
    "CheckRequest",
    "CheckResult",
    "CheckStatus",
    "registry",
]

logger = get_logger(__name__)
logger.debug(f"tropnev v{__version__} initialized")
