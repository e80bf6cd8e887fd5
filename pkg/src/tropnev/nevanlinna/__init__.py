"""
Sphere quadrature and the Nevanlinna functionals m, n, N, T with their identities and bounds.
"""

from .functionals import (
    characteristic,
    counting,
    counting_by_integration,
    counting_density,
    counting_profile,
    pair_slices,
    proximity,
    sphere_mean,
)
from .growth import GrowthEstimate, growth_estimate, growth_from_series, growth_from_table
from .quadrature import SphereQuadrature, make_quadrature, omega_n
from .table import CharTable, char_table, check_grid
from .theorems import (
    PoleSurvey,
    RatioTable,
    Violation,
    convexity_violations,
    fmt_gap,
    jensen_residual,
    jensen_residuals,
    ldl_ratio_table,
    lemma_bound_violations,
    lemma_shift_bound,
    log_diff_proximity,
    poisson_jensen_residual,
    pole_survey,
    q_log_diff_proximity,
    sequence_spread,
    subadditivity_violations,
    value_at_zero,
)

__all__ = [
    "SphereQuadrature",
    "make_quadrature",
    "omega_n",
    "CharTable",
    "char_table",
    "check_grid",
    "proximity",
    "sphere_mean",
    "counting",
    "counting_density",
    "counting_profile",
    "counting_by_integration",
    "characteristic",
    "pair_slices",
    "GrowthEstimate",
    "growth_estimate",
    "growth_from_series",
    "growth_from_table",
    "PoleSurvey",
    "RatioTable",
    "Violation",
    "jensen_residual",
    "jensen_residuals",
    "pole_survey",
    "fmt_gap",
    "log_diff_proximity",
    "q_log_diff_proximity",
    "lemma_shift_bound",
    "lemma_bound_violations",
    "ldl_ratio_table",
    "poisson_jensen_residual",
    "subadditivity_violations",
    "convexity_violations",
    "sequence_spread",
    "value_at_zero",
]
