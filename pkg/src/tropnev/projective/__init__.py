"""
Tropical projective maps, hypersurfaces and their value-distribution functionals.
"""

from .functionals import (
    HyperFmtTable,
    cartan_characteristic,
    cartan_table,
    cartan_vs_characteristic,
    complete_poly_gap,
    composition_root_counting,
    defect,
    hyper_fmt_residual,
    hyper_fmt_table,
    hyper_proximity,
    nondegeneracy_witness,
    one_dim_identity_residual,
    require_nondegenerate,
    residual_summary,
    value_defect,
    value_identity_residual,
    weil_function,
    weil_many,
)
from .hypersurface import (
    HomogeneousPolynomial,
    compose,
    evaluate_composition_many,
    hypersurface_from_values,
    lcm_degree,
    map_monomial,
    map_monomials,
    multi_indices,
)
from .space import ProjectiveMap, ProjectivePoint, sample_points

__all__ = [
    "ProjectivePoint",
    "ProjectiveMap",
    "HomogeneousPolynomial",
    "HyperFmtTable",
    "multi_indices",
    "compose",
    "evaluate_composition_many",
    "hypersurface_from_values",
    "lcm_degree",
    "map_monomial",
    "map_monomials",
    "sample_points",
    "cartan_characteristic",
    "cartan_table",
    "cartan_vs_characteristic",
    "weil_function",
    "weil_many",
    "hyper_proximity",
    "nondegeneracy_witness",
    "require_nondegenerate",
    "hyper_fmt_table",
    "hyper_fmt_residual",
    "composition_root_counting",
    "complete_poly_gap",
    "defect",
    "value_defect",
    "value_identity_residual",
    "one_dim_identity_residual",
    "residual_summary",
]
