"""Max-plus semiring arithmetic and tropical matrix algebra."""

from .matrix import (
    TropicalMatrix,
    has_finite_assignment,
    is_regular,
    optimal_permutation,
    search_gm_certificate,
    trop_det,
    trop_det_enumerate,
    verify_gm_dependence,
)
from .semiring import (
    BOTTOM,
    ONE,
    TropicalNumber,
    as_tropical,
    format_tropical,
    is_bottom,
    t_add,
    t_close,
    t_div,
    t_mul,
    t_pow,
    t_prod,
    t_sum,
)

__all__ = [
    "BOTTOM",
    "ONE",
    "TropicalNumber",
    "TropicalMatrix",
    "as_tropical",
    "format_tropical",
    "is_bottom",
    "t_add",
    "t_mul",
    "t_div",
    "t_pow",
    "t_sum",
    "t_prod",
    "t_close",
    "trop_det",
    "trop_det_enumerate",
    "optimal_permutation",
    "has_finite_assignment",
    "is_regular",
    "verify_gm_dependence",
    "search_gm_certificate",
]
