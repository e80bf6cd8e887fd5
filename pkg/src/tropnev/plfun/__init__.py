"""
Piecewise linear functions on R^n: tropical polynomials, rationals, ray slices and local analysis.
"""

from .local import PointClass, PointKind, classify_point, dir_deriv_plus, jump_J, probe_directions
from .polynomial import Monomial, TropicalPolynomial, as_point, as_points
from .rational import TropicalRational, as_rational, eval_poly, eval_rational, q_scale, shift
from .slicing import RaySlice, blackbox_slice, poles_and_roots_1d, ray_slice

__all__ = [
    "Monomial",
    "TropicalPolynomial",
    "TropicalRational",
    "RaySlice",
    "PointClass",
    "PointKind",
    "as_point",
    "as_points",
    "as_rational",
    "eval_poly",
    "eval_rational",
    "shift",
    "q_scale",
    "ray_slice",
    "blackbox_slice",
    "poles_and_roots_1d",
    "dir_deriv_plus",
    "jump_J",
    "classify_point",
    "probe_directions",
]
