"""
Residuals and inequality checks for the one- and several-variable Nevanlinna statements.

Every function here returns raw numbers (residual sequences or violation rows); deciding what
counts as a pass is left to :mod:`tropnev.checks`.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import AboveLfWarning, ValidationError
from ..plfun.polynomial import as_point
from ..plfun.rational import TropicalRational, as_rational
from ..plfun.slicing import ray_slice
from ..utils.logger import get_logger
from .functionals import characteristic, pair_slices, proximity
from .quadrature import SphereQuadrature
from .table import CharTable, char_table, check_grid

logger = get_logger(__name__)


@dataclass(frozen=True)
class Violation:
    """One grid radius where an inequality fails by more than the tolerance."""

    r: float
    relation: str
    lhs: float
    rhs: float
    excess: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "excess": self.excess,
        }


@dataclass(frozen=True)
class PoleSurvey:
    """Smallest value of f over the poles found on the quadrature rays."""

    L_f: float
    pole_count: int
    argmin: Optional[Tuple[float, ...]] = None

    @property
    def has_poles(self) -> bool:
        return self.pole_count > 0


def value_at_zero(f: Any) -> float:
    f = as_rational(f)
    return f.evaluate(np.zeros(f.dim))


def jensen_residual(f: Any, r: float, quad: SphereQuadrature, tol: float = 1e-9) -> float:
    """T(r, f) - T(r, 1_T / f) - f(0)."""
    f = as_rational(f)
    backward = characteristic(f.reciprocal(), r, quad, tol)
    return characteristic(f, r, quad, tol) - backward - value_at_zero(f)


def jensen_residuals(f: Any, r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9) -> np.ndarray:
    """Jensen residual at every grid radius."""
    f = as_rational(f)
    grid = check_grid(r_grid)
    forward = char_table(f, grid, quad, tol)
    backward = char_table(f.reciprocal(), grid, quad, tol)
    return forward.T_vals - backward.T_vals - value_at_zero(f)


def pole_survey(f: Any, quad: SphereQuadrature, R: float, tol: float = 1e-9) -> PoleSurvey:
    """Estimate L_f = inf f(b) over poles b, using the poles met by the quadrature rays."""
    f = as_rational(f)
    best, count, argmin = math.inf, 0, None
    for theta, s in zip(quad.pair_nodes, pair_slices(f, quad, R, tol)):
        for t, _ in s.poles():
            point = t * np.asarray(theta)
            value = f.evaluate(point)
            count += 1
            if value < best:
                best, argmin = value, tuple(float(v) for v in point)
    return PoleSurvey(L_f=best, pole_count=count, argmin=argmin)


def warn_if_above_lf(
    f: Any, a: float, quad: SphereQuadrature, R: float, tol: float = 1e-9
) -> PoleSurvey:
    """Run a pole survey and warn when a is not below L_f."""
    survey = pole_survey(f, quad, R, tol)
    if survey.has_poles and a >= survey.L_f:
        message = f"Value a={a} is not below L_f={survey.L_f} (pole at {survey.argmin})"
        logger.warning(message)
        warnings.warn(message, AboveLfWarning, stacklevel=2)
    return survey


def fmt_gap(f: Any, a: float, r_grid: Any, quad: SphereQuadrature, tol: float = 1e-9) -> np.ndarray:
    """
    T(r, 1_T / (f (+) a)) - T(r, f) over the grid; bounded when a < L_f.

    Emits AboveLfWarning when the pole survey finds a pole with f(b) <= a.
    """
    f = as_rational(f)
    grid = check_grid(r_grid)
    warn_if_above_lf(f, a, quad, float(grid[-1]), tol)
    shifted = f.add_constant(a).reciprocal()
    return char_table(shifted, grid, quad, tol).T_vals - char_table(f, grid, quad, tol).T_vals


def shift_quotient(f: Any, c: Any) -> TropicalRational:
    """f(x + c) (/) f(x) as a rational."""
    f = as_rational(f)
    return f.shift(c).quotient(f)


def q_quotient(f: Any, q: float) -> TropicalRational:
    """f(q x) (/) f(x) as a rational."""
    f = as_rational(f)
    return f.q_scale(q).quotient(f)


def log_diff_proximity(f: Any, c: Any, r: float, quad: SphereQuadrature) -> float:
    """m(r, f(x + c) (/) f(x))."""
    f = as_rational(f)
    c = as_point(c, f.dim)
    if not np.any(c):
        raise ValidationError("The shift vector must be nonzero")
    return proximity(shift_quotient(f, c), r, quad)


def q_log_diff_proximity(f: Any, q: float, r: float, quad: SphereQuadrature) -> float:
    """m(r, f(q x) (/) f(x))."""
    return proximity(q_quotient(f, q), r, quad)


def lemma_shift_bound(
    f: Any, c: Any, r: float, quad: SphereQuadrature, alpha: float = 2.0, tol: float = 1e-9
) -> float:
    """16|c| / (r + |c|) / (alpha - 1) * T(alpha (r + |c|), f) + |f(0)| / 2."""
    if not alpha > 1:
        raise ValidationError(f"alpha must exceed 1, got {alpha}")
    f = as_rational(f)
    size = float(np.linalg.norm(as_point(c, f.dim)))
    reach = r + size
    T_far = characteristic(f, alpha * reach, quad, tol)
    return 16.0 * size / reach / (alpha - 1.0) * T_far + abs(value_at_zero(f)) / 2.0


def lemma_bound_violations(
    f: Any,
    c: Any,
    r_grid: Any,
    quad: SphereQuadrature,
    alpha: float = 2.0,
    tol: float = 1e-9,
) -> List[Violation]:
    """Grid radii where m(r, f(x + c) (/) f(x)) exceeds the shift bound."""
    f = as_rational(f)
    quotient = shift_quotient(f, c)
    out = []
    for r in check_grid(r_grid):
        lhs = proximity(quotient, float(r), quad)
        rhs = lemma_shift_bound(f, c, float(r), quad, alpha, tol)
        if lhs > rhs + tol * max(1.0, abs(rhs)):
            out.append(Violation(float(r), "m(r, f(x+c)/f(x)) <= bound", lhs, rhs, lhs - rhs))
    return out


@dataclass
class RatioTable:
    """m(r, quotient) / T(r, f) for the shift or the q-difference quotient."""

    variant: str
    r_grid: np.ndarray
    m_vals: np.ndarray
    T_vals: np.ndarray
    ratios: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        with np.errstate(divide="ignore", invalid="ignore"):
            unbounded = np.where(self.m_vals > 0, np.inf, 0.0)
            ratios = np.where(self.T_vals > 0, self.m_vals / self.T_vals, unbounded)
        self.ratios = ratios

    @property
    def header(self) -> List[str]:
        return ["r", "m", "T", "ratio"]

    def rows(self) -> List[List[float]]:
        return [
            [float(r), float(m), float(T), float(q)]
            for r, m, T, q in zip(self.r_grid, self.m_vals, self.T_vals, self.ratios)
        ]


def ldl_ratio_table(
    f: Any,
    r_grid: Any,
    quad: SphereQuadrature,
    c: Optional[Any] = None,
    q: Optional[float] = None,
    tol: float = 1e-9,
) -> RatioTable:
    """
    Ratio of the logarithmic-difference proximity to T(r, f) over the grid.

    Exactly one of ``c`` (shift) or ``q`` (q-difference) must be given.
    """
    if (c is None) == (q is None):
        raise ValidationError("Give exactly one of a shift c or a scale q")
    f = as_rational(f)
    grid = check_grid(r_grid)
    quotient = shift_quotient(f, c) if c is not None else q_quotient(f, q)
    m_vals = np.array([proximity(quotient, float(r), quad) for r in grid])
    T_vals = char_table(f, grid, quad, tol).T_vals
    return RatioTable("shift" if c is not None else "q", grid, m_vals, T_vals)


def poisson_jensen_residual(f: Any, x: Any, r: float, tol: float = 1e-9) -> float:
    """
    f(x) minus its Poisson-Jensen representation on (-r, r).

    In one variable x is a real number. In several variables the representation is applied to
    the slice through the origin and x, at position |x|.
    """
    f = as_rational(f)
    if f.dim == 1:
        theta, position = np.array([1.0]), float(as_point(x, 1)[0])
    else:
        point = as_point(x, f.dim)
        norm = float(np.linalg.norm(point))
        theta = point / norm if norm > 0 else np.eye(f.dim)[0]
        position = norm
    if not abs(position) < r:
        raise ValidationError(f"Point must lie strictly inside radius {r}")

    s = ray_slice(f, theta, r, tol)
    right, left = f.evaluate(r * theta), f.evaluate(-r * theta)
    x0 = position

    def kernel(a: float) -> float:
        return r * r - abs(a - x0) * r - a * x0

    represented = 0.5 * (right + left) + x0 / (2.0 * r) * (right - left)
    represented -= math.fsum(m * kernel(a) for a, m in s.roots()) / (2.0 * r)
    represented += math.fsum(m * kernel(b) for b, m in s.poles()) / (2.0 * r)
    return f.evaluate(x0 * theta) - represented


def _exceeds(lhs: float, rhs: float, tol: float) -> bool:
    return lhs > rhs + tol * max(1.0, abs(lhs), abs(rhs))


def subadditivity_violations(
    f: Any,
    g: Any,
    r_grid: Any,
    quad: SphereQuadrature,
    alpha: float = 2.0,
    tol: float = 1e-9,
) -> List[Violation]:
    """
    Scaling, sum and product relations between m, N and T of f, g, alpha f, f (+) g, f (*) g.

    Checked on the same quadrature on both sides.
    """
    if not alpha > 0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    f, g = as_rational(f), as_rational(g)
    grid = check_grid(r_grid)
    tf = char_table(f, grid, quad, tol)
    tg = char_table(g, grid, quad, tol)
    ta = char_table(f.power(alpha), grid, quad, tol)
    tsum = char_table(f.t_add(g), grid, quad, tol)
    tprod = char_table(f.t_mul(g), grid, quad, tol)

    checks: List[Tuple[str, np.ndarray, np.ndarray, bool]] = [
        ("m(alpha f) = alpha m(f)", ta.m_vals, alpha * tf.m_vals, True),
        ("N(alpha f) = alpha N(f)", ta.N_vals, alpha * tf.N_vals, True),
        ("T(alpha f) = alpha T(f)", ta.T_vals, alpha * tf.T_vals, True),
        ("m(f+g) <= m(f) + m(g)", tsum.m_vals, tf.m_vals + tg.m_vals, False),
        ("m(f*g) <= m(f) + m(g)", tprod.m_vals, tf.m_vals + tg.m_vals, False),
        ("N(f*g) <= N(f) + N(g)", tprod.N_vals, tf.N_vals + tg.N_vals, False),
        ("T(f*g) <= T(f) + T(g)", tprod.T_vals, tf.T_vals + tg.T_vals, False),
        ("T(f+g) <= T(f) + T(g)", tsum.T_vals, tf.T_vals + tg.T_vals, False),
    ]
    out = []
    for relation, lhs, rhs, equality in checks:
        for r, left, right in zip(grid, lhs, rhs):
            left, right = float(left), float(right)
            bad = _exceeds(left, right, tol) or (equality and _exceeds(right, left, tol))
            if bad:
                out.append(Violation(float(r), relation, left, right, abs(left - right)))
    if out:
        logger.debug(f"{len(out)} subadditivity violation(s)")
    return out


def convexity_violations(table: CharTable, tol: float = 1e-9) -> List[Violation]:
    """Grid radii where the second divided difference of T is below -tol."""
    r = np.asarray(table.r_grid, dtype=float)
    T = np.asarray(table.T_vals, dtype=float)
    out = []
    for i in range(1, r.size - 1):
        left = (T[i] - T[i - 1]) / (r[i] - r[i - 1])
        right = (T[i + 1] - T[i]) / (r[i + 1] - r[i])
        scale = max(1.0, abs(left), abs(right))
        if right - left < -tol * scale:
            out.append(Violation(float(r[i]), "T convex in r", right, left, left - right))
    return out


def sequence_spread(values: Sequence[float]) -> float:
    """max - min of a residual sequence."""
    values = np.asarray(values, dtype=float)
    return float(values.max() - values.min()) if values.size else 0.0
