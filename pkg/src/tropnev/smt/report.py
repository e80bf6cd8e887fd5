"""
Second main theorem reports for maps into projective space and a family of hypersurfaces.

Each report tabulates, per grid radius, the lower bound (q - M - 1 - lambda) T_f, the middle bound
with the Casorati counting term, and the tail sum of the counting functions. Finite grids cannot
certify little-o terms or exceptional sets, so failing radii are listed rather than filtered.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import RunConfig
from ..core.exceptions import DegenerateGrid, TooFewHypersurfaces, ValidationError
from ..nevanlinna.growth import GrowthEstimate, growth_from_series
from ..nevanlinna.quadrature import SphereQuadrature
from ..nevanlinna.table import check_grid
from ..nevanlinna.theorems import Violation
from ..projective.functionals import HyperFmtTable, cartan_table, defect, hyper_fmt_table
from ..projective.hypersurface import HomogeneousPolynomial, lcm_degree
from ..projective.space import ProjectiveMap
from ..utils.logger import get_logger
from .casorati import ShiftFamily, casorati_roots_counting
from .combination import CombinationBasis, ddg_interval

logger = get_logger(__name__)


@dataclass
class SmtRow:
    """One grid radius of a second main theorem report."""

    r: float
    T_f: float
    N: Tuple[float, ...]
    casorati_N: float
    lhs: float
    lhs_max: float
    middle: float
    rhs: float
    slack: float
    slack_max: float
    middle_slack: float
    chain_gap: float


@dataclass
class SmtReport:
    """Per-radius rows and the summary of one second main theorem check."""

    variant: str
    step: Any
    q: int
    m: int
    M: int
    d: int
    degrees: Tuple[int, ...]
    lambda_interval: Tuple[int, int]
    lambda_exact: bool
    vacuous: bool
    vacuous_max: bool
    rows: List[SmtRow]
    violations: List[Violation]
    inconclusive: List[Violation]
    chain_ok: bool
    chain_bound_ok: bool
    chain_ratio: float
    growth: Optional[GrowthEstimate]
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and self.chain_ok

    @property
    def header(self) -> List[str]:
        counts = [f"N_{j + 1}" for j in range(self.q)]
        return [
            "r",
            "T_f",
            *counts,
            "casorati_N",
            "lhs",
            "lhs_max",
            "middle",
            "rhs",
            "slack",
            "slack_max",
            "chain_gap",
        ]

    def table_rows(self) -> List[List[float]]:
        return [
            [
                row.r,
                row.T_f,
                *row.N,
                row.casorati_N,
                row.lhs,
                row.lhs_max,
                row.middle,
                row.rhs,
                row.slack,
                row.slack_max,
                row.chain_gap,
            ]
            for row in self.rows
        ]

    def summary(self) -> Dict[str, Any]:
        return {
            "variant": self.variant,
            "step": self.step,
            "q": self.q,
            "m": self.m,
            "M": self.M,
            "d": self.d,
            "degrees": list(self.degrees),
            "lambda_interval": list(self.lambda_interval),
            "lambda_exact": self.lambda_exact,
            "vacuous": self.vacuous,
            "vacuous_max": self.vacuous_max,
            "inconclusive": len(self.inconclusive),
            "chain_ok": self.chain_ok,
            "chain_bound_ok": self.chain_bound_ok,
            "chain_ratio": self.chain_ratio,
            "growth": self.growth.to_dict() if self.growth is not None else None,
            "passed": self.passed,
        }

    def to_dict(self) -> Dict[str, Any]:
        rows = []
        for row in self.rows:
            rows.append(
                {
                    "r": row.r,
                    "T_f": row.T_f,
                    "N": list(row.N),
                    "casorati_N": row.casorati_N,
                    "lhs": row.lhs,
                    "lhs_max": row.lhs_max,
                    "middle": row.middle,
                    "rhs": row.rhs,
                    "slack": row.slack,
                    "slack_max": row.slack_max,
                    "middle_slack": row.middle_slack,
                    "chain_gap": row.chain_gap,
                    "lambda_interval": list(self.lambda_interval),
                }
            )
        return {
            **self.summary(),
            "rows": rows,
            "violations": [v.to_dict() for v in self.violations],
            "inconclusive": [v.to_dict() for v in self.inconclusive],
            "metadata": dict(self.metadata),
        }


@dataclass
class DefectReport:
    """Per-hypersurface defect estimates against the defect relation bounds."""

    M: int
    degrees: Tuple[int, ...]
    defects: Tuple[float, ...]
    lambda_interval: Tuple[int, int]
    threshold: float
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def total(self) -> float:
        return float(sum(self.defects))

    @property
    def tail(self) -> float:
        return float(sum(self.defects[self.M + 1 :]))

    @property
    def total_bound(self) -> int:
        return self.M + 1 + self.lambda_interval[1]

    @property
    def tail_bound(self) -> int:
        return self.lambda_interval[1]

    @property
    def passed(self) -> bool:
        total_ok = self.total <= self.total_bound + self.threshold
        return total_ok and self.tail <= self.tail_bound + self.threshold

    @property
    def header(self) -> List[str]:
        return ["j", "degree", "defect"]

    def table_rows(self) -> List[List[float]]:
        return [[j + 1, d, delta] for j, (d, delta) in enumerate(zip(self.degrees, self.defects))]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "M": self.M,
            "degrees": list(self.degrees),
            "defects": list(self.defects),
            "total": self.total,
            "total_bound": self.total_bound,
            "tail": self.tail,
            "tail_bound": self.tail_bound,
            "lambda_interval": list(self.lambda_interval),
            "passed": self.passed,
            "note": "Defects are minima over the top decade of a finite grid, not limits",
            "metadata": dict(self.metadata),
        }


def _check_family(F: ProjectiveMap, P_list: Sequence[HomogeneousPolynomial]) -> None:
    if len(P_list) < F.m:
        raise TooFewHypersurfaces(f"Need at least m = {F.m} hypersurfaces, got {len(P_list)}")
    if not P_list:
        raise ValidationError("At least one hypersurface is required")


def _order(F: ProjectiveMap, P_list: Sequence[HomogeneousPolynomial]) -> Tuple[int, int]:
    d = lcm_degree(P_list)
    return d, math.comb(F.m + d, d) - 1


def _lambda(
    F: ProjectiveMap, P_list: Sequence[HomogeneousPolynomial], M: int, settings: RunConfig
) -> Tuple[Tuple[int, int], bool]:
    cap = settings.composition_term_cap
    tail = [CombinationBasis.from_composition(P, F, cap) for P in P_list[M + 1 :]]
    low, high = ddg_interval(
        tail,
        probe_count=settings.probe_count,
        seed=settings.seed,
        tol=settings.tol,
        exact_dim_limit=settings.exact_dim_limit,
    )
    return (low, high), low == high


def _growth(grid: np.ndarray, T: np.ndarray) -> Optional[GrowthEstimate]:
    try:
        return growth_from_series(grid, T)
    except DegenerateGrid as e:
        logger.info(f"Growth header omitted: {e}")
        return None


def _slack_violation(r: float, relation: str, lhs: float, rhs: float) -> Violation:
    return Violation(float(r), relation, float(lhs), float(rhs), float(lhs - rhs))


def _counting_bound_holds(
    table: HyperFmtTable, P: HomogeneousPolynomial, error: float, tol: float
) -> bool:
    """
    N_j - d_j T_f stays below a radius-independent constant.

    The constant is the residual at the first radius plus the coefficient spread of P, the
    envelope of the first main theorem residual for a nondegenerate map.
    """
    gap = table.Nf - table.dTf
    scale = float(np.max(np.abs(table.dTf))) if table.dTf.size else 1.0
    bound = float(table.residual[0]) + P.coeff_spread + 10.0 * error + tol * max(1.0, scale)
    return bool(np.all(gap <= bound))


def _run_smt(
    variant: str,
    F: ProjectiveMap,
    P_list: Sequence[HomogeneousPolynomial],
    c: Optional[Any],
    scale: Optional[float],
    r_grid: Any,
    quad: SphereQuadrature,
    settings: Optional[RunConfig],
) -> SmtReport:
    settings = settings or RunConfig()
    _check_family(F, P_list)
    family = ShiftFamily.from_hypersurfaces(
        F, P_list, c=c, q=scale, term_cap=settings.composition_term_cap
    )
    grid = check_grid(r_grid)
    d, M = _order(F, P_list)
    q = len(P_list)
    logger.info(f"{variant} check: q={q}, m={F.m}, d={d}, M={M}")

    tables = [
        hyper_fmt_table(
            P,
            F,
            grid,
            quad,
            settings.tol,
            settings.composition_term_cap,
            settings.probe_count,
            settings.seed,
        )
        for P in P_list
    ]
    T_f = cartan_table(F, grid, quad)
    N = np.array([table.Nf for table in tables])
    degrees = np.array([P.d for P in P_list], dtype=float)
    casorati_N = casorati_roots_counting(
        family,
        grid,
        quad,
        tol=settings.slicer_slope_tol,
        min_width=settings.slicer_min_width,
        cells=settings.slicer_cells,
        max_evals=settings.slicer_max_evals,
    )

    (lam_min, lam_max), lam_exact = _lambda(F, P_list, M, settings)
    coef = q - M - 1
    # lhs is decreasing in lambda, so lambda_min gives the strongest bound
    lhs = (coef - lam_min) * T_f
    lhs_max = (coef - lam_max) * T_f
    weighted = N / degrees[:, None]
    middle = weighted.sum(axis=0) - casorati_N / d
    rhs = weighted[M + 1 :].sum(axis=0)
    slack = rhs - lhs
    slack_max = rhs - lhs_max
    chain_gap = rhs - coef * T_f

    enforced = grid >= settings.slack_r_min
    failed_min = enforced & (slack < -settings.slack_epsilon)
    failed_max = enforced & (slack_max < -settings.slack_epsilon)
    # Failing at lambda_max fails for every lambda in the interval
    violations = [
        _slack_violation(grid[k], f"{variant} lower bound", lhs_max[k], rhs[k])
        for k in np.flatnonzero(failed_max)
    ]
    inconclusive = [
        _slack_violation(grid[k], f"{variant} lower bound at lambda_min", lhs[k], rhs[k])
        for k in np.flatnonzero(failed_min & ~failed_max)
    ]

    error = quad.error_bound(settings.quad_error_factor)
    chain_bound_ok = all(
        _counting_bound_holds(table, P, error, settings.tol)
        for table, P in zip(tables[M + 1 :], P_list[M + 1 :])
    )
    chain_ratio = float(chain_gap[-1] / T_f[-1]) if T_f[-1] > settings.tol else 0.0
    chain_ok = chain_bound_ok and chain_ratio <= settings.ratio_threshold

    rows = [
        SmtRow(
            r=float(grid[k]),
            T_f=float(T_f[k]),
            N=tuple(float(v) for v in N[:, k]),
            casorati_N=float(casorati_N[k]),
            lhs=float(lhs[k]),
            lhs_max=float(lhs_max[k]),
            middle=float(middle[k]),
            rhs=float(rhs[k]),
            slack=float(slack[k]),
            slack_max=float(slack_max[k]),
            middle_slack=float(middle[k] - lhs[k]),
            chain_gap=float(chain_gap[k]),
        )
        for k in range(grid.size)
    ]
    if violations:
        logger.warning(f"{variant} check: {len(violations)} radius(es) below the slack threshold")
    if inconclusive:
        logger.warning(
            f"{variant} check: {len(inconclusive)} radius(es) fail only at lambda_min "
            f"of [{lam_min}, {lam_max}]"
        )
    step = [float(v) for v in family.shift_vector] if c is not None else scale
    return SmtReport(
        variant=variant,
        step=step,
        q=q,
        m=F.m,
        M=M,
        d=d,
        degrees=tuple(P.d for P in P_list),
        lambda_interval=(lam_min, lam_max),
        lambda_exact=lam_exact,
        vacuous=coef - lam_min <= 0,
        vacuous_max=coef - lam_max <= 0,
        rows=rows,
        violations=violations,
        inconclusive=inconclusive,
        chain_ok=chain_ok,
        chain_bound_ok=chain_bound_ok,
        chain_ratio=chain_ratio,
        growth=_growth(grid, T_f),
        metadata=settings.metadata(),
    )


def smt_check(
    F: ProjectiveMap,
    P_list: Sequence[HomogeneousPolynomial],
    c: Any,
    r_grid: Any,
    quad: SphereQuadrature,
    settings: Optional[RunConfig] = None,
) -> SmtReport:
    """
    Second main theorem report with the shift Casorati determinant.

    Raises:
        TooFewHypersurfaces: If fewer than m hypersurfaces are given.
        DegenerateMap: If the map fails the nondegeneracy probe for some hypersurface.
    """
    return _run_smt("smt", F, P_list, c, None, r_grid, quad, settings)


def q_smt_check(
    F: ProjectiveMap,
    P_list: Sequence[HomogeneousPolynomial],
    scale: float,
    r_grid: Any,
    quad: SphereQuadrature,
    settings: Optional[RunConfig] = None,
) -> SmtReport:
    """
    Second main theorem report with the q-Casorati determinant.

    The growth header carries the order estimate for the zero-order precondition.

    Raises:
        BadScale: If the scale factor is 0 or 1.
        TooFewHypersurfaces: If fewer than m hypersurfaces are given.
        DegenerateMap: If the map fails the nondegeneracy probe for some hypersurface.
    """
    return _run_smt("qsmt", F, P_list, None, scale, r_grid, quad, settings)


def defect_relation_check(
    F: ProjectiveMap,
    P_list: Sequence[HomogeneousPolynomial],
    r_grid: Any,
    quad: SphereQuadrature,
    settings: Optional[RunConfig] = None,
) -> DefectReport:
    """
    Defect estimates of every hypersurface against M + 1 + lambda and, for the tail, lambda.

    Raises:
        TooFewHypersurfaces: If fewer than m hypersurfaces are given.
        DegenerateMap: If the map fails the nondegeneracy probe for some hypersurface.
        BoundedCharacteristic: If T_f does not grow over the grid.
    """
    settings = settings or RunConfig()
    _check_family(F, P_list)
    grid = check_grid(r_grid)
    _, M = _order(F, P_list)
    defects = tuple(
        defect(P, F, grid, quad, settings.tol, settings.probe_count, settings.seed) for P in P_list
    )
    interval, _ = _lambda(F, P_list, M, settings)
    report = DefectReport(
        M=M,
        degrees=tuple(P.d for P in P_list),
        defects=defects,
        lambda_interval=interval,
        threshold=settings.ratio_threshold,
        metadata=settings.metadata(),
    )
    logger.info(
        f"Defect relation: total {report.total:.6g} <= {report.total_bound}, "
        f"tail {report.tail:.6g}"
    )
    return report
