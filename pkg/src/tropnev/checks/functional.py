"""
Checks on single tropical meromorphic functions: evaluation, local structure, the Nevanlinna
functionals and the identities and bounds relating them.
"""

from typing import Any, List, Optional

import numpy as np

from ..core.exceptions import DegenerateGrid
from ..formats.expr import format_number
from ..nevanlinna.growth import growth_estimate, growth_from_series
from ..nevanlinna.quadrature import SphereQuadrature
from ..nevanlinna.table import char_table
from ..nevanlinna.theorems import (
    convexity_violations,
    fmt_gap,
    jensen_residuals,
    ldl_ratio_table,
    lemma_bound_violations,
    poisson_jensen_residual,
    pole_survey,
    sequence_spread,
    subadditivity_violations,
    value_at_zero,
)
from ..plfun.local import classify_point
from ..plfun.polynomial import as_point
from ..plfun.rational import TropicalRational
from ..plfun.slicing import ray_slice
from ..projective.functionals import one_dim_identity_residual, value_identity_residual
from ..utils.logger import get_logger
from .base import Check, CheckRequest, CheckResult, CheckStatus, register_check

logger = get_logger(__name__)

# estimated order at or below this counts as zero order
ZERO_ORDER_MAX = 0.1


def point_label(x: Any) -> str:
    return ";".join(format_number(v) for v in np.atleast_1d(x))


def unit_vector(dim: int, given: Optional[Any] = None) -> np.ndarray:
    """The given direction normalized, else the first coordinate axis."""
    if given is None:
        return np.eye(dim)[0]
    theta = as_point(given, dim)
    return theta / np.linalg.norm(theta)


class FunctionCheck(Check):
    """Shared helpers for checks over a corpus of functions."""

    def limit(self, quad: SphereQuadrature, scale: float = 1.0) -> float:
        """Quadrature error bound plus tol scaled to the magnitude of the compared values."""
        error = quad.error_bound(self.settings.quad_error_factor)
        return error + self.settings.tol * max(1.0, scale)

    def indexed(
        self, functions: List[TropicalRational], rows: List[List[Any]], k: int
    ) -> List[List[Any]]:
        return rows if len(functions) == 1 else [[k, *row] for row in rows]

    def indexed_header(self, functions: List[TropicalRational], header: List[str]) -> List[str]:
        return header if len(functions) == 1 else ["index", *header]


@register_check
class EvalCheck(FunctionCheck):
    name = "eval"
    description = "Evaluate functions at points"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        rows = []
        for k, f in enumerate(functions):
            for x in request.point_list(f.dim):
                rows.append([k, point_label(x), f.evaluate(x)])
        return self.result(CheckStatus.PASSED, ["index", "x", "value"], rows)


@register_check
class ClassifyCheck(FunctionCheck):
    name = "classify"
    description = "Classify points as smooth, root or pole with multiplicity"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        rows = []
        for k, f in enumerate(functions):
            quad = self.quadrature(f.dim)
            for x in request.point_list(f.dim):
                point = classify_point(f, x, quad, self.settings.tol)
                rows.append([k, point_label(x), point.kind.value, point.multiplicity])
        return self.result(CheckStatus.PASSED, ["index", "x", "kind", "multiplicity"], rows)


@register_check
class SliceCheck(FunctionCheck):
    name = "slice"
    description = "Exact breakpoints of a function along a line through the origin"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        R = float(request.require_grid()[-1])
        rows = []
        for k, f in enumerate(functions):
            theta = unit_vector(f.dim, request.theta)
            s = ray_slice(f, theta, R, self.settings.tol)
            for t, jump in s.breakpoints:
                rows.append([k, t, jump, "root" if jump > 0 else "pole"])
        return self.result(
            CheckStatus.PASSED,
            ["index", "t", "jump", "kind"],
            rows,
            radius=R,
            breakpoints=len(rows),
        )


@register_check
class CharfunCheck(FunctionCheck):
    name = "charfun"
    description = "Tabulate m, n, N and T and check convexity of T"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        rows: List[List[Any]] = []
        violations = 0
        for k, f in enumerate(functions):
            quad = self.quadrature(f.dim)
            table = char_table(f, grid, quad, self.settings.tol, self.settings.workers)
            violations += len(convexity_violations(table, self.settings.tol))
            rows.extend(self.indexed(functions, table.rows(), k))
        status = CheckStatus.FAILED if violations else CheckStatus.PASSED
        header = self.indexed_header(functions, ["r", "m", "n", "N", "T"])
        return self.result(status, header, rows, convexity_violations=violations)


@register_check
class JensenCheck(FunctionCheck):
    name = "jensen"
    description = "T(r, f) - T(r, 1/f) - f(0) over the grid"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        rows: List[List[Any]] = []
        worst, failed = 0.0, 0
        for k, f in enumerate(functions):
            quad = self.quadrature(f.dim)
            residuals = jensen_residuals(f, grid, quad, self.settings.tol)
            scale = float(grid[-1]) + abs(value_at_zero(f))
            largest = float(np.max(np.abs(residuals)))
            worst = max(worst, largest)
            if largest > self.limit(quad, scale):
                failed += 1
            rows.extend(self.indexed(functions, [[r, v] for r, v in zip(grid, residuals)], k))
        status = CheckStatus.FAILED if failed else CheckStatus.PASSED
        header = self.indexed_header(functions, ["r", "residual"])
        return self.result(status, header, rows, max_abs_residual=worst, failed_functions=failed)


@register_check
class InequalitiesCheck(FunctionCheck):
    name = "inequalities"
    description = "Scaling, sum and product relations of m, N and T for consecutive pairs"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        pairs = list(zip(functions, functions[1:])) or [(functions[0], functions[0])]
        rows = []
        for k, (f, g) in enumerate(pairs):
            if f.dim != g.dim:
                continue
            quad = self.quadrature(f.dim)
            for v in subadditivity_violations(f, g, grid, quad, request.alpha, self.settings.tol):
                rows.append([k, v.r, v.relation, v.lhs, v.rhs, v.excess])
        status = CheckStatus.FAILED if rows else CheckStatus.PASSED
        return self.result(
            status,
            ["pair", "r", "relation", "lhs", "rhs", "excess"],
            rows,
            pairs=len(pairs),
            violations=len(rows),
        )


def default_value(f: TropicalRational, quad: SphereQuadrature, R: float, tol: float) -> float:
    """L_f - 1 when poles are found, else f(0) - 1."""
    survey = pole_survey(f, quad, R, tol)
    return (survey.L_f if survey.has_poles else value_at_zero(f)) - 1.0


@register_check
class FmtCheck(FunctionCheck):
    name = "fmt"
    description = "T(r, 1/(f (+) a)) - T(r, f) stays bounded for a below L_f"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        rows: List[List[Any]] = []
        failed = 0
        for k, f in enumerate(functions):
            quad = self.quadrature(f.dim)
            if request.values:
                a = request.values[0]
            else:
                a = default_value(f, quad, float(grid[-1]), self.settings.tol)
            gap = fmt_gap(f, a, grid, quad, self.settings.tol)
            if sequence_spread(gap) >= 2.0 * (abs(a) + 1.0) + self.limit(quad):
                failed += 1
            rows.extend(self.indexed(functions, [[a, r, v] for r, v in zip(grid, gap)], k))
        status = CheckStatus.FAILED if failed else CheckStatus.PASSED
        header = self.indexed_header(functions, ["a", "r", "gap"])
        return self.result(status, header, rows, failed_functions=failed)


@register_check
class LdlCheck(FunctionCheck):
    name = "ldl"
    description = "m(r, f(x + c) / f(x)) against its bound and as a fraction of T(r, f)"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        threshold = self.settings.ratio_threshold
        rows: List[List[Any]] = []
        bound_violations, trend_failures = 0, 0
        for k, f in enumerate(functions):
            quad = self.quadrature(f.dim)
            c = request.c if request.c is not None else unit_vector(f.dim)
            if f.dim == 1:
                bound_violations += len(
                    lemma_bound_violations(f, c, grid, quad, request.alpha, self.settings.tol)
                )
            table = ldl_ratio_table(f, grid, quad, c=c, tol=self.settings.tol)
            has_poles = pole_survey(f, quad, float(grid[-1]), self.settings.tol).has_poles
            if has_poles and table.ratios[-1] >= threshold:
                trend_failures += 1
            rows.extend(self.indexed(functions, table.rows(), k))
        failed = bound_violations or trend_failures
        return self.result(
            CheckStatus.FAILED if failed else CheckStatus.PASSED,
            self.indexed_header(functions, ["r", "m", "T", "ratio"]),
            rows,
            bound_violations=bound_violations,
            trend_failures=trend_failures,
            ratio_threshold=threshold,
        )


@register_check
class QldlCheck(FunctionCheck):
    name = "qldl"
    description = "m(r, f(qx) / f(x)) as a fraction of T(r, f) for zero-order f"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        q = request.q if request.q is not None else 2.0
        threshold = self.settings.ratio_threshold
        rows: List[List[Any]] = []
        skipped, failed = 0, 0
        orders = []
        for k, f in enumerate(functions):
            table = ldl_ratio_table(f, grid, self.quadrature(f.dim), q=q, tol=self.settings.tol)
            rows.extend(self.indexed(functions, table.rows(), k))
            try:
                rho = growth_from_series(table.r_grid, table.T_vals).rho
            except DegenerateGrid as e:
                logger.info(f"Zero-order precondition not decidable: {e}")
                rho = None
            orders.append(rho)
            if rho is None or rho > ZERO_ORDER_MAX:
                skipped += 1
            elif table.ratios[-1] >= threshold:
                failed += 1
        header = self.indexed_header(functions, ["r", "m", "T", "ratio"])
        if failed:
            status = CheckStatus.FAILED
            message = f"{failed} zero-order function(s) above the ratio threshold"
        elif skipped == len(functions):
            status, message = CheckStatus.SKIPPED, "No function met the zero-order precondition"
        else:
            status, message = CheckStatus.PASSED, ""
        return self.result(
            status, header, rows, message, q=q, skipped_functions=skipped, orders=orders
        )


@register_check
class GrowthCheck(FunctionCheck):
    name = "growth"
    description = "Order, hyper-order and subnormal-growth estimates"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        rows = []
        for k, f in enumerate(functions):
            quad = self.quadrature(f.dim)
            g = growth_estimate(f, grid, quad, self.settings.tol, self.settings.workers)
            rows.append([k, g.rho, g.rho2, g.subnormal, g.log_t_over_r, g.fit_points])
        return self.result(
            CheckStatus.PASSED,
            ["index", "rho", "rho2", "subnormal", "log_t_over_r", "fit_points"],
            rows,
        )


@register_check
class IdentityCheck(FunctionCheck):
    name = "identity"
    description = "One-variable and value-distribution identities stay bounded"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        rows: List[List[Any]] = []
        skipped, failed = 0, 0
        for k, f in enumerate(functions):
            if f.is_constant():
                skipped += 1
                continue
            quad = self.quadrature(f.dim)
            values = request.values or [default_value(f, quad, float(grid[-1]), self.settings.tol)]
            spread_limit = 2.0 * len(values) * (max(abs(a) for a in values) + 1.0)
            one_dim = one_dim_identity_residual(f, values[0], grid, quad, self.settings.tol)
            valued = value_identity_residual(f, values, grid, quad, self.settings.tol)
            for kind, seq in (("one_dim", one_dim), ("value", valued)):
                if sequence_spread(seq) >= spread_limit + self.limit(quad):
                    failed += 1
                rows.extend([k, kind, r, v] for r, v in zip(grid, seq))
        if failed:
            status = CheckStatus.FAILED
        elif skipped == len(functions):
            status = CheckStatus.SKIPPED
        else:
            status = CheckStatus.PASSED
        message = "Constant functions skipped" if skipped else ""
        header = ["index", "identity", "r", "residual"]
        return self.result(status, header, rows, message, failed_sequences=failed)


@register_check
class PoissonCheck(FunctionCheck):
    name = "poisson"
    description = "f(x) against its Poisson-Jensen representation on (-r, r)"

    def execute(self, request: CheckRequest) -> CheckResult:
        functions = request.require_functions()
        grid = request.require_grid()
        rows: List[List[Any]] = []
        worst, failed = 0.0, 0
        for k, f in enumerate(functions):
            for x in request.point_list(f.dim):
                reach = float(np.linalg.norm(x))
                for r in grid:
                    if r <= reach:
                        continue
                    centre = x if f.dim > 1 else float(x[0])
                    residual = poisson_jensen_residual(f, centre, float(r), self.settings.tol)
                    worst = max(worst, abs(residual))
                    scale = max(1.0, float(r) + abs(value_at_zero(f)))
                    if abs(residual) > self.settings.tol * scale:
                        failed += 1
                    rows.append([k, point_label(x), r, residual])
        status = CheckStatus.FAILED if failed else CheckStatus.PASSED
        return self.result(status, ["index", "x", "r", "residual"], rows, max_abs_residual=worst)
