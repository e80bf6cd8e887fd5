"""
Checks on projective maps, hypersurfaces, tropical matrices and Casorati determinants.
"""

from typing import Any, List

import numpy as np

from ..core.exceptions import ValidationError
from ..maxplus.matrix import (
    has_finite_assignment,
    is_regular,
    optimal_permutation,
    trop_det_enumerate,
)
from ..maxplus.semiring import t_close
from ..nevanlinna.table import char_table
from ..nevanlinna.theorems import pole_survey, sequence_spread
from ..plfun.rational import TropicalRational
from ..projective.functionals import (
    cartan_table,
    cartan_vs_characteristic,
    hyper_fmt_table,
    value_defect,
)
from ..smt.casorati import ShiftFamily, casorati_eval, casorati_roots_counting
from ..smt.report import defect_relation_check, q_smt_check, smt_check
from ..utils.logger import get_logger
from .base import Check, CheckRequest, CheckResult, CheckStatus, register_check
from .functional import point_label, unit_vector

logger = get_logger(__name__)

ENUMERATION_MAX_ORDER = 8


@register_check
class CartanCheck(Check):
    name = "cartan"
    description = "Cartan characteristic of a map, compared with T(r, f) for f = f_1 / f_0"

    def execute(self, request: CheckRequest) -> CheckResult:
        F = request.require_map()
        grid = request.require_grid()
        quad = self.quadrature(F.dim)
        T_f = cartan_table(F, grid, quad)
        reduced = F.verify_reduced(quad, float(grid[-1]), self.settings.tol)
        if F.m != 1:
            rows = [[r, t] for r, t in zip(grid, T_f)]
            return self.result(CheckStatus.PASSED, ["r", "T_f"], rows, reduced=reduced)

        # [f_0 : f_1] against f = f_1 / f_0; a common root factor makes the difference grow
        if request.projective_map is None:
            f = request.functions[0]
        else:
            f = TropicalRational(F.components[1], F.components[0])
        T = char_table(f, grid, quad, self.settings.tol).T_vals
        diff = cartan_vs_characteristic(f, grid, quad, self.settings.tol)
        spread = sequence_spread(diff)
        error = quad.error_bound(self.settings.quad_error_factor)
        scale = float(np.max(np.abs(T_f))) if T_f.size else 1.0
        bound = 10.0 * error + self.settings.tol * max(1.0, scale)
        status = CheckStatus.PASSED if spread <= bound else CheckStatus.FAILED
        rows = [[r, a, b, c] for r, a, b, c in zip(grid, T_f, T, diff)]
        message = "" if reduced else "The map has common roots; T_f - T(r, f) is not bounded"
        return self.result(
            status,
            ["r", "T_f", "T", "difference"],
            rows,
            message,
            reduced=reduced,
            difference_spread=spread,
            difference_bound=bound,
        )


@register_check
class HyperfmtCheck(Check):
    name = "hyperfmt"
    description = "m_f(r, V_P) + N(r, 1/(P o f)) - d T_f(r) stays within the coefficient spread"

    def execute(self, request: CheckRequest) -> CheckResult:
        F = request.require_map()
        grid = request.require_grid()
        quad = self.quadrature(F.dim)
        error = quad.error_bound(self.settings.quad_error_factor)
        rows: List[List[Any]] = []
        spreads = []
        failed = 0
        for j, P in enumerate(request.require_hypersurfaces(), start=1):
            table = hyper_fmt_table(
                P,
                F,
                grid,
                quad,
                self.settings.tol,
                self.settings.composition_term_cap,
                self.settings.probe_count,
                self.settings.seed,
            )
            spread = sequence_spread(table.residual)
            spreads.append(spread)
            scale = float(np.max(np.abs(table.dTf))) if table.dTf.size else 1.0
            if spread > P.coeff_spread + 10.0 * error + self.settings.tol * max(1.0, scale):
                failed += 1
            rows.extend([j, *row] for row in table.rows())
        status = CheckStatus.FAILED if failed else CheckStatus.PASSED
        return self.result(status, ["j", "r", "mf", "Nf", "dTf", "residual"], rows, spreads=spreads)


@register_check
class DefectCheck(Check):
    name = "defect"
    description = "Defect estimates of hypersurfaces or of values against the defect relation"

    def execute(self, request: CheckRequest) -> CheckResult:
        grid = request.require_grid()
        if request.projective_map is not None or request.hypersurfaces:
            F = request.require_map()
            report = defect_relation_check(
                F, request.require_hypersurfaces(), grid, self.quadrature(F.dim), self.settings
            )
            summary = report.to_dict()
            summary.pop("metadata")
            status = CheckStatus.PASSED if report.passed else CheckStatus.FAILED
            return self.result(status, report.header, report.table_rows(), **summary)

        functions = request.require_functions()
        if not request.values:
            raise ValidationError("Value defects need at least one value (-a/--value)")
        threshold = self.settings.ratio_threshold
        rows = []
        failed = 0
        for k, f in enumerate(functions):
            quad = self.quadrature(f.dim)
            survey = pole_survey(f, quad, float(grid[-1]), self.settings.tol)
            for a in request.values:
                delta = value_defect(f, a, grid, quad, self.settings.tol)
                below = not survey.has_poles or a < survey.L_f
                if below and delta > threshold:
                    failed += 1
                rows.append([k, a, delta, below])
        status = CheckStatus.FAILED if failed else CheckStatus.PASSED
        header = ["index", "a", "defect", "below_L_f"]
        return self.result(status, header, rows, ratio_threshold=threshold)


@register_check
class CasoratiCheck(Check):
    name = "casorati"
    description = "Casorati determinant values and its root counting function"

    def execute(self, request: CheckRequest) -> CheckResult:
        F = request.require_map()
        grid = request.require_grid()
        quad = self.quadrature(F.dim)
        c = None
        if request.q is None:
            c = request.c if request.c is not None else unit_vector(F.dim)
        if request.hypersurfaces or request.values:
            family = ShiftFamily.from_hypersurfaces(
                F,
                request.require_hypersurfaces(),
                c=c,
                q=request.q,
                term_cap=self.settings.composition_term_cap,
            )
        else:
            family = ShiftFamily.from_map(F, c=c, q=request.q)
        counting = casorati_roots_counting(
            family,
            grid,
            quad,
            tol=self.settings.slicer_slope_tol,
            min_width=self.settings.slicer_min_width,
            cells=self.settings.slicer_cells,
            max_evals=self.settings.slicer_max_evals,
        )
        values = {point_label(x): casorati_eval(family, x) for x in request.point_list(F.dim)}
        return self.result(
            CheckStatus.PASSED,
            ["r", "casorati_N"],
            [[r, n] for r, n in zip(grid, counting)],
            order=family.order,
            values=values,
        )


@register_check
class DetCheck(Check):
    name = "det"
    description = "Tropical determinant by linear assignment, with the enumeration oracle"

    def execute(self, request: CheckRequest) -> CheckResult:
        if request.matrix is None:
            raise ValidationError("The det check needs a matrix (-A/--matrix)")
        A = request.matrix
        value, perm = optimal_permutation(A)
        summary = {
            "permutation": list(perm),
            "regular": is_regular(A),
            "finite_assignment": has_finite_assignment(A),
        }
        status = CheckStatus.PASSED
        if A.rows <= ENUMERATION_MAX_ORDER:
            oracle = trop_det_enumerate(A, max_order=ENUMERATION_MAX_ORDER)
            summary["enumerated"] = oracle
            if not t_close(value, oracle, self.settings.tol):
                status = CheckStatus.FAILED
        return self.result(status, ["det"], [[value]], **summary)


class SmtBaseCheck(Check):
    """Shared table layout of the second main theorem checks."""

    def report_result(self, report: Any) -> CheckResult:
        summary = report.summary()
        summary["violations"] = [v.to_dict() for v in report.violations]
        summary["inconclusive"] = [v.to_dict() for v in report.inconclusive]
        if report.vacuous:
            message = "Vacuous: q - M - 1 - lambda <= 0"
        elif report.vacuous_max:
            message = "Vacuous at lambda_max: q - M - 1 - lambda_max <= 0"
        elif report.inconclusive:
            message = f"{len(report.inconclusive)} radius(es) fail only at lambda_min"
        else:
            message = ""
        status = CheckStatus.PASSED if report.passed else CheckStatus.FAILED
        return self.result(status, report.header, report.table_rows(), message, **summary)


@register_check
class SmtCheck(SmtBaseCheck):
    name = "smt"
    description = "Second main theorem with the shift Casorati determinant"

    def execute(self, request: CheckRequest) -> CheckResult:
        F = request.require_map()
        c = request.c if request.c is not None else unit_vector(F.dim)
        report = smt_check(
            F,
            request.require_hypersurfaces(),
            c,
            request.require_grid(),
            self.quadrature(F.dim),
            self.settings,
        )
        return self.report_result(report)


@register_check
class QsmtCheck(SmtBaseCheck):
    name = "qsmt"
    description = "Second main theorem with the q-Casorati determinant"

    def execute(self, request: CheckRequest) -> CheckResult:
        F = request.require_map()
        q = request.q if request.q is not None else 2.0
        report = q_smt_check(
            F,
            request.require_hypersurfaces(),
            q,
            request.require_grid(),
            self.quadrature(F.dim),
            self.settings,
        )
        return self.report_result(report)
