"""
Tests for the check registry and every registered check.
"""

import numpy as np
import pytest

from tropnev.checks import CheckRequest, CheckResult, CheckStatus, registry
from tropnev.core.exceptions import ValidationError
from tropnev.formats.expr import parse_map
from tropnev.formats.output import read_csv_table
from tropnev.maxplus.matrix import TropicalMatrix
from tropnev.plfun.rational import TropicalRational
from tropnev.projective.hypersurface import hypersurface_from_values

VALUES = [-0.25, -0.5, -0.75]
LOG_GRID = np.geomspace(1.0, 1e4, 31)


def run(name, settings, **fields):
    return registry.create(name, settings).run(CheckRequest(**fields))


class TestRegistry:
    """Check lookup by name."""

    def test_all_checks_registered(self):
        assert registry.list_checks() == sorted(
            [
                "eval", "classify", "slice", "charfun", "jensen", "inequalities", "fmt",
                "ldl", "qldl", "growth", "identity", "poisson", "cartan", "hyperfmt",
                "defect", "casorati", "det", "smt", "qsmt",
            ]
        )

    def test_descriptions(self):
        assert all(registry.describe().values())

    def test_unknown_check(self):
        with pytest.raises(ValidationError):
            registry.create("nope")


class TestCheckRequest:
    """Fallbacks for missing inputs."""

    def test_missing_inputs(self):
        request = CheckRequest()
        with pytest.raises(ValidationError):
            request.require_functions()
        with pytest.raises(ValidationError):
            request.require_map()
        with pytest.raises(ValidationError):
            request.require_hypersurfaces()
        with pytest.raises(ValidationError):
            request.require_grid()

    def test_derived_inputs(self, rational_1d):
        request = CheckRequest(functions=[rational_1d], values=[0.5])
        assert request.require_map().m == 1
        assert request.require_hypersurfaces()[0].coeffs == {(1, 0): 0.0, (0, 1): -0.5}
        assert [p.tolist() for p in request.point_list(2)] == [[0.0, 0.0]]


class TestCheckResult:
    """Rendering and exit codes."""

    def test_render_csv(self, settings):
        result = run("det", settings, matrix=TropicalMatrix.from_rows([[1, 2], [3, 4]]))
        text = result.render("csv")
        assert "# check=det" in text
        assert "# status=passed" in text
        assert read_csv_table(text) == [{"det": "5"}]
        assert result.exit_code == 0

    def test_failed_exit_code(self):
        assert CheckResult("x", CheckStatus.FAILED).exit_code == 1
        assert CheckResult("x", CheckStatus.SKIPPED).exit_code == 0

    def test_to_dict(self, settings):
        matrix = TropicalMatrix.from_rows([[0, "-inf"], ["-inf", 0]])
        data = run("det", settings, matrix=matrix).to_dict()
        assert data["status"] == "passed"
        assert data["summary"]["regular"] is True
        assert data["rows"] == [[0.0]]


class TestFunctionChecks:
    """Checks on single functions."""

    def test_eval(self, settings, rational_1d):
        result = run("eval", settings, functions=[rational_1d], points=[(-2.0,), (0.5,)])
        assert result.rows == [[0, "-2", -1.0], [0, "0.5", -0.5]]

    def test_classify(self, settings, rational_1d):
        result = run("classify", settings, functions=[rational_1d], points=[(0.0,), (1.0,), (3.0,)])
        assert [row[2] for row in result.rows] == ["root", "pole", "smooth"]

    def test_slice(self, settings, rational_1d):
        result = run("slice", settings, functions=[rational_1d], r_grid=np.array([10.0]))
        assert result.rows == [[0, 0.0, 1.0, "root"], [0, 1.0, -1.0, "pole"]]
        assert result.summary["breakpoints"] == 2

    def test_charfun(self, settings, rational_1d, grid):
        result = run("charfun", settings, functions=[rational_1d], r_grid=grid)
        assert result.status == CheckStatus.PASSED
        assert result.header == ["r", "m", "n", "N", "T"]
        assert result.rows[-1][-1] == pytest.approx(49.5)

    def test_charfun_corpus_is_indexed(self, settings, corpus_1d, grid):
        result = run("charfun", settings, functions=corpus_1d, r_grid=grid)
        assert result.header[0] == "index"
        assert len(result.rows) == len(corpus_1d) * grid.size

    def test_jensen(self, settings, corpus_1d, grid):
        result = run("jensen", settings, functions=corpus_1d, r_grid=grid)
        assert result.status == CheckStatus.PASSED

    def test_inequalities(self, settings, corpus_1d, grid):
        result = run("inequalities", settings, functions=corpus_1d, r_grid=grid)
        assert result.status == CheckStatus.PASSED
        assert result.summary["violations"] == 0

    def test_fmt_default_value(self, settings, rational_1d, grid):
        result = run("fmt", settings, functions=[rational_1d], r_grid=grid)
        assert result.status == CheckStatus.PASSED
        # L_f - 1 = -1
        assert result.rows[0][0] == -1.0

    def test_ldl(self, settings, rational_1d, grid):
        result = run("ldl", settings, functions=[rational_1d], r_grid=grid, c=(1.0,))
        assert result.status == CheckStatus.PASSED
        assert result.summary["bound_violations"] == 0

    def test_qldl_skipped_on_short_grid(self, settings, rational_1d, grid):
        result = run("qldl", settings, functions=[rational_1d], r_grid=grid, q=2.0)
        assert result.status == CheckStatus.SKIPPED

    def test_qldl_skips_positive_order(self, settings, rational_1d):
        result = run("qldl", settings, functions=[rational_1d], r_grid=LOG_GRID, q=2.0)
        assert result.status == CheckStatus.SKIPPED
        assert result.summary["orders"][0] == pytest.approx(1.0, abs=0.1)

    def test_growth(self, settings, rational_1d):
        result = run("growth", settings, functions=[rational_1d], r_grid=LOG_GRID)
        assert result.header[:3] == ["index", "rho", "rho2"]
        assert result.rows[0][1] == pytest.approx(1.0, abs=0.1)

    def test_identity(self, settings, rational_1d, grid):
        result = run("identity", settings, functions=[rational_1d], r_grid=grid, values=[-0.5])
        assert result.status == CheckStatus.PASSED
        assert all(row[3] == pytest.approx(-0.25) for row in result.rows)

    def test_identity_skips_constants(self, settings, grid):
        constant = TropicalRational.constant(1.0, 1)
        result = run("identity", settings, functions=[constant], r_grid=grid)
        assert result.status == CheckStatus.SKIPPED
        assert result.message

    def test_poisson(self, settings, rational_1d, grid):
        points = [(0.5,), (-3.0,)]
        result = run("poisson", settings, functions=[rational_1d], r_grid=grid, points=points)
        assert result.status == CheckStatus.PASSED
        assert result.summary["max_abs_residual"] < 1e-9


class TestProjectiveChecks:
    """Checks on maps, hypersurfaces and matrices."""

    def test_cartan_from_function(self, settings, rational_1d, grid):
        result = run("cartan", settings, functions=[rational_1d], r_grid=grid)
        assert result.status == CheckStatus.PASSED
        assert result.header == ["r", "T_f", "T", "difference"]
        assert result.summary["reduced"]
        assert result.summary["difference_spread"] == pytest.approx(0.0, abs=1e-9)

    def test_cartan_common_root_fails(self, settings, grid):
        # [(x (+) 0)(x (+) 1) : (x (+) 0)^2] shares the root at 0; T_f - T(r, f) = r / 2
        F = parse_map("[0:2|1:1|1:0 ; 0:2|0:1|0:0]")
        result = run("cartan", settings, projective_map=F, r_grid=grid)
        assert result.status == CheckStatus.FAILED
        assert result.exit_code == 1
        assert not result.summary["reduced"]
        assert result.summary["difference_spread"] == pytest.approx(49.5, abs=1e-6)
        assert result.message

    def test_hyperfmt(self, settings, rational_1d, grid):
        result = run("hyperfmt", settings, functions=[rational_1d], r_grid=grid, values=VALUES)
        assert result.status == CheckStatus.PASSED
        assert result.summary["spreads"] == pytest.approx([0.0, 0.0, 0.0], abs=1e-9)

    def test_value_defect(self, settings, rational_1d, grid):
        result = run("defect", settings, functions=[rational_1d], r_grid=grid, values=[-2.0])
        assert result.status == CheckStatus.PASSED
        assert result.rows[0][3] is True

    def test_value_defect_needs_values(self, settings, rational_1d, grid):
        with pytest.raises(ValidationError):
            run("defect", settings, functions=[rational_1d], r_grid=grid)

    def test_hypersurface_defects(self, settings, rational_1d):
        result = run(
            "defect",
            settings,
            functions=[rational_1d],
            hypersurfaces=hypersurface_from_values(VALUES),
            r_grid=LOG_GRID,
        )
        assert result.status == CheckStatus.PASSED
        assert result.summary["total_bound"] == 2

    def test_casorati(self, settings, rational_1d):
        grid = np.array([1.0, 5.0])
        result = run("casorati", settings, functions=[rational_1d], r_grid=grid, c=(1.0,))
        assert result.status == CheckStatus.PASSED
        assert result.summary["order"] == 2
        assert "0" in result.summary["values"]

    def test_det(self, settings):
        result = run("det", settings, matrix=TropicalMatrix.from_rows([[1, 2], [3, 4]]))
        assert result.rows == [[5.0]]
        assert result.summary["enumerated"] == 5.0
        assert result.summary["regular"] is True

    def test_det_needs_matrix(self, settings):
        with pytest.raises(ValidationError):
            run("det", settings)

    def test_smt(self, settings, rational_1d, grid):
        result = run("smt", settings, functions=[rational_1d], r_grid=grid, values=VALUES, c=(1.0,))
        assert result.status == CheckStatus.PASSED
        assert result.summary["lambda_interval"] == [0, 0]
        assert result.summary["violations"] == []
        assert result.message == ""

    def test_qsmt(self, settings, rational_1d, grid):
        result = run("qsmt", settings, functions=[rational_1d], r_grid=grid, values=VALUES, q=2.0)
        assert result.status == CheckStatus.PASSED
        assert result.summary["variant"] == "qsmt"

    def test_vacuous_smt_is_reported(self, settings, rational_1d, grid):
        values = [-0.5, -0.75]
        result = run("smt", settings, functions=[rational_1d], r_grid=grid, values=values, c=(1.0,))
        assert result.summary["vacuous"]
        assert result.message.startswith("Vacuous")
