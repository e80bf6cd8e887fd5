"""
Tests for tropnev.smt.report module.
"""

import numpy as np
import pytest

from tropnev.core.config import RunConfig
from tropnev.core.exceptions import BadScale, TooFewHypersurfaces
from tropnev.formats.expr import parse_expr
from tropnev.projective.functionals import HyperFmtTable
from tropnev.projective.hypersurface import HomogeneousPolynomial, hypersurface_from_values
from tropnev.projective.space import ProjectiveMap
from tropnev.smt import report as report_module
from tropnev.smt.report import defect_relation_check, q_smt_check, smt_check

VALUES = [-0.25, -0.5, -0.75]


@pytest.fixture
def rational_map(rational_1d):
    return ProjectiveMap.from_rational(rational_1d)


@pytest.fixture
def hypersurfaces():
    return hypersurface_from_values(VALUES)


class TestSmtCheck:
    """Shift second main theorem on [x (+) 1 : x (+) 0] with three points."""

    def test_instance(self, rational_map, hypersurfaces, quad_1d, grid, settings):
        report = smt_check(rational_map, hypersurfaces, [1.0], grid, quad_1d, settings)
        assert (report.q, report.m, report.M, report.d) == (3, 1, 1, 1)
        assert report.lambda_interval == (0, 0)
        assert report.lambda_exact
        assert not report.vacuous
        assert report.passed
        assert report.violations == []
        assert report.growth is None

        last = report.rows[-1]
        assert last.T_f == pytest.approx(49.5)
        assert last.lhs == pytest.approx(49.5)
        assert last.rhs == pytest.approx((100.0 - 0.25) / 2)
        assert all(row.slack == pytest.approx(0.375) for row in report.rows)
        assert report.chain_ratio == pytest.approx(0.375 / 49.5)

    def test_table_layout(self, rational_map, hypersurfaces, quad_1d):
        report = smt_check(rational_map, hypersurfaces, [1.0], [1.0, 2.0, 4.0], quad_1d)
        assert report.header == [
            "r", "T_f", "N_1", "N_2", "N_3", "casorati_N",
            "lhs", "lhs_max", "middle", "rhs", "slack", "slack_max", "chain_gap",
        ]
        assert len(report.table_rows()) == 3
        data = report.to_dict()
        assert data["passed"] is True
        assert data["rows"][0]["lambda_interval"] == [0, 0]
        assert data["step"] == [1.0]

    def test_counting_columns(self, rational_map, hypersurfaces, quad_1d):
        report = smt_check(rational_map, hypersurfaces, [1.0], [10.0], quad_1d)
        # P_j o f = max(x + |a_j|, 1) has its root at 1 - |a_j|
        assert report.rows[0].N == pytest.approx(tuple((10.0 - (1.0 + a)) / 2 for a in VALUES))

    def test_too_few_hypersurfaces(self, quad_1d, grid):
        F = ProjectiveMap([parse_expr("0:0"), parse_expr("0:1"), parse_expr("0:2")])
        with pytest.raises(TooFewHypersurfaces):
            smt_check(F, [HomogeneousPolynomial.linear([0.0, 0.0, 0.0])], [1.0], grid, quad_1d)

    def test_positive_slack_needs_no_allowance(self, rational_map, hypersurfaces, quad_1d, grid):
        strict = RunConfig(slack_epsilon=0.0)
        report = smt_check(rational_map, hypersurfaces, [1.0], grid, quad_1d, strict)
        assert report.passed
        assert report.metadata["slack_epsilon"] == 0.0


class TestQSmtCheck:
    """q-difference variant of the same instance."""

    def test_instance(self, rational_map, hypersurfaces, quad_1d, grid):
        report = q_smt_check(rational_map, hypersurfaces, 2.0, grid, quad_1d)
        assert report.variant == "qsmt"
        assert report.step == 2.0
        assert report.passed
        assert all(row.slack == pytest.approx(0.375) for row in report.rows)

    def test_growth_header_on_long_grid(self, rational_map, hypersurfaces, quad_1d):
        report = q_smt_check(rational_map, hypersurfaces, 2.0, np.geomspace(1.0, 1e4, 31), quad_1d)
        assert report.growth is not None
        assert report.growth.rho == pytest.approx(1.0, abs=0.1)

    def test_bad_scale(self, rational_map, hypersurfaces, quad_1d, grid):
        with pytest.raises(BadScale):
            q_smt_check(rational_map, hypersurfaces, 1.0, grid, quad_1d)


class TestDefectRelation:
    """Defect sums against M + 1 + lambda."""

    def test_instance(self, rational_map, hypersurfaces, quad_1d):
        grid = np.geomspace(1.0, 1e4, 41)
        report = defect_relation_check(rational_map, hypersurfaces, grid, quad_1d)
        assert report.M == 1
        assert report.total_bound == 2
        assert report.tail_bound == 0
        assert all(0.0 <= delta < 1e-3 for delta in report.defects)
        assert report.passed
        assert report.header == ["j", "degree", "defect"]
        assert [row[0] for row in report.table_rows()] == [1, 2, 3]
        assert report.to_dict()["total"] == pytest.approx(report.total)


class TestLambdaInterval:
    """Reports evaluate the lower bound at both ends of an inexact lambda interval."""

    def test_both_ends_are_tabulated(self, monkeypatch, rational_map, hypersurfaces, quad_1d, grid):
        monkeypatch.setattr(report_module, "_lambda", lambda *args: ((0, 1), False))
        report = smt_check(rational_map, hypersurfaces, [1.0], grid, quad_1d)
        assert report.lambda_interval == (0, 1)
        assert not report.lambda_exact
        assert not report.vacuous
        assert report.vacuous_max

        last = report.rows[-1]
        assert last.lhs == pytest.approx(49.5)
        assert last.lhs_max == pytest.approx(0.0)
        assert last.slack_max == pytest.approx(last.rhs)
        assert report.header[report.header.index("lhs") + 1] == "lhs_max"
        assert "slack_max" in report.header
        assert report.to_dict()["rows"][-1]["slack_max"] == pytest.approx(last.rhs)

    def test_failure_only_at_lambda_min_is_inconclusive(
        self, monkeypatch, rational_map, hypersurfaces, quad_1d, grid
    ):
        # lhs = 2 T_f at the lower end, T_f at the upper end
        monkeypatch.setattr(report_module, "_lambda", lambda *args: ((-1, 0), False))
        report = smt_check(rational_map, hypersurfaces, [1.0], grid, quad_1d)
        assert report.violations == []
        assert [v.r for v in report.inconclusive] == [r for r in grid if r >= 10.0]
        assert all(row.slack_max == pytest.approx(0.375) for row in report.rows)
        assert report.passed
        assert report.summary()["inconclusive"] == len(report.inconclusive)

    def test_failure_at_lambda_max_is_a_violation(
        self, monkeypatch, rational_map, hypersurfaces, quad_1d, grid
    ):
        monkeypatch.setattr(report_module, "_lambda", lambda *args: ((-2, -1), False))
        report = smt_check(rational_map, hypersurfaces, [1.0], grid, quad_1d)
        assert report.violations
        assert report.inconclusive == []
        assert not report.passed


class TestChainBound:
    """N_j - d_j T_f must stay below a radius-independent constant."""

    def test_holds_on_instance(self, rational_map, hypersurfaces, quad_1d, grid):
        report = smt_check(rational_map, hypersurfaces, [1.0], grid, quad_1d)
        assert report.chain_bound_ok
        assert report.summary()["chain_bound_ok"] is True

    def test_growing_counting_gap_fails(
        self, monkeypatch, rational_map, hypersurfaces, quad_1d, grid
    ):
        real_table = report_module.hyper_fmt_table

        def growing_table(P, F, r_grid, *args):
            table = real_table(P, F, r_grid, *args)
            return HyperFmtTable(
                table.r_grid, np.zeros_like(table.mf), table.dTf + table.r_grid, table.dTf
            )

        monkeypatch.setattr(report_module, "hyper_fmt_table", growing_table)
        report = smt_check(rational_map, hypersurfaces, [1.0], grid, quad_1d)
        assert not report.chain_bound_ok
        assert not report.chain_ok
        assert not report.passed
