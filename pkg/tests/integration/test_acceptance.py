"""
End-to-end acceptance checks on seeded corpora.

Asymptotic statements are checked as finite-grid estimates at the largest radius.
"""

import math

import numpy as np
import pytest

from tropnev.maxplus.matrix import trop_det, trop_det_enumerate
from tropnev.nevanlinna.functionals import counting_density
from tropnev.nevanlinna.quadrature import make_quadrature
from tropnev.nevanlinna.table import char_table
from tropnev.nevanlinna.theorems import (
    convexity_violations,
    fmt_gap,
    jensen_residuals,
    ldl_ratio_table,
    lemma_bound_violations,
    pole_survey,
    sequence_spread,
    subadditivity_violations,
)
from tropnev.plfun.local import PointKind, classify_point
from tropnev.projective.functionals import (
    complete_poly_gap,
    defect,
    hyper_fmt_residual,
    nondegeneracy_witness,
)
from tropnev.projective.hypersurface import HomogeneousPolynomial, hypersurface_from_values
from tropnev.projective.space import ProjectiveMap
from tropnev.smt.report import smt_check

from ..conftest import random_rational

pytestmark = pytest.mark.integration

ABS_DIFF_NU = (4 * math.sqrt(2) - 4) / math.pi
INTEGER_GRID = np.arange(1.0, 101.0)
LONG_GRID = np.geomspace(1.0, 1e4, 41)


@pytest.fixture(scope="module")
def corpus_200():
    rng = np.random.default_rng(2024)
    return [random_rational(rng, 1) for _ in range(200)]


@pytest.fixture(scope="module")
def corpus_50_2d():
    rng = np.random.default_rng(4096)
    return [random_rational(rng, 2) for _ in range(50)]


@pytest.fixture(scope="module")
def quad_1d_module():
    return make_quadrature(1)


@pytest.fixture(scope="module")
def quad_2d_module():
    return make_quadrature(2, 4096)


def with_poles(functions, quad, R=100.0):
    surveys = [(f, pole_survey(f, quad, R)) for f in functions]
    return [(f, survey) for f, survey in surveys if survey.has_poles]


class TestPointClassification:
    """Roots, poles and multiplicities of the worked examples."""

    def test_rational_example_is_exact(self, rational_1d):
        root = classify_point(rational_1d, [0.0])
        pole = classify_point(rational_1d, [1.0])
        assert (root.kind, root.multiplicity) == (PointKind.ROOT, 1.0)
        assert (pole.kind, pole.multiplicity) == (PointKind.POLE, 1.0)

    def test_abs_diff_origin_multiplicity(self, abs_diff_2d):
        point = classify_point(abs_diff_2d, [0.0, 0.0])
        assert point.kind == PointKind.POLE
        assert point.multiplicity == pytest.approx(ABS_DIFF_NU, abs=1e-6)

    @pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
    def test_abs_diff_counting_density_is_constant(self, abs_diff_2d, quad_2d_module, t):
        density = counting_density(abs_diff_2d, t, quad_2d_module)
        assert density == pytest.approx(ABS_DIFF_NU, abs=1e-6)


class TestJensenOnCorpora:
    """T(r, f) - T(r, 1/f) = f(0) over whole corpora."""

    def test_one_variable_is_exact(self, corpus_200, quad_1d_module):
        for f in corpus_200:
            residuals = jensen_residuals(f, INTEGER_GRID, quad_1d_module)
            assert np.max(np.abs(residuals)) < 1e-9

    @pytest.mark.slow
    def test_two_variables_within_quadrature_error(self, corpus_50_2d, quad_2d_module):
        grid = np.arange(10.0, 101.0, 10.0)
        for f in corpus_50_2d:
            residuals = jensen_residuals(f, grid, quad_2d_module)
            assert np.max(np.abs(residuals)) < 5 / 4096


class TestInequalitiesOnCorpora:
    """Subadditivity relations and convexity of T."""

    def test_subadditivity(self, corpus_200, quad_1d_module):
        for f, g in zip(corpus_200[::2], corpus_200[1::2]):
            assert subadditivity_violations(f, g, INTEGER_GRID, quad_1d_module) == []

    def test_convexity(self, corpus_200, quad_1d_module):
        for f in corpus_200:
            assert convexity_violations(char_table(f, INTEGER_GRID, quad_1d_module)) == []

    @pytest.mark.slow
    def test_two_variables(self, corpus_50_2d):
        quad = make_quadrature(2, 512)
        grid = np.arange(10.0, 101.0, 10.0)
        for f, g in zip(corpus_50_2d[:10:2], corpus_50_2d[1:10:2]):
            assert subadditivity_violations(f, g, grid, quad) == []
            assert convexity_violations(char_table(f, grid, quad)) == []


class TestFirstMainTheorem:
    """Bounded gap below the smallest pole value."""

    def test_gap_spread(self, corpus_200, quad_1d_module):
        checked = 0
        for f, survey in with_poles(corpus_200, quad_1d_module)[:50]:
            a = survey.L_f - 1.0
            gap = fmt_gap(f, a, INTEGER_GRID, quad_1d_module)
            assert sequence_spread(gap) < 2 * (abs(a) + 1)
            checked += 1
        assert checked == 50

    def test_corollary_instance(self, rational_1d, quad_1d_module):
        # f (+) -0.5 has its root at 0.5 and its pole at 1
        grid = INTEGER_GRID[INTEGER_GRID > 1]
        T = char_table(rational_1d, grid, quad_1d_module).T_vals
        N = char_table(rational_1d.add_constant(-0.5).reciprocal(), grid, quad_1d_module).N_vals
        assert np.allclose(np.abs(T - N), 0.25, atol=1e-9)


class TestLogarithmicDifference:
    """Shift bound on the long grid and the ratio trend at its end."""

    def test_shift_bound_holds(self, corpus_200, quad_1d_module):
        for f in corpus_200[:50]:
            assert lemma_bound_violations(f, [1.0], LONG_GRID, quad_1d_module, alpha=2.0) == []

    def test_ratio_trend(self, corpus_200, quad_1d_module):
        for f, _ in with_poles(corpus_200, quad_1d_module):
            table = ldl_ratio_table(f, LONG_GRID, quad_1d_module, c=[1.0])
            assert table.ratios[-1] < 0.05


class TestHypersurfaces:
    """First main theorem for hypersurfaces and complete polynomials."""

    def test_residual_spread_one_variable(self, corpus_200, quad_1d_module):
        rng = np.random.default_rng(20)
        checked = 0
        for f in corpus_200:
            if checked == 20:
                break
            F = ProjectiveMap.from_rational(f)
            coeffs = {(2, 0): rng.normal(), (1, 1): rng.normal(), (0, 2): rng.normal()}
            P = HomogeneousPolynomial(1, 2, coeffs)
            if nondegeneracy_witness(P, F) is None:
                continue
            residual = hyper_fmt_residual(P, F, INTEGER_GRID, quad_1d_module)
            assert sequence_spread(residual) < P.coeff_spread + 1e-6
            checked += 1
        assert checked == 20

    @pytest.mark.slow
    def test_residual_spread_two_variables(self, corpus_50_2d):
        K = 1024
        quad = make_quadrature(2, K)
        grid = np.arange(10.0, 101.0, 30.0)
        rng = np.random.default_rng(21)
        for f in corpus_50_2d[:3]:
            F = ProjectiveMap.from_rational(f)
            P = HomogeneousPolynomial.linear(rng.normal(size=2))
            if nondegeneracy_witness(P, F, quad) is None:
                continue
            residual = hyper_fmt_residual(P, F, grid, quad)
            assert sequence_spread(residual) < P.coeff_spread + 10 * (5 / K)

    def test_complete_polynomial_envelope(self, corpus_200, quad_1d_module):
        P = HomogeneousPolynomial(1, 2, {(2, 0): -0.4, (1, 1): 0.2, (0, 2): 0.6})
        envelope = (P.max_coeff - P.min_coeff) / P.d
        for f in corpus_200[:20]:
            gap = complete_poly_gap(P, ProjectiveMap.from_rational(f), INTEGER_GRID, quad_1d_module)
            assert np.max(np.abs(gap - gap[0])) <= envelope + 1e-9

    def test_complete_polynomial_defect(self, rational_1d, quad_1d_module):
        P = HomogeneousPolynomial(1, 2, {(2, 0): -0.4, (1, 1): 0.2, (0, 2): 0.6})
        F = ProjectiveMap.from_rational(rational_1d)
        assert defect(P, F, LONG_GRID, quad_1d_module) < 0.05


class TestDeterminantOracle:
    """Assignment determinant against permutation enumeration."""

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
    def test_random_matrices(self, k):
        rng = np.random.default_rng(k)
        for _ in range(1000):
            A = rng.normal(0.0, 10.0, size=(k, k))
            A[rng.random((k, k)) < 0.2] = -np.inf
            expected = trop_det_enumerate(A)
            if expected == -np.inf:
                assert trop_det(A) == -np.inf
            else:
                assert trop_det(A) == pytest.approx(expected, abs=1e-9)


class TestSecondMainTheorem:
    """Three-value report for [x (+) 1 : x (+) 0]."""

    def test_slack_and_truncated_sum(self, rational_1d, quad_1d_module):
        F = ProjectiveMap.from_rational(rational_1d)
        report = smt_check(
            F,
            hypersurface_from_values([-0.25, -0.5, -0.75]),
            [1.0],
            np.arange(10.0, 101.0),
            quad_1d_module,
        )
        assert report.q == 3
        for row in report.rows:
            assert row.slack >= -0.5
            assert abs((report.q - 2) * row.T_f - sum(row.N[2:])) < 1
