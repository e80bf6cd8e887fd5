"""
Tests for tropnev.projective.hypersurface module.
"""

import math

import numpy as np
import pytest

from tropnev.core.exceptions import ArityMismatch, BudgetExceeded, ValidationError
from tropnev.projective.hypersurface import (
    HomogeneousPolynomial,
    compose,
    evaluate_composition_many,
    hypersurface_from_values,
    lcm_degree,
    multi_indices,
)
from tropnev.projective.space import ProjectiveMap

from ..conftest import random_rational


class TestMultiIndices:
    """Degree-d indices in m + 1 variables."""

    def test_small_case(self):
        assert multi_indices(1, 2) == ((2, 0), (1, 1), (0, 2))

    @pytest.mark.parametrize("m, d", [(1, 1), (2, 2), (3, 3), (2, 5)])
    def test_count(self, m, d):
        indices = multi_indices(m, d)
        assert len(indices) == math.comb(m + d, d)
        assert all(sum(i) == d for i in indices)


class TestHomogeneousPolynomial:
    """Construction and evaluation."""

    def test_complete(self):
        P = HomogeneousPolynomial.complete(2, 2, value=1.5)
        assert P.M == 5
        assert P.num_terms == 6
        assert P.is_complete()
        assert P.coeff_spread == 0.0

    def test_linear(self):
        P = HomogeneousPolynomial.linear([0.0, -1.0, 2.0])
        assert (P.m, P.d) == (2, 1)
        assert P.evaluate([0.0, 0.0, 0.0]) == 2.0
        assert P.evaluate([5.0, 0.0, 0.0]) == 5.0
        assert P.max_coeff == 2.0 and P.min_coeff == -1.0

    def test_bottom_coefficients_dropped(self):
        P = HomogeneousPolynomial(1, 2, {(2, 0): 0.0, (1, 1): "-inf", (0, 2): 1.0})
        assert P.num_terms == 2
        assert not P.is_complete()

    @pytest.mark.parametrize(
        "m, d, coeffs",
        [
            (0, 1, {(1,): 0.0}),
            (1, 0, {(0, 0): 0.0}),
            (1, 2, {(1, 0): 0.0}),
            (1, 1, {(1, 0): "-inf"}),
        ],
    )
    def test_invalid(self, m, d, coeffs):
        with pytest.raises(ValidationError):
            HomogeneousPolynomial(m, d, coeffs)

    def test_arity(self):
        with pytest.raises(ArityMismatch):
            HomogeneousPolynomial.linear([0.0, 0.0]).evaluate([1.0, 2.0, 3.0])

    def test_from_values(self):
        (P,) = hypersurface_from_values([0.5])
        assert P.coeffs == {(1, 0): 0.0, (0, 1): -0.5}
        with pytest.raises(ValidationError):
            hypersurface_from_values([float("inf")])

    def test_lcm_degree(self):
        polys = [HomogeneousPolynomial.complete(1, d) for d in (2, 3, 4)]
        assert lcm_degree(polys) == 12
        assert lcm_degree([]) == 1


class TestCompose:
    """Symbolic P o f against direct evaluation."""

    def test_linear_composition(self, rational_1d):
        F = ProjectiveMap.from_rational(rational_1d)
        (P,) = hypersurface_from_values([-0.75])
        composed = compose(P, F)
        # max(x (+) 1, x (+) 0 + 0.75) = max(x + 0.75, 1)
        for x in (-3.0, 0.0, 0.25, 2.0):
            assert composed.evaluate([x]) == pytest.approx(max(x + 0.75, 1.0))

    def test_matches_evaluation(self):
        rng = np.random.default_rng(21)
        X = rng.normal(0.0, 5.0, size=(50, 2))
        for _ in range(4):
            F = ProjectiveMap.from_rational(random_rational(rng, 2))
            coeffs = {index: float(rng.normal()) for index in multi_indices(1, 3)}
            P = HomogeneousPolynomial(1, 3, coeffs)
            assert np.allclose(compose(P, F).evaluate_many(X), evaluate_composition_many(P, F, X))

    def test_arity_mismatch(self, rational_1d):
        F = ProjectiveMap.from_rational(rational_1d)
        with pytest.raises(ArityMismatch):
            compose(HomogeneousPolynomial.complete(2, 1), F)

    def test_term_cap(self, rational_1d):
        F = ProjectiveMap.from_rational(rational_1d)
        with pytest.raises(BudgetExceeded):
            compose(HomogeneousPolynomial.complete(1, 4), F, term_cap=3)
