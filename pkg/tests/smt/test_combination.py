"""
Tests for tropnev.smt.combination module.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropnev.core.exceptions import ValidationError
from tropnev.formats.expr import parse_expr
from tropnev.projective.hypersurface import hypersurface_from_values
from tropnev.projective.space import ProjectiveMap
from tropnev.smt.combination import (
    CombinationBasis,
    ddg,
    ddg_interval,
    essential_terms,
    probe_points,
)


def poly(text):
    return parse_expr(text).num


@pytest.fixture
def basis():
    """(x (+) 1, x (+) 0)."""
    return (poly("0:1|1:0"), poly("0:1|0:0"))


class TestEssentialTerms:
    """Terms that strictly dominate somewhere."""

    def test_dominated_term(self, basis):
        terms = essential_terms(CombinationBasis(basis, (0.0, -0.5)))
        assert terms.indices == (0,)
        assert terms.exact
        assert terms.length == 1

    def test_both_terms(self, basis):
        terms = essential_terms(CombinationBasis(basis, (0.0, 0.75)))
        assert terms.indices == (0, 1)
        assert set(terms.witnesses) == {0, 1}

    def test_single_finite_term(self, basis):
        terms = essential_terms(CombinationBasis(basis, (0.0, "-inf")))
        assert terms.indices == (0,)
        assert terms.exact

    def test_linear_program_finds_narrow_window(self):
        """The constant term wins only on (2.8, 3.2), away from every probe point."""
        comb = CombinationBasis((poly("0:1"), poly("6:-1"), poly("3.2:0")), (0.0, 0.0, 0.0))
        terms = essential_terms(comb, probe_count=0)
        assert terms.indices == (0, 1, 2)
        assert terms.exact
        assert 2.8 < terms.witnesses[2][0] < 3.2

    def test_inexact_above_dimension_limit(self, basis):
        terms = essential_terms(CombinationBasis(basis, (0.0, -0.5)), exact_dim_limit=0)
        assert terms.indices == (0,)
        assert not terms.exact

    def test_from_composition(self, rational_1d):
        F = ProjectiveMap.from_rational(rational_1d)
        (P,) = hypersurface_from_values([-0.75])
        comb = CombinationBasis.from_composition(P, F)
        assert comb.M == 1
        assert comb.coeffs == (0.0, 0.75)
        assert essential_terms(comb).indices == (0, 1)

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=3, max_size=3),
        st.integers(min_value=0, max_value=2),
        st.floats(min_value=0.0, max_value=3.0),
    )
    def test_monotone_in_coefficients(self, coeffs, k, delta):
        """Raising a coefficient keeps its term; a -inf coefficient drops it."""
        basis = (poly("0:1"), poly("6:-1"), poly("3.2:0"))
        before = essential_terms(CombinationBasis(basis, tuple(coeffs)))
        raised = list(coeffs)
        raised[k] += delta
        after = essential_terms(CombinationBasis(basis, tuple(raised)))
        if k in before.indices:
            assert k in after.indices
        dropped = list(coeffs)
        dropped[k] = "-inf"
        assert k not in essential_terms(CombinationBasis(basis, tuple(dropped))).indices

    @pytest.mark.parametrize("coeffs", [(0.0,), ("-inf", "-inf")])
    def test_invalid_coefficients(self, basis, coeffs):
        with pytest.raises(ValidationError):
            CombinationBasis(basis, coeffs)

    def test_probe_points(self):
        points = probe_points(2, 10, seed=1)
        assert points.shape[1] == 2
        assert (points[0] == 0).all()


class TestDegreeOfDegeneracy:
    """Counting members with short essential sets."""

    def test_interval(self, basis):
        Q = [CombinationBasis(basis, (0.0, -0.5)), CombinationBasis(basis, (0.0, 0.75))]
        assert ddg_interval(Q) == (1, 1)
        assert ddg(Q) == 1

    def test_uncertified_member_counts_only_above(self, basis):
        Q = [CombinationBasis(basis, (0.0, -0.5))]
        assert ddg_interval(Q, exact_dim_limit=0) == (0, 1)

    def test_explicit_order(self, basis):
        Q = [CombinationBasis(basis, (0.0, 0.75))]
        assert ddg_interval(Q, M=2) == (1, 1)
