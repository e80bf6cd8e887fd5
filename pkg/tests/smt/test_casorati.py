"""
Tests for tropnev.smt.casorati module.
"""

import numpy as np
import pytest

from tropnev.core.exceptions import BadScale, DimMismatch, ValidationError
from tropnev.formats.expr import parse_expr
from tropnev.projective.space import ProjectiveMap
from tropnev.smt.casorati import (
    ShiftFamily,
    casorati_eval,
    casorati_function,
    casorati_many,
    casorati_pattern,
    casorati_roots_counting,
    casorati_symbolic,
)

from ..conftest import random_rational


@pytest.fixture
def linear_family():
    """Base (x, 0) with shift 1: C(x) = max(x, x + 1)."""
    return ShiftFamily([parse_expr("0:1"), parse_expr("0:0")], c=[1.0])


class TestShiftFamily:
    """Construction and the shift matrix."""

    def test_matrix_at(self, linear_family):
        assert linear_family.order == 2
        assert linear_family.dim == 1
        assert not linear_family.is_q_family
        assert np.array_equal(linear_family.matrix_at([2.0]), [[2.0, 3.0], [0.0, 0.0]])
        assert np.array_equal(linear_family.shift_vector, [1.0])

    def test_q_family(self):
        family = ShiftFamily([parse_expr("0:1"), parse_expr("0:0")], q=2.0)
        assert family.is_q_family
        assert family.scale == 2.0
        assert casorati_eval(family, [3.0]) == 6.0
        assert casorati_eval(family, [-3.0]) == -3.0

    def test_rebased(self, linear_family):
        moved = linear_family.rebased([2.0])
        assert np.array_equal(moved.matrix_at([0.0]), linear_family.matrix_at([2.0]))

    def test_from_map(self, rational_1d):
        family = ShiftFamily.from_map(ProjectiveMap.from_rational(rational_1d), c=[1.0])
        assert family.order == 2

    @pytest.mark.parametrize("kwargs", [{}, {"c": [1.0], "q": 2.0}])
    def test_exactly_one_step(self, kwargs):
        with pytest.raises(ValidationError):
            ShiftFamily([parse_expr("0:1")], **kwargs)

    @pytest.mark.parametrize("q", [0.0, 1.0, float("inf")])
    def test_bad_scale(self, q):
        with pytest.raises(BadScale):
            ShiftFamily([parse_expr("0:1")], q=q)

    def test_empty_base(self):
        with pytest.raises(ValidationError):
            ShiftFamily([], c=[1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimMismatch):
            ShiftFamily([parse_expr("0:1"), parse_expr("0:1,0")], c=[1.0])


class TestCasoratiDeterminant:
    """Pointwise evaluation by assignment against the symbolic expansion."""

    def test_values(self, linear_family):
        assert casorati_eval(linear_family, [2.0]) == 3.0
        value, pattern = casorati_pattern(linear_family, [2.0])
        assert value == 3.0
        assert pattern == (1, 0)
        assert casorati_function(linear_family)([-1.0]) == 0.0

    def test_symbolic_matches_pointwise(self):
        rng = np.random.default_rng(17)
        X = rng.normal(0.0, 4.0, size=(30, 2))
        for _ in range(3):
            family = ShiftFamily([random_rational(rng, 2) for _ in range(3)], c=[0.5, -1.0])
            symbolic = casorati_symbolic(family)
            assert np.allclose(symbolic.evaluate_many(X), casorati_many(family, X))

    def test_symbolic_order_limit(self):
        base = [parse_expr(f"{k}:1") for k in range(5)]
        with pytest.raises(ValidationError):
            casorati_symbolic(ShiftFamily(base, c=[1.0]))

    def test_roots_counting(self, quad_1d):
        # C(x) = max(max(x, 0), max(x + 1, 0)) = max(x + 1, 0) has one root at -1
        family = ShiftFamily([parse_expr("0:1|0:0"), parse_expr("0:0")], c=[1.0])
        assert casorati_roots_counting(family, 5.0, quad_1d) == pytest.approx(2.0, abs=1e-5)
        counts = casorati_roots_counting(family, [0.5, 3.0], quad_1d)
        assert counts == pytest.approx([0.0, 1.0], abs=1e-5)
