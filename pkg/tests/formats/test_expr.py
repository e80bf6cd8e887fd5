"""
Tests for tropnev.formats.expr module.
"""

import numpy as np
import pytest

from tropnev.core.exceptions import ParseError
from tropnev.formats.expr import (
    format_expr,
    format_hypersurface,
    format_map,
    format_number,
    parse_expr,
    parse_hypersurface,
    parse_map,
    tokenize,
)

from ..conftest import RATIONAL_1D, random_rational


class TestParseExpr:
    """Rational function grammar."""

    def test_rational_example(self):
        f = parse_expr(RATIONAL_1D)
        assert f.dim == 1
        assert not f.is_entire
        assert f.evaluate([0.5]) == -0.5

    def test_whitespace_and_newlines(self):
        f = parse_expr(" 0:1 |\n 0:0 ")
        assert f.is_entire
        assert f.evaluate([-3.0]) == 0.0

    def test_several_variables(self):
        f = parse_expr("0:1,0|0:-1,0/0:0,1|0:0,-1")
        assert f.dim == 2
        assert f.evaluate([3.0, -1.0]) == 2.0

    def test_omitted_exponent_is_zero(self):
        assert parse_expr("3", dim=2).dim == 2
        assert parse_expr("3|0:1").evaluate([5.0]) == 5.0

    def test_scientific_notation(self):
        assert parse_expr("1e-1:2").evaluate([1.0]) == pytest.approx(2.1)

    def test_bottom_term_dropped_with_warning(self):
        with pytest.warns(UserWarning):
            f = parse_expr("-inf:1|0:0")
        assert f.num.num_terms == 1

    @pytest.mark.parametrize(
        "src, line, column",
        [
            ("0:1|", 1, 5),
            ("0:1\n|x", 2, 2),
            ("0:1/", 1, 5),
            ("0:1 0:0", 1, 5),
        ],
    )
    def test_error_position(self, src, line, column):
        with pytest.raises(ParseError) as excinfo:
            parse_expr(src)
        assert (excinfo.value.line, excinfo.value.column) == (line, column)

    def test_mixed_exponent_lengths(self):
        with pytest.raises(ParseError):
            parse_expr("0:1|0:1,2")

    def test_no_finite_term(self):
        with pytest.warns(UserWarning), pytest.raises(ParseError):
            parse_expr("-inf:1")

    def test_tokens(self):
        kinds = [t.kind for t in tokenize("-inf:1|2")]
        assert kinds == ["bottom", "op", "number", "op", "number", "end"]


class TestFormat:
    """Text written by the formatters parses back to the same function."""

    @pytest.mark.parametrize(
        "x, text", [(2.0, "2"), (-0.5, "-0.5"), (float("-inf"), "-inf"), (0.1, "0.1")]
    )
    def test_format_number(self, x, text):
        assert format_number(x) == text

    def test_expr_round_trip(self):
        rng = np.random.default_rng(9)
        X = rng.normal(0.0, 5.0, size=(20, 2))
        for _ in range(5):
            f = random_rational(rng, 2)
            g = parse_expr(format_expr(f))
            assert np.allclose(g.evaluate_many(X), f.evaluate_many(X))

    def test_entire_has_no_slash(self):
        assert "/" not in format_expr(parse_expr("0:1|0:0"))


class TestParseMap:
    """Projective map grammar."""

    def test_bracketed(self):
        F = parse_map("[0:1|0:0 ; 1:0]")
        assert F.m == 1
        assert F.norm([0.0]) == 1.0

    def test_without_brackets(self):
        assert parse_map("0:1,0;0:0,1;0").m == 2

    def test_round_trip(self):
        F = parse_map("[0:1|1:0 ; 0:1|0:0]")
        G = parse_map(format_map(F))
        X = [[-2.0], [0.5], [3.0]]
        assert np.allclose(G.evaluate_many(X), F.evaluate_many(X))

    @pytest.mark.parametrize("src", ["[0:1]", "[0:1;0:0", "0:1;"])
    def test_invalid(self, src):
        with pytest.raises(ParseError):
            parse_map(src)


class TestParseHypersurface:
    """Homogeneous polynomial grammar."""

    def test_linear(self):
        P = parse_hypersurface("0:1,0|-0.5:0,1")
        assert (P.m, P.d) == (1, 1)
        assert P.coeffs == {(1, 0): 0.0, (0, 1): -0.5}

    def test_round_trip(self):
        P = parse_hypersurface("0:2,0,0|1:1,1,0|-2:0,0,2")
        assert parse_hypersurface(format_hypersurface(P)).coeffs == P.coeffs

    @pytest.mark.parametrize("src", ["0", "0:1,0|0:2,0", "0:0.5,0.5", "0:-1,2", "-inf:1,0"])
    def test_invalid(self, src):
        with pytest.raises(ParseError):
            parse_hypersurface(src)
