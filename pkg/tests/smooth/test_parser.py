"""Test the expression grammar."""

import math

import numpy as np
import pytest
from src.smooth.parser import parse_expression, parse_map
from src.utils.errors import ExpressionParseError


class TestParseExpression:
    def test_arithmetic_and_functions(self):
        """Test a mixed expression against direct evaluation."""
        node = parse_expression("exp(x1) * sin(x2) - x1**2 / 4 + sqrt(x2) + log(2)")
        x, y = 0.3, 1.2
        expected = math.exp(x) * math.sin(y) - x**2 / 4 + math.sqrt(y) + math.log(2)

        assert node.evaluate(np.array([[x, y]]))[0] == pytest.approx(expected)

    def test_constants(self):
        """Test pi and e."""
        assert parse_expression("pi").evaluate(np.zeros((1, 0)))[0] == pytest.approx(math.pi)
        assert parse_expression("e").evaluate(np.zeros((1, 0)))[0] == pytest.approx(math.e)

    def test_unary_minus(self):
        """Test negative literals and parenthesized coefficients."""
        node = parse_expression("(-0.25)*x1 + -x2")

        assert node.evaluate(np.array([[4.0, 1.0]]))[0] == pytest.approx(-2.0)

    def test_bump(self):
        """Test the bump primitive."""
        node = parse_expression("bump(x1)")

        assert node.evaluate(np.array([[1.0]]))[0] == pytest.approx(math.exp(-1.0))

    def test_multiline(self):
        """Test that expressions may span lines."""
        node = parse_expression("x1 +\n  x2")

        assert node.evaluate(np.array([[1.0, 2.0]]))[0] == pytest.approx(3.0)


class TestParseErrors:
    def test_unknown_identifier_location(self):
        """Test the column of an unknown name."""
        with pytest.raises(ExpressionParseError, match="Unknown identifier 'y'") as info:
            parse_expression("2 * y")

        assert info.value.line == 1
        assert info.value.column == 5

    def test_unknown_function(self):
        """Test that only the bundled primitives are callable."""
        with pytest.raises(ExpressionParseError, match="Unknown function 'tan'"):
            parse_expression("tan(x1)")

    def test_syntax_error(self):
        """Test a dangling operator."""
        with pytest.raises(ExpressionParseError, match="Syntax error"):
            parse_expression("x1 +")

    def test_empty(self):
        """Test that empty text is rejected."""
        with pytest.raises(ExpressionParseError, match="Empty expression"):
            parse_expression("   ")

    def test_relation_where_expression_expected(self):
        """Test that relations belong to predicates."""
        with pytest.raises(ExpressionParseError, match="Relation found"):
            parse_expression("x1 < 2")

    def test_variable_exponent(self):
        """Test that exponents must be constants."""
        with pytest.raises(ExpressionParseError, match="Exponent must be a constant"):
            parse_expression("x1**x2")

    def test_coordinate_beyond_dimension(self):
        """Test coordinates against the declared dimension."""
        with pytest.raises(ExpressionParseError, match="exceeds the dimension 2"):
            parse_expression("x3", 2)

    def test_function_arity(self):
        """Test that primitives take one argument."""
        with pytest.raises(ExpressionParseError, match="exactly one argument"):
            parse_expression("sin(x1, x2)")


class TestParseMap:
    def test_components(self):
        """Test a vector-valued map."""
        f = parse_map(["x1 + x2", "x1 * x2", "3"], 2)

        assert f.output_dim == 3
        np.testing.assert_allclose(f.evaluate([2.0, 5.0]), [7.0, 10.0, 3.0])
