"""Test membership predicates."""

import numpy as np
import pytest
from src.space.predicates import AllOf, AnyOf, Everything, RelationKind, parse_predicate
from src.utils.errors import ExpressionParseError


class TestParsePredicate:
    def test_empty_means_everything(self):
        """Test that missing or 'true' predicates cover the ambient space."""
        assert isinstance(parse_predicate(None), Everything)
        assert isinstance(parse_predicate("  "), Everything)
        assert isinstance(parse_predicate("true"), Everything)

    def test_equation(self):
        """Test an equality relation with tolerance."""
        circle = parse_predicate("x1**2 + x2**2 == 1", 2)
        points = np.array([[1.0, 0.0], [0.6, 0.8], [0.0, 0.0], [1.0 + 1e-10, 0.0]])

        np.testing.assert_array_equal(
            circle.contains(points, 1e-8), [True, True, False, True]
        )
        assert circle.kind == RelationKind.EQ
        assert len(circle.equations()) == 1

    def test_chained_comparison(self):
        """Test that a <= x <= b becomes a conjunction."""
        interval = parse_predicate("-1 <= x1 <= 1", 1)
        points = np.array([[-1.0], [0.3], [1.0], [2.0]])

        assert isinstance(interval, AllOf)
        np.testing.assert_array_equal(interval.contains(points, 0.0), [True, True, True, False])
        np.testing.assert_allclose(interval.violation(points), [0.0, 0.0, 0.0, 1.0])

    def test_strict_inequality_ignores_tolerance(self):
        """Test that open conditions exclude their boundary whatever the tolerance."""
        disk = parse_predicate("x1**2 + x2**2 < 1", 2)

        assert not disk.contains(np.array([[1.0, 0.0]]), 1e-3)[0]

    def test_disjunction(self):
        """Test 'or' and the minimum violation over its parts."""
        union = parse_predicate("x2 == 0 or x1 == 0", 2)
        points = np.array([[3.0, 0.0], [0.0, -2.0], [1.0, 2.0]])

        assert isinstance(union, AnyOf)
        np.testing.assert_array_equal(union.contains(points, 1e-9), [True, True, False])
        np.testing.assert_allclose(union.violation(points), [0.0, 0.0, 1.0])

    def test_expression_is_not_a_predicate(self):
        """Test that a bare expression is rejected."""
        with pytest.raises(ExpressionParseError, match="Expected a relation"):
            parse_predicate("x1 + 1", 1)


class TestShifted:
    def test_reads_later_coordinates(self):
        """Test that a shifted predicate ignores the new leading coordinate."""
        circle = parse_predicate("x1**2 + x2**2 == 1", 2).shifted(1)
        points = np.array([[0.7, 0.0, 1.0], [0.7, 1.0, 1.0]])

        np.testing.assert_array_equal(circle.contains(points, 1e-9), [True, False])

    def test_render(self):
        """Test the normalized text of a relation."""
        assert parse_predicate("x1 >= 2", 1).render() == "(x1 - 2) >= 0"
