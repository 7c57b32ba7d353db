"""Test expression nodes, jets and symbolic derivatives."""

import math

import numpy as np
import pytest
from src.smooth.nodes import (
    BUMP_CUTOFF,
    ONE,
    ZERO,
    Bump,
    Const,
    Coord,
    Exp,
    FiberIntegral,
    Log,
    Sin,
    Sqrt,
    bump_polynomial,
    compose_node,
    fiber_integral,
    unit_interval_rule,
)
from src.utils.errors import DimensionMismatchError, EvaluationError

X = Coord(0)
Y = Coord(1)


def central_difference(node, point, k, h=1e-6):
    step = np.zeros_like(point)
    step[k] = h
    up = node.evaluate((point + step).reshape(1, -1))[0]
    down = node.evaluate((point - step).reshape(1, -1))[0]
    return (up - down) / (2 * h)


class TestArithmetic:
    def test_constant_folding(self):
        """Test that constant subtrees collapse."""
        assert Const(2.0) + Const(3.0) == Const(5.0)
        assert X * ZERO == ZERO
        assert X * ONE is X
        assert -(-X) is X

    def test_evaluate_batch(self):
        """Test vectorized evaluation of a polynomial."""
        node = X**2 * Y - 3 * Y
        points = np.array([[1.0, 2.0], [-2.0, 0.5]])

        np.testing.assert_allclose(node.evaluate(points), [2.0 - 6.0, 2.0 - 1.5])

    def test_render(self):
        """Test the text form of a tree."""
        assert (X + 2).render() == "(x1 + 2)"
        assert Sin(X).render() == "sin(x1)"

    def test_variables(self):
        """Test dependency tracking."""
        assert (X * Sin(Y)).variables() == frozenset({0, 1})
        assert Const(4.0).variables() == frozenset()

    def test_coordinate_out_of_range(self):
        """Test that a coordinate beyond the point dimension fails."""
        with pytest.raises(DimensionMismatchError, match="x3"):
            Coord(2).evaluate(np.zeros((1, 2)))


class TestForwardMode:
    def setup_method(self):
        self.point = np.array([0.7, -0.4])
        self.node = Exp(X * Y) + Sin(X) * Y**3 - Sqrt(X**2 + 1)

    def test_gradient_matches_finite_differences(self):
        """Test exact gradients against central differences."""
        _, grad = self.node.forward(self.point.reshape(1, -1))
        for k in range(2):
            assert grad[0, k] == pytest.approx(
                central_difference(self.node, self.point, k), abs=1e-7
            )

    def test_symbolic_diff_agrees_with_forward(self):
        """Test that diff trees evaluate to the forward-mode gradient."""
        _, grad = self.node.forward(self.point.reshape(1, -1))
        for k in range(2):
            value = self.node.diff(k).evaluate(self.point.reshape(1, -1))[0]
            assert value == pytest.approx(grad[0, k], rel=1e-12)

    def test_diff_of_unused_coordinate_is_zero(self):
        """Test that differentiating in an absent variable gives ZERO."""
        assert Sin(X).diff(1) == ZERO


class TestDomains:
    def test_log_of_non_positive(self):
        """Test that log refuses non-positive arguments."""
        with pytest.raises(EvaluationError, match="log"):
            Log(X).evaluate(np.array([[0.0]]))

    def test_sqrt_outside_open_domain(self):
        """Test that sqrt refuses zero."""
        with pytest.raises(EvaluationError, match="sqrt"):
            Sqrt(X).evaluate(np.array([[0.0]]))

    def test_fractional_power_of_negative(self):
        """Test that fractional powers need a positive base."""
        with pytest.raises(EvaluationError, match="fractional power"):
            (X**0.5).evaluate(np.array([[-1.0]]))


class TestBump:
    def test_values(self):
        """Test e^{-1/x^2} away from zero and the extension by 0."""
        points = np.array([[1.0], [0.5], [0.0], [BUMP_CUTOFF / 2]])
        values = Bump(X).evaluate(points)

        assert values[0] == pytest.approx(math.exp(-1.0))
        assert values[1] == pytest.approx(math.exp(-4.0))
        assert values[2] == 0.0
        assert values[3] == 0.0

    def test_polynomial_recursion(self):
        """Test P_1(u) = 2u^3 and P_2(u) = 4u^6 - 6u^4."""
        np.testing.assert_allclose(bump_polynomial(1).coef, [0, 0, 0, 2])
        np.testing.assert_allclose(bump_polynomial(2).coef, [0, 0, 0, 0, -6, 0, 4])

    def test_derivatives_match_finite_differences(self):
        """Test the first two derivatives at x = 0.8."""
        point = np.array([0.8])
        first = Bump(X).diff(0)
        assert first.evaluate(point.reshape(1, -1))[0] == pytest.approx(
            central_difference(Bump(X), point, 0), rel=1e-6
        )
        second = first.diff(0)
        assert second.evaluate(point.reshape(1, -1))[0] == pytest.approx(
            central_difference(first, point, 0), rel=1e-5
        )

    def test_flat_at_origin(self):
        """Test that every derivative vanishes at 0."""
        node = Bump(X)
        for _ in range(4):
            node = node.diff(0)
            assert node.evaluate(np.zeros((1, 1)))[0] == 0.0


class TestCompose:
    def test_projection_short_circuit(self):
        """Test that composing a coordinate returns the inner tree."""
        inner = (Sin(X), X * Y)
        assert compose_node(Coord(1), inner) is inner[1]

    def test_chain_rule(self):
        """Test the gradient of outer(inner(x)) against finite differences."""
        node = compose_node(X * Exp(Y), (X + Y, X * Y))
        point = np.array([0.3, 1.1])
        _, grad = node.forward(point.reshape(1, -1))

        for k in range(2):
            assert grad[0, k] == pytest.approx(central_difference(node, point, k), abs=1e-7)


class TestFiberIntegral:
    def test_rule_on_unit_interval(self):
        """Test that the nodes lie in (0, 1) and the weights sum to 1."""
        nodes, weights = unit_interval_rule(8)

        assert all(0.0 < t < 1.0 for t in nodes)
        assert sum(weights) == pytest.approx(1.0)

    def test_polynomial_integrand(self):
        """Test int_0^1 t^2 x dt = x / 3."""
        t, x = Coord(0), Coord(1)
        node = fiber_integral(t**2 * x)

        assert isinstance(node, FiberIntegral)
        assert node.evaluate(np.array([[3.0]]))[0] == pytest.approx(1.0)
        assert node.variables() == frozenset({0})

    def test_t_independent_integrand(self):
        """Test that an integrand without t is re-indexed, not integrated."""
        node = fiber_integral(Sin(Coord(1)))

        assert not isinstance(node, FiberIntegral)
        assert node.evaluate(np.array([[0.5]]))[0] == pytest.approx(math.sin(0.5))

    def test_derivative_under_the_integral(self):
        """Test d/dx int_0^1 e^{t x} dt against finite differences."""
        node = fiber_integral(Exp(Coord(0) * Coord(1)))
        point = np.array([0.9])
        value = node.diff(0).evaluate(point.reshape(1, -1))[0]

        assert value == pytest.approx(central_difference(node, point, 0), rel=1e-7)
