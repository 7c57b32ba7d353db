"""Test finite linear group actions."""

import numpy as np
import pytest
import sympy as sp
from src.orbit.group import (
    FiniteGroupAction,
    average_field,
    average_invariant,
    equivariance_residual,
    generate_group,
    invariance_residual,
    rational_matrix,
)
from src.smooth.parser import parse_map
from src.utils.errors import GroupActionError


class TestGenerateGroup:
    def test_cyclic_groups(self):
        """Test the orders of the point reflection and the quarter turn."""
        assert generate_group([[[-1, 0], [0, -1]]], 2).order == 2
        assert generate_group([[[0, -1], [1, 0]]], 2, "C4").order == 4

    def test_dihedral_group(self):
        """Test that two reflections generate the group of the square."""
        group = generate_group([[[0, 1], [1, 0]], [[1, 0], [0, -1]]], 2, "D4")

        assert group.order == 8

    def test_rational_entries(self):
        """Test exact rational matrices from text."""
        m = rational_matrix([["1/2", "0"], [0, 2]])

        assert m[0, 0] == sp.Rational(1, 2)

    def test_bad_literal(self):
        """Test that entries must be rational literals."""
        with pytest.raises(GroupActionError, match="rational literals"):
            rational_matrix([["abc", 0], [0, 1]])

    def test_singular_generator(self):
        """Test that generators must be invertible."""
        with pytest.raises(GroupActionError, match="not invertible"):
            generate_group([[[1, 0], [0, 0]]], 2)

    def test_wrong_shape(self):
        """Test that generators act on the stated space."""
        with pytest.raises(GroupActionError, match="does not act on R\\^3"):
            generate_group([[[1, 0], [0, 1]]], 3)

    def test_infinite_group(self):
        """Test that a scaling generates too many elements."""
        with pytest.raises(GroupActionError, match="exceeds"):
            generate_group([[[2, 0], [0, 1]]], 2)

    def test_verify_needs_identity(self):
        """Test the identity check of a listed group."""
        action = FiniteGroupAction(2, (rational_matrix([[-1, 0], [0, -1]]),), "broken")

        with pytest.raises(GroupActionError, match="does not contain the identity"):
            action.verify()


class TestInvariants:
    def setup_method(self):
        self.z2 = generate_group([[[-1, 0], [0, -1]]], 2, "Z2")
        self.points = np.array([[0.5, -1.0], [2.0, 0.25], [-1.5, 1.5]])

    def test_orbit(self):
        """Test the orbit of a point."""
        np.testing.assert_allclose(self.z2.orbit([1.0, 2.0]), [[1.0, 2.0], [-1.0, -2.0]])

    def test_invariance_residual(self):
        """Test max |f(g x) - f(x)| for invariant and non-invariant f."""
        assert invariance_residual(parse_map(["x1*x2"], 2), self.z2, self.points) == 0.0
        assert invariance_residual(parse_map(["x1"], 2), self.z2, self.points) == 4.0

    def test_average_invariant(self):
        """Test that averaging keeps the even part."""
        averaged = average_invariant(parse_map(["x1 + x1**2 * x2**2"], 2), self.z2)

        np.testing.assert_allclose(
            averaged.evaluate(self.points)[:, 0], self.points[:, 0] ** 2 * self.points[:, 1] ** 2
        )

    def test_average_field_is_equivariant(self):
        """Test that the averaged field commutes with the action."""
        field = parse_map(["1 + x1", "x2**2"], 2)
        averaged = average_field(field, self.z2)

        assert equivariance_residual(field, self.z2, self.points) > 0.0
        assert equivariance_residual(averaged, self.z2, self.points) < 1e-14
        np.testing.assert_allclose(averaged.evaluate([1.0, 3.0]), [1.0, 0.0])
