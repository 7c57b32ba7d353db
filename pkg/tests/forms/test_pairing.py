"""Test pairing, Stokes, d^2 = 0 and the chain rule."""

import math

import numpy as np
import pytest
from src.chains.chain import CubicalChain, boundary
from src.chains.cube import (
    SingularCube,
    affine_cube,
    identity_cube,
    point_cube,
    random_affine_cubes,
    unit_box,
)
from src.core.battery import random_form
from src.forms.forms import GeneratorForm
from src.forms.pairing import (
    chain_rule_residual,
    classical_pairing,
    d_squared_value,
    lambda_eval,
    pair,
    stokes_residual,
)
from src.smooth.parser import parse_map
from src.utils.errors import FormError


class TestLambdaEval:
    def test_line_integral(self, plane):
        """Test int x dy along the diagonal = 1/2."""
        diagonal = affine_cube(plane, [0.0, 0.0], [[1.0, 1.0]])

        assert lambda_eval(GeneratorForm.lam(plane, "x1", "x2"), diagonal).value == (
            pytest.approx(0.5)
        )

    def test_function_on_point(self, plane):
        """Test that a 0-form pairs with a 0-cube by evaluation."""
        value = lambda_eval(GeneratorForm.lam(plane, "exp(x1) * x2"), point_cube(plane, [1.0, 2.0]))

        assert value.value == pytest.approx(2.0 * math.e)

    def test_angular_form_on_circle(self, plane):
        """Test that (x dy - y dx) / (x^2 + y^2) winds once around the origin."""
        loop = SingularCube(
            unit_box(1), parse_map(["cos(2*pi*x1)", "sin(2*pi*x1)"], 1), plane
        )
        winding = GeneratorForm.from_terms(
            plane,
            [
                (1.0, ("x1 / (x1**2 + x2**2)", "x2")),
                (-1.0, ("x2 / (x1**2 + x2**2)", "x1")),
            ],
        )

        assert lambda_eval(winding, loop).value == pytest.approx(2.0 * math.pi, rel=1e-10)

    def test_degree_mismatch(self, plane):
        """Test that a p-form pairs only with p-cubes."""
        with pytest.raises(FormError, match="Cannot pair a 1-form with a 2-cube"):
            lambda_eval(GeneratorForm.lam(plane, "x1", "x2"), identity_cube(plane, unit_box(2)))

    def test_space_mismatch(self, plane, r3):
        """Test that forms and cubes must share a space."""
        with pytest.raises(FormError, match="paired with a cube of R3"):
            lambda_eval(GeneratorForm.lam(plane, "x1"), point_cube(r3, [0.0, 0.0, 0.0]))

    def test_zero_form_pairs_to_zero(self, plane):
        """Test the empty sum."""
        result = lambda_eval(GeneratorForm.zero(plane, 1), affine_cube(plane, [0, 0], [[1, 0]]))

        assert result.value == 0.0

    def test_chain_linearity(self, plane):
        """Test <alpha, 2a - b> = 2<alpha, a> - <alpha, b>."""
        alpha = GeneratorForm.lam(plane, "x1*x2", "x1")
        a = affine_cube(plane, [0.0, 0.0], [[1.0, 0.5]])
        b = affine_cube(plane, [1.0, 0.0], [[0.0, 1.0]])
        expected = 2 * lambda_eval(alpha, a).value - lambda_eval(alpha, b).value

        assert pair(alpha, CubicalChain.of([(2, a), (-1, b)])).value == pytest.approx(expected)


class TestIdentities:
    def test_stokes_on_random_forms(self, r3, rng):
        """Test <d alpha, sigma> = <alpha, boundary sigma> for p = 0, 1, 2."""
        for p in (0, 1, 2):
            for _ in range(3):
                form = random_form(r3, p, rng)
                cube = random_affine_cubes(r3, p + 1, 1, rng, radius=0.5)[0]
                assert stokes_residual(form, cube) < 1e-9

    def test_stokes_on_a_curved_square(self, plane):
        """Test Stokes with a non-polynomial cube and form."""
        square = SingularCube(
            unit_box(2), parse_map(["x1 + 0.3*sin(x2)", "x2 + 0.2*x1**2"], 2), plane
        )
        form = GeneratorForm.lam(plane, "exp(x1) * cos(x2)", "x1 * x2")

        assert stokes_residual(form, square) < 1e-9

    def test_stokes_cube_dimension(self, plane):
        """Test that Stokes pairs a p-form with (p+1)-cubes."""
        with pytest.raises(FormError, match="Stokes needs a 2-cube"):
            stokes_residual(
                GeneratorForm.lam(plane, "x1", "x2"), affine_cube(plane, [0, 0], [[1, 0]])
            )

    def test_boundary_of_boundary_pairing(self, r3, rng):
        """Test that a form vanishes on the boundary of a boundary."""
        form = random_form(r3, 1, rng)
        cube = random_affine_cubes(r3, 3, 1, rng)[0]

        assert pair(form, boundary(boundary(cube))).value == 0.0

    def test_d_squared(self, r3, rng):
        """Test <d d alpha, tau> = 0 exactly."""
        for p in (0, 1):
            form = random_form(r3, p, rng)
            tau = random_affine_cubes(r3, p + 2, 1, rng, radius=0.5)[0]
            assert d_squared_value(form, tau) < 1e-12

    def test_chain_rule(self, plane, rng):
        """Test d F(f, g) = F_1(f, g) df + F_2(f, g) dg on segments."""
        outer = parse_map(["sin(x1) * x2**2 + x1"], 2)
        elements = [plane.element(parse_map(["x1*x2"], 2)), plane.coordinate(1)]
        segments = random_affine_cubes(plane, 1, 4, rng, radius=0.5)

        assert chain_rule_residual(outer, elements, segments) < 1e-10

    def test_chain_rule_arity(self, plane):
        """Test that the outer function takes one argument per element."""
        with pytest.raises(FormError, match="scalar on R\\^1"):
            chain_rule_residual(parse_map(["x1*x2"], 2), [plane.coordinate(0)], [])


class TestClassicalPairing:
    def test_agrees_with_generator_pairing(self, r3, rng):
        """Test the coordinate expansion against the generator Jacobian."""
        for p in (1, 2, 3):
            form = random_form(r3, p, rng)
            cube = random_affine_cubes(r3, p, 1, rng, radius=0.5)[0]
            expected = lambda_eval(form, cube).value

            assert classical_pairing(form, cube).value == pytest.approx(
                expected, rel=1e-10, abs=1e-12
            )

    def test_top_degree_is_a_density(self, plane):
        """Test f dx ^ dy against an explicit integral over the square."""
        form = GeneratorForm.lam(plane, "x1**2", "x1", "x2")
        value = classical_pairing(form, identity_cube(plane, unit_box(2))).value

        assert value == pytest.approx(1.0 / 3.0)
        assert np.isfinite(value)
