"""Test the prism pullback, the homotopy identity and Poincare antiderivatives."""

import numpy as np
import pytest
from src.chains.cube import point_cube, random_affine_cubes
from src.forms.forms import GeneratorForm, exterior_derivative
from src.forms.pairing import lambda_eval
from src.forms.prism import (
    antiderivative_defect,
    closedness_residual,
    constancy_check,
    homotopy_identity_defect,
    poincare_antiderivative,
    prism_pullback,
    split_form,
)
from src.space.contraction import radial_contraction
from src.space.model import product_with_interval
from src.utils.errors import FormError, NormalizationError, NotClosedError


class TestSplitForm:
    def test_split_preserves_pairings(self, plane, rng):
        """Test that the coordinate rewrite pairs like the original form."""
        product = product_with_interval(plane)
        form = GeneratorForm.lam(product, "x1 * x2", "x1 * x3 + x2", "sin(x3)")
        cube = random_affine_cubes(product, 2, 1, rng, radius=0.2, center=[0.5, 0.0, 0.0])[0]

        assert lambda_eval(split_form(form), cube).value == pytest.approx(
            lambda_eval(form, cube).value, rel=1e-10, abs=1e-12
        )

    def test_functions_are_unchanged(self, plane):
        """Test that 0-forms are already split."""
        form = GeneratorForm.lam(plane, "x1")

        assert split_form(form) is form


class TestPrismPullback:
    def test_dt_term_integrates_over_the_fiber(self, plane):
        """Test K*(t x2 dt) = (x1 / 2) as a function on the plane."""
        product = product_with_interval(plane)
        form = GeneratorForm.lam(product, "x1 * x2", "x1")
        beta = prism_pullback(form)

        assert beta.degree == 0
        assert beta.space is plane
        value = lambda_eval(beta, point_cube(plane, [3.0, 5.0])).value
        assert value == pytest.approx(1.5)

    def test_terms_without_dt_vanish(self, plane):
        """Test that K* kills forms without a dt factor."""
        product = product_with_interval(plane)

        assert prism_pullback(GeneratorForm.lam(product, "x2", "x3")).is_zero()

    def test_requires_split_shape(self, plane):
        """Test that t-dependent differentials must be split first."""
        product = product_with_interval(plane)
        form = GeneratorForm.lam(product, "1", "x1 * x2")

        with pytest.raises(NormalizationError, match="split shape"):
            prism_pullback(form)

    def test_requires_a_product(self, plane):
        """Test that K* lives on I x S."""
        with pytest.raises(FormError, match="not a product"):
            prism_pullback(GeneratorForm.lam(plane, "x1", "x2"))


class TestHomotopyIdentity:
    @pytest.mark.parametrize("p", [0, 1, 2])
    def test_defect_vanishes(self, plane, rng, p):
        """Test (dK* + K*d) omega = u1* omega - u0* omega on cubes of degree p."""
        product = product_with_interval(plane)
        entries = ["x1**2 * x2 + x3", "x1 * x3 - x2**2", "x2 * x3 + x1"][: p + 1]
        form = GeneratorForm.lam(product, *entries)
        if p == 0:
            cube = point_cube(plane, [0.4, -0.3])
        else:
            cube = random_affine_cubes(plane, p, 1, rng, radius=0.5)[0]

        assert homotopy_identity_defect(form, cube) < 1e-10

    def test_requires_a_product(self, plane):
        """Test that the identity needs a form on I x S."""
        with pytest.raises(FormError, match="not a product"):
            homotopy_identity_defect(GeneratorForm.lam(plane, "x1"), point_cube(plane, [0, 0]))


class TestPoincare:
    def setup_method(self):
        self.rng = np.random.default_rng(7)

    def test_exact_form(self, plane):
        """Test that d beta reproduces an exact 1-form and beta is f - f(0)."""
        contraction = radial_contraction(plane, [0.0, 0.0], self.rng)
        alpha = GeneratorForm.lam(plane, 1, "x1**2 * x2 + x2")
        certificate = random_affine_cubes(plane, 2, 4, self.rng)
        result = poincare_antiderivative(alpha, contraction, certificate)
        segments = random_affine_cubes(plane, 1, 4, self.rng)

        assert result.closedness_residual < 1e-12
        assert antiderivative_defect(alpha, result.beta, segments) < 1e-10
        value = lambda_eval(result.beta, point_cube(plane, [1.0, 2.0])).value
        assert value == pytest.approx(4.0)

    def test_closed_two_form(self, plane):
        """Test a top-degree form, which is always closed."""
        contraction = radial_contraction(plane, [0.0, 0.0], self.rng)
        alpha = GeneratorForm.lam(plane, "x1 * x2 + 1", "x1", "x2")
        certificate = random_affine_cubes(plane, 3, 1, self.rng)
        result = poincare_antiderivative(alpha, contraction, certificate)
        squares = random_affine_cubes(plane, 2, 3, self.rng)

        assert antiderivative_defect(alpha, result.beta, squares) < 1e-10

    def test_not_closed(self, plane):
        """Test that x dy is refused."""
        contraction = radial_contraction(plane, [0.0, 0.0], self.rng)
        alpha = GeneratorForm.lam(plane, "x1", "x2")
        certificate = random_affine_cubes(plane, 2, 2, self.rng)

        with pytest.raises(NotClosedError, match="not closed"):
            poincare_antiderivative(alpha, contraction, certificate)

    def test_degree_and_certificate(self, plane):
        """Test the preconditions of the construction."""
        contraction = radial_contraction(plane, [0.0, 0.0], self.rng)

        with pytest.raises(FormError, match="degree at least 1"):
            poincare_antiderivative(GeneratorForm.lam(plane, "x1"), contraction, [])
        with pytest.raises(FormError, match="certificate"):
            poincare_antiderivative(GeneratorForm.lam(plane, 1, "x1"), contraction, [])

    def test_closedness_residual(self, plane):
        """Test max |<d alpha, tau>| for an exact and a non-closed form."""
        squares = random_affine_cubes(plane, 2, 3, self.rng)

        assert closedness_residual(GeneratorForm.lam(plane, 1, "x1*x2"), squares) == 0.0
        assert closedness_residual(GeneratorForm.lam(plane, "x1", "x2"), squares) > 0.0


class TestConstancy:
    def test_constant_function(self, plane):
        """Test that a constant has vanishing differential, spread and prism residual."""
        rng = np.random.default_rng(3)
        contraction = radial_contraction(plane, [0.0, 0.0], rng)
        report = constancy_check(
            plane.element(3.0),
            contraction,
            random_affine_cubes(plane, 1, 3, rng),
            plane.sample(5, rng),
        )

        assert report.closedness_residual == 0.0
        assert report.spread == 0.0
        assert report.prism_residual == 0.0

    def test_non_constant_function(self, plane):
        """Test that the prism reproduces f(x) - f(x0) even when f varies."""
        rng = np.random.default_rng(3)
        contraction = radial_contraction(plane, [0.0, 0.0], rng)
        f = plane.coordinate(0) * plane.coordinate(1)
        report = constancy_check(
            f, contraction, random_affine_cubes(plane, 1, 3, rng), plane.sample(5, rng)
        )

        assert report.spread > 0.0
        assert report.prism_residual < 1e-12
        assert exterior_derivative(GeneratorForm.lam(plane, f)).degree == 1
