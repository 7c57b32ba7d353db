"""Test generator forms, d, wedge and pullback."""

import pytest
from src.chains.cube import affine_cube, identity_cube, map_cube, unit_box
from src.forms.forms import GeneratorForm, exterior_derivative, pullback_form, wedge
from src.forms.pairing import lambda_eval
from src.smooth.parser import parse_map
from src.utils.errors import FormError, MembershipError


class TestGeneratorForm:
    def test_lam(self, plane):
        """Test the single-term constructor."""
        form = GeneratorForm.lam(plane, "x1", "x2", coefficient=2.0)

        assert form.degree == 1
        assert str(form) == "2 * x1 d(x2)"

    def test_from_terms_needs_degree_when_empty(self, plane):
        """Test that an empty sum needs an explicit degree."""
        with pytest.raises(FormError, match="empty form"):
            GeneratorForm.from_terms(plane, [])

        assert GeneratorForm.from_terms(plane, [], degree=2).is_zero()

    def test_term_length(self, plane):
        """Test that every term of a p-form has p + 1 entries."""
        with pytest.raises(FormError, match="needs 3 functions per term"):
            GeneratorForm.from_terms(plane, [(1.0, ("x1", "x2"))], degree=2)

    def test_sum_of_different_degrees(self, plane):
        """Test that only forms of equal degree add."""
        with pytest.raises(FormError, match="degree 1 and 0"):
            GeneratorForm.lam(plane, "x1", "x2") + GeneratorForm.lam(plane, "x1")

    def test_elements_of_another_space(self, plane, circle):
        """Test that form entries must belong to the form's space."""
        with pytest.raises(FormError, match="Element of circle"):
            GeneratorForm.lam(plane, circle.coordinate(0))

    def test_linear_combination(self, plane):
        """Test a - 2b as a three-term pairing."""
        square = identity_cube(plane, unit_box(2))
        a = GeneratorForm.lam(plane, 1, "x1", "x2")
        b = GeneratorForm.lam(plane, "x1", "x1", "x2")

        assert lambda_eval(a - 2.0 * b, square).value == pytest.approx(1.0 - 2.0 * 0.5)


class TestOperators:
    def test_exterior_derivative_prepends_one(self, plane):
        """Test d lambda(f, g) = lambda(1, f, g)."""
        d_form = exterior_derivative(GeneratorForm.lam(plane, "x1", "x2"))

        assert d_form.degree == 2
        assert str(d_form.terms[0].functions[0]) == "1"

    def test_wedge_of_coordinate_differentials(self, plane):
        """Test that dx ^ dy integrates to the area."""
        dx = GeneratorForm.lam(plane, 1, "x1")
        dy = GeneratorForm.lam(plane, 1, "x2")
        square = affine_cube(plane, [0.0, 0.0], [[2.0, 0.0], [0.0, 3.0]])

        assert wedge(dx, dy).degree == 2
        assert lambda_eval(wedge(dx, dy), square).value == pytest.approx(6.0)
        assert lambda_eval(wedge(dy, dx), square).value == pytest.approx(-6.0)

    def test_pullback_is_pairing_with_pushed_cube(self, plane):
        """Test <F* alpha, sigma> = <alpha, F o sigma>."""
        f = parse_map(["x1*x2", "x1 + x2**2"], 2)
        alpha = GeneratorForm.lam(plane, "x1**2", "x2")
        segment = affine_cube(plane, [0.1, 0.2], [[0.5, 0.3]])
        pushed = map_cube(f, segment, plane)

        pulled = pullback_form(f, alpha, plane)

        assert lambda_eval(pulled, segment).value == pytest.approx(
            lambda_eval(alpha, pushed).value, rel=1e-12
        )

    def test_pullback_checks_the_image(self, plane, circle):
        """Test that F must send the source into the form's space."""
        alpha = GeneratorForm.lam(circle, "x1", "x2")

        with pytest.raises(MembershipError, match="outside circle"):
            pullback_form(parse_map(["x1", "x2"], 2), alpha, plane)
