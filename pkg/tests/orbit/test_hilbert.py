"""Test Hilbert maps, orbit-space models and their contractions."""

import dataclasses

import numpy as np
import pytest
from src.orbit.fixtures import get_action, orbit_model
from src.orbit.hilbert import (
    build_contraction,
    check_hilbert,
    contraction_equivariance,
    detect_degrees,
    orbit_pushforward,
    separation_failures,
    star_contraction,
)
from src.smooth.parser import parse_map
from src.space.contraction import radial_contraction
from src.space.fixtures import get_space
from src.utils.errors import ContractionError, InvarianceError, SeparationError


class TestCheckHilbert:
    def test_z2_cone(self, plane, rng):
        """Test invariance and the cone relation on samples."""
        z2 = get_action("z2_plane")
        points = plane.sample(100, rng)
        invariance, relation, inequality = check_hilbert(z2.hilbert, z2.action, points)

        assert invariance == 0.0
        assert relation < 1e-12
        assert inequality == 0.0

    def test_c4_relation(self, plane, rng):
        """Test |z|^8 = (Re z^4)^2 + (Im z^4)^2 for the quarter turn."""
        c4 = get_action("c4_plane")
        _, relation, _ = check_hilbert(c4.hilbert, c4.action, plane.sample(50, rng))

        assert relation < 1e-9

    def test_separation_failure(self):
        """Test that x^2 alone cannot tell (1, 2) from (1, -2)."""
        fixture = get_action("z2_x_squared")
        points = np.array([[1.0, 2.0], [1.0, -2.0], [-1.0, -2.0]])
        failures = separation_failures(fixture.hilbert, fixture.action, points)

        assert len(failures) == 2

    def test_detect_degrees(self, plane, rng):
        """Test homogeneity degrees of the invariants."""
        points = plane.sample(20, rng)

        assert detect_degrees(get_action("c4_plane").hilbert.components, points) == (2, 4, 4)
        assert detect_degrees(parse_map(["x1**2 + x2"], 2), points) is None


class TestOrbitPushforward:
    def test_cone(self, rng):
        """Test the orbit space of Z2 on the plane."""
        model = orbit_model("z2_plane", rng, count=100)

        assert model.space.name == "plane/Z2"
        assert model.space.ambient_dim == 3
        assert model.degrees == (2, 2, 2)
        assert model.space.contains([1.0, 2.0, 4.0])
        assert not model.space.contains([1.0, 2.0, 3.0])
        assert not model.space.contains([-1.0, 0.0, 0.0])
        np.testing.assert_allclose(model.project(np.array([[1.0, -2.0]])), [[1.0, -2.0, 4.0]])

    def test_not_separating(self, plane, rng):
        """Test that the push-forward refuses components that merge orbits."""
        fixture = get_action("z2_x_squared")

        with pytest.raises(SeparationError, match="do not separate orbits"):
            orbit_pushforward(
                plane,
                fixture.hilbert,
                fixture.action,
                rng,
                count=10,
                extra_points=np.array([[1.0, 2.0], [1.0, -2.0]]),
            )

    def test_not_invariant(self, plane, rng):
        """Test that components must be invariant."""
        fixture = get_action("z2_plane")
        broken = dataclasses.replace(fixture.hilbert, components=parse_map(["x1", "x2", "x1"], 2))

        with pytest.raises(InvarianceError, match="not Z2-invariant"):
            orbit_pushforward(plane, broken, fixture.action, rng, count=10)


class TestContractions:
    def test_weighted_contraction(self, rng):
        """Test h(t, pi(x)) = pi(t x) on the cone."""
        model = orbit_model("z2_plane", rng, count=100)
        h = build_contraction(model, rng)
        x = np.array([0.8, -0.6])
        expected = model.project((0.5 * x).reshape(1, -1))[0]

        np.testing.assert_allclose(h(0.5, model.project(x.reshape(1, -1))[0]), expected)

    def test_non_homogeneous_components(self, rng):
        """Test that the weighted contraction needs homogeneous components."""
        model = dataclasses.replace(orbit_model("z2_plane", rng, count=50), degrees=None)

        with pytest.raises(ContractionError, match="not homogeneous"):
            build_contraction(model, rng)

    def test_star_contraction_of_the_cone(self, rng):
        """Test that the cone is star-shaped about its apex."""
        model = orbit_model("z2_plane", rng, count=50)
        h = star_contraction(model.space, [0.0, 0.0, 0.0], rng)

        np.testing.assert_allclose(h(0.0, [1.0, 1.0, 1.0]), [0.0, 0.0, 0.0])

    def test_equivariance_of_the_radial_contraction(self, rng):
        """Test h(t, g x) = g h(t, x) for the radial contraction of the plane."""
        z2 = get_action("z2_plane")
        h = radial_contraction(get_space("plane"), [0.0, 0.0], rng)

        assert contraction_equivariance(h, z2.action, get_space("plane").sample(20, rng)) == 0.0
