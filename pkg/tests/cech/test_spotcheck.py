"""Test the de Rham spot-check against Cech dimensions."""

import numpy as np
import pytest
from src.cech.fixtures import cover_names, get_cover
from src.cech.spotcheck import de_rham_spotcheck, spotcheck_names
from src.utils.errors import FixtureNotFoundError


@pytest.mark.slow
class TestDeRhamSpotCheck:
    @pytest.mark.parametrize("space", ["plane", "interval", "circle", "cone"])
    def test_consistent(self, space):
        """Test that every bundled space behaves as its H^1 predicts."""
        report = de_rham_spotcheck(space, np.random.default_rng(21))

        assert report.checks
        assert report.consistent

    def test_circle_period(self):
        """Test that the angular form has period 2 pi on the circle."""
        report = de_rham_spotcheck("circle", np.random.default_rng(21))
        periods = [check for check in report.checks if check.kind == "period"]

        assert report.dims == [1, 1]
        assert periods[0].value == pytest.approx(2.0 * np.pi)

    def test_other_cover(self):
        """Test a spot-check driven by an explicit cover."""
        report = de_rham_spotcheck(
            "interval", np.random.default_rng(21), cover=get_cover("interval_three_sets")
        )

        assert report.cover == "interval_three_sets"
        assert report.dims == [1, 0]


class TestSpotCheckNames:
    def test_names(self):
        """Test the registered spaces and covers."""
        assert list(spotcheck_names()) == ["circle", "cone", "interval", "plane"]
        assert "cone_two_charts" in cover_names()

    def test_unknown_space(self):
        """Test the error for a missing space."""
        with pytest.raises(FixtureNotFoundError, match="spot-check space"):
            de_rham_spotcheck("torus", np.random.default_rng(0))
