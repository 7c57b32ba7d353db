"""Test resolving configuration definitions into domain objects."""

from pathlib import Path

import numpy as np
import pytest
from src.core.definitions import DefinitionResolver, space_from_definition
from src.model.config import load_suite_config
from src.utils.errors import FixtureNotFoundError

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


class TestDefinitionResolver:
    def setup_method(self):
        self.config = load_suite_config(CONFIGS / "definitions.yaml")
        self.resolver = DefinitionResolver(self.config.spaces, np.random.default_rng(3))

    def test_user_space(self):
        """Test a space defined in the configuration."""
        space = self.resolver.space("my_variety")

        assert space.name == "my_variety"
        assert space.ambient_dim == 2
        assert space.contains([0.5, 0.0])
        assert not space.contains([0.5, 5.0])

    def test_space_from_definition(self):
        """Test building directly from a definition model."""
        space = space_from_definition(self.config.spaces[0])

        assert len(space.generators) == 2
        assert space.locally_closed

    def test_fixture_space(self):
        """Test that fixture names still resolve."""
        assert self.resolver.space("circle").name == "circle"

    def test_cone(self):
        """Test the orbit-space cone of the plane."""
        cone = self.resolver.space("cone")

        assert cone.ambient_dim == 3
        assert cone.contains([1.0, 1.0, 1.0])

    def test_unknown_space(self):
        """Test the error lists user spaces too."""
        with pytest.raises(FixtureNotFoundError, match="my_variety"):
            self.resolver.space("torus")

    def test_flow_definition(self):
        """Test a flow experiment defined inline."""
        experiment = self.resolver.flow(self.config.flows[1])

        assert experiment.name == "variety_backward"
        assert experiment.t_span == (-10.0, 0.0)
        assert len(experiment.start_points) == 2
        assert experiment.exact is not None

    def test_flow_fixture(self):
        """Test a flow experiment by name."""
        assert self.resolver.flow("singular_variety_backward").name == "singular_variety_backward"

    def test_cover_definition(self):
        """Test a cover defined inline."""
        cover = self.resolver.cover(self.config.covers[1])

        assert cover.name == "line_two_rays"
        assert cover.size == 2
        assert cover.simplices(1) == [(0, 1)]

    def test_action_definition(self):
        """Test an action defined inline."""
        fixture = self.resolver.action(self.config.orbit.action)

        assert fixture.name == "Z2_explicit"
        assert fixture.action.order == 2
        assert fixture.space == "plane"
