"""Test samplers and branches."""

import numpy as np
import pytest
from src.smooth.parser import parse_map
from src.space.sampler import Branch, Sampler, box_sampler
from src.utils.errors import DimensionMismatchError


class TestBranch:
    def test_draw_in_range(self, rng):
        """Test that parameters stay in their ranges."""
        branch = Branch(parse_map(["cos(x1)", "sin(x1)"], 1), [(0, np.pi / 2)])

        points = branch.draw(50, rng)

        assert points.shape == (50, 2)
        assert np.all(points >= -1e-12)
        assert np.allclose(np.sum(points**2, axis=1), 1.0)

    def test_range_count(self):
        """Test one range per parameter."""
        with pytest.raises(DimensionMismatchError, match="2 parameters but 1 ranges"):
            Branch(parse_map(["x1", "x2"], 2), [(0, 1)])


class TestSampler:
    def test_fixed_points_first(self, rng):
        """Test that singular points always appear, ahead of random draws."""
        sampler = box_sampler([(-1, 1), (-1, 1)], points=[[0, 0]])

        points = sampler.sample(10, rng)

        assert points.shape == (11, 2)
        assert points[0].tolist() == [0.0, 0.0]

    def test_draws_spread_over_branches(self, rng):
        """Test that draws are divided between branches."""
        upper = Branch(parse_map(["x1", "1"], 1), [(-1, 1)])
        lower = Branch(parse_map(["x1", "-1"], 1), [(-1, 1)])

        points = Sampler(2, (upper, lower)).sample(7, rng)

        assert np.sum(points[:, 1] == 1.0) == 4
        assert np.sum(points[:, 1] == -1.0) == 3

    def test_reproducible(self):
        """Test that equal seeds sample equal points."""
        sampler = box_sampler([(0, 1)])

        a = sampler.sample(5, np.random.default_rng(9))
        b = sampler.sample(5, np.random.default_rng(9))

        assert np.array_equal(a, b)

    def test_branch_dimension(self):
        """Test that branches map into the ambient space."""
        branch = Branch(parse_map(["x1"], 1), [(0, 1)])

        with pytest.raises(DimensionMismatchError, match="expected R\\^2"):
            Sampler(2, (branch,))

    def test_product_with_interval(self, rng):
        """Test the sampler of I x S."""
        sampler = box_sampler([(2, 3)], points=[[5.0]]).product_with_interval()

        points = sampler.sample(20, rng)

        assert sampler.ambient_dim == 2
        assert points[:3].tolist() == [[0.0, 5.0], [0.5, 5.0], [1.0, 5.0]]
        assert np.all((points[3:, 0] >= 0.0) & (points[3:, 0] <= 1.0))
        assert np.all((points[3:, 1] >= 2.0) & (points[3:, 1] <= 3.0))
