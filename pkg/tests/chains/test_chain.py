"""Test chains, the boundary operator and the prism identity."""

import pytest
from src.chains.chain import (
    CubicalChain,
    boundary,
    homotopy_defect,
    inclusion_chain,
    prism_chain,
    pushforward_chain,
)
from src.chains.cube import (
    affine_cube,
    identity_cube,
    point_cube,
    random_affine_cubes,
    unit_box,
)
from src.smooth.parser import parse_map
from src.space.fixtures import euclidean
from src.utils.errors import ChainError


class TestCubicalChain:
    def test_merge(self, plane):
        """Test that equal cubes combine and cancelling terms vanish."""
        cube = affine_cube(plane, [0.0, 0.0], [[1.0, 0.0]])
        chain = CubicalChain.of([(2, cube), (-2, cube)])

        assert chain.is_empty()
        assert len(CubicalChain.of([(1, cube), (3, cube)])) == 1

    def test_arithmetic(self, plane):
        """Test sums, differences and integer multiples."""
        a = CubicalChain.from_cube(affine_cube(plane, [0.0, 0.0], [[1.0, 0.0]]))
        b = CubicalChain.from_cube(affine_cube(plane, [0.0, 0.0], [[0.0, 1.0]]))

        assert len(a + b) == 2
        assert (a - a).is_empty()
        assert (3 * a).terms[0][0] == 3
        assert (a + b).degrees() == (1,)

    def test_describe(self, plane):
        """Test the signed text form of a chain."""
        chain = -CubicalChain.from_cube(point_cube(plane, [1.0, 2.0]))

        assert chain.describe()[0].startswith("-1 ")


class TestBoundary:
    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_boundary_squared_identity_cubes(self, p):
        """Test that the boundary of a boundary is empty on unit cubes."""
        cube = identity_cube(euclidean(p), unit_box(p))

        assert boundary(boundary(cube)).is_empty()

    def test_boundary_squared_random_cubes(self, r3, rng):
        """Test dd = 0 on affine cubes of several dimensions."""
        for p in (2, 3):
            for cube in random_affine_cubes(r3, p, 3, rng):
                assert boundary(boundary(cube)).is_empty()

    def test_boundary_of_segment(self, plane):
        """Test d[a, b] = b - a."""
        segment = affine_cube(plane, [0.0, 0.0], [[1.0, 2.0]])
        ends = boundary(segment)

        assert len(ends) == 2
        assert sorted(c for c, _ in ends) == [-1, 1]

    def test_boundary_of_point(self, plane):
        """Test that 0-cubes have no boundary."""
        with pytest.raises(ChainError, match="0-cube"):
            boundary(point_cube(plane, [0.0, 0.0]))


class TestHomotopy:
    @pytest.mark.parametrize("p", [0, 1, 2])
    def test_prism_identity(self, plane, rng, p):
        """Test dK + Kd = u1 - u0 on cubes of degree 0, 1 and 2."""
        if p == 0:
            cube = point_cube(plane, [0.3, -0.2])
        else:
            cube = random_affine_cubes(plane, p, 1, rng)[0]

        assert homotopy_defect(cube).is_empty()

    def test_chain_operators(self, plane):
        """Test the lifted operators on a chain with two terms."""
        a = affine_cube(plane, [0.0, 0.0], [[1.0, 0.0]])
        b = affine_cube(plane, [0.0, 1.0], [[1.0, 0.0]])
        chain = CubicalChain.of([(1, a), (-1, b)])

        assert len(prism_chain(chain)) == 2
        assert len(inclusion_chain(0, chain)) == 2
        assert prism_chain(chain).degrees() == (2,)

    def test_pushforward(self, plane):
        """Test F_* on a chain, with cancellation when images coincide."""
        a = affine_cube(plane, [0.0, 1.0], [[1.0, 0.0]])
        b = affine_cube(plane, [0.0, -1.0], [[1.0, 0.0]])
        fold = parse_map(["x1", "x2**2"], 2)

        assert pushforward_chain(fold, CubicalChain.of([(1, a), (-1, b)]), plane).is_empty()
