"""Test the Cech complex, its coboundaries and cohomology dimensions."""

import pytest
from src.cech.complex import (
    build_complex,
    coboundary_matrix,
    coboundary_squared,
    cohomology_dims,
    nerve_components,
)
from src.cech.cover import make_cover
from src.cech.fixtures import EXPECTED_DIMS, get_cover
from src.space.fixtures import get_space
from src.utils.errors import CoverError


class TestCoboundary:
    def test_edge_matrix(self):
        """Test (delta f)(0, 1) = f(1) - f(0)."""
        matrix = coboundary_matrix(((0, 1),), ((0,), (1,)))

        assert matrix.tolist() == [[-1, 1]]

    def test_triangle(self):
        """Test delta^1 delta^0 = 0 on a full triangle."""
        vertices = ((0,), (1,), (2,))
        edges = ((0, 1), (0, 2), (1, 2))
        product = coboundary_matrix(((0, 1, 2),), edges) * coboundary_matrix(edges, vertices)

        assert all(v == 0 for v in product)


class TestCohomology:
    @pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
    def test_bundled_covers(self, name):
        """Test the dimensions of every bundled cover."""
        cx = build_complex(get_cover(name))

        assert cohomology_dims(cx) == EXPECTED_DIMS[name]
        assert coboundary_squared(cx) == 0

    def test_circle_nerve(self):
        """Test that the four-arc nerve is a connected cycle."""
        cx = build_complex(get_cover("circle_four_arcs"))

        assert cx.cochain_dim(0) == 4
        assert cx.cochain_dim(1) == 4
        assert nerve_components(cx) == 1

    def test_disjoint_regions(self):
        """Test two regions without overlap: H^0 has dimension 2."""
        interval = get_space("interval")
        cover = make_cover("split", interval, {"a": "x1 < 0", "b": "x1 >= 0"}, max_degree=1)
        cx = build_complex(cover)

        assert cohomology_dims(cx) == [2, 0]
        assert nerve_components(cx) == 2

    def test_face_flagged_empty(self, plane):
        """Test that a nonempty triple cannot have an empty pair."""
        cover = make_cover(
            "bad",
            plane,
            {"a": "x1 < 1", "b": "x1 > -1", "c": "x2 > 0"},
            [((0, 2), "contractible"), ((1, 2), "contractible"), ((0, 1, 2), "contractible")],
        )

        with pytest.raises(CoverError, match="face \\[0, 1\\] is flagged empty"):
            build_complex(cover)

    def test_negative_degree(self):
        """Test the degree bound."""
        with pytest.raises(CoverError, match="non-negative"):
            build_complex(get_cover("plane_halves"), max_degree=-1)
