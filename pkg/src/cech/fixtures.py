"""Bundled good covers, two per space."""

from typing import Callable, Dict, List, Optional

import numpy as np

from ..orbit.fixtures import orbit_model
from ..space.fixtures import get_space
from ..space.model import SpaceModel
from ..utils.errors import FixtureNotFoundError
from .cover import Cover, all_contractible, make_cover

CONE_GRAPH_RADIUS = 1.0


def cone_space(rng: Optional[np.random.Generator] = None) -> SpaceModel:
    """R^2/Z2 as the cone pi_2^2 = pi_1 pi_3 in R^3."""
    return orbit_model("z2_plane", rng if rng is not None else np.random.default_rng(0)).space


def plane_halves() -> Cover:
    return make_cover(
        "plane_halves",
        get_space("plane"),
        {"left": "x1 < 1", "right": "x1 > -1"},
        all_contractible(2),
    )


def plane_quadrants() -> Cover:
    return make_cover(
        "plane_quadrants",
        get_space("plane"),
        {
            "ne": "x1 > -1 and x2 > -1",
            "nw": "x1 < 1 and x2 > -1",
            "se": "x1 > -1 and x2 < 1",
            "sw": "x1 < 1 and x2 < 1",
        },
        all_contractible(4),
    )


def circle_three_arcs() -> Cover:
    """Arcs about the directions 90, 210 and 330 degrees; no point lies in all three."""
    return make_cover(
        "circle_three_arcs",
        get_space("circle"),
        {
            "top": "x2 > 0.17",
            "lower_left": "-0.8660254037844386*x1 - 0.5*x2 > 0.17",
            "lower_right": "0.8660254037844386*x1 - 0.5*x2 > 0.17",
        },
        [((0, 1), "contractible"), ((0, 2), "contractible"), ((1, 2), "contractible")],
        max_degree=1,
    )


def circle_four_arcs() -> Cover:
    return make_cover(
        "circle_four_arcs",
        get_space("circle"),
        {"east": "x1 > 0.5", "north": "x2 > 0.5", "west": "-x1 > 0.5", "south": "-x2 > 0.5"},
        [((i, j), "contractible") for i, j in ((0, 1), (1, 2), (2, 3), (0, 3))],
        max_degree=1,
    )


def interval_two_sets() -> Cover:
    return make_cover(
        "interval_two_sets",
        get_space("interval"),
        {"left": "x1 < 0.6", "right": "x1 > 0.4"},
        all_contractible(2),
        max_degree=1,
    )


def interval_three_sets() -> Cover:
    return make_cover(
        "interval_three_sets",
        get_space("interval"),
        {"left": "x1 < -0.2", "middle": "-0.4 < x1 < 0.4", "right": "x1 > 0.2"},
        [((0, 1), "contractible"), ((1, 2), "contractible")],
        max_degree=1,
    )


def cone_single_chart() -> Cover:
    return make_cover(
        "cone_single_chart",
        cone_space(),
        {"cone": "x1 >= 0"},
        max_degree=1,
        graph_radius=CONE_GRAPH_RADIUS,
    )


def cone_two_charts() -> Cover:
    """Split by pi_1 = x^2; the overlap is the image of two strips swapped by Z2."""
    return make_cover(
        "cone_two_charts",
        cone_space(),
        {"inner": "x1 < 2", "outer": "x1 > 0.5"},
        all_contractible(2),
        max_degree=1,
        graph_radius=CONE_GRAPH_RADIUS,
    )


COVER_FIXTURES: Dict[str, Callable[[], Cover]] = {
    "plane_halves": plane_halves,
    "plane_quadrants": plane_quadrants,
    "circle_three_arcs": circle_three_arcs,
    "circle_four_arcs": circle_four_arcs,
    "interval_two_sets": interval_two_sets,
    "interval_three_sets": interval_three_sets,
    "cone_single_chart": cone_single_chart,
    "cone_two_charts": cone_two_charts,
}

# Dimensions H^0, H^1, ... expected on each bundled space.
EXPECTED_DIMS: Dict[str, List[int]] = {
    "plane_halves": [1, 0, 0],
    "plane_quadrants": [1, 0, 0],
    "circle_three_arcs": [1, 1],
    "circle_four_arcs": [1, 1],
    "interval_two_sets": [1, 0],
    "interval_three_sets": [1, 0],
    "cone_single_chart": [1, 0],
    "cone_two_charts": [1, 0],
}


def cover_names() -> List[str]:
    return sorted(COVER_FIXTURES)


def get_cover(name: str) -> Cover:
    factory = COVER_FIXTURES.get(name)
    if factory is None:
        raise FixtureNotFoundError("cover", name, list(COVER_FIXTURES))
    return factory()
