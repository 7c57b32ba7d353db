"""Bundled group actions with their Hilbert maps."""

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

from ..smooth.parser import parse_expression, parse_map
from ..smooth.smooth_map import SmoothMap
from ..space.fixtures import get_space
from ..utils.errors import FixtureNotFoundError
from .group import FiniteGroupAction, MatrixLike, generate_group
from .hilbert import HilbertMap, OrbitSpaceModel, orbit_pushforward


@dataclass(frozen=True, eq=False)
class ActionFixture:
    name: str
    action: FiniteGroupAction
    hilbert: HilbertMap
    space: str


def build_action(
    name: str,
    ambient_dim: int,
    generators: Sequence[MatrixLike],
    components: Sequence[str],
    relations: Sequence[str] = (),
    inequalities: Sequence[str] = (),
    space: str = "plane",
) -> ActionFixture:
    """Action and Hilbert map from text; image conditions use x1.. for the components."""
    action = generate_group(generators, ambient_dim, name)
    pi = parse_map(list(components), ambient_dim)
    k = pi.output_dim
    hilbert = HilbertMap(
        pi,
        tuple(SmoothMap(k, (parse_expression(r, k),)) for r in relations),
        tuple(SmoothMap(k, (parse_expression(q, k),)) for q in inequalities),
    )
    return ActionFixture(name, action, hilbert, space)


def z2_plane() -> ActionFixture:
    """(x, y) -> (-x, -y) with pi = (x^2, xy, y^2) onto the cone pi_2^2 = pi_1 pi_3."""
    return build_action(
        "Z2",
        2,
        [[[-1, 0], [0, -1]]],
        ["x1**2", "x1*x2", "x2**2"],
        relations=["x2**2 - x1*x3"],
        inequalities=["x1", "x3"],
    )


def trivial_plane() -> ActionFixture:
    return build_action("trivial", 2, [[[1, 0], [0, 1]]], ["x1", "x2"])


def z2_x_squared() -> ActionFixture:
    """Too few invariants: x^2 alone does not separate the Z2-orbits of the plane."""
    return build_action("Z2", 2, [[[-1, 0], [0, -1]]], ["x1**2"], inequalities=["x1"])


def c4_plane() -> ActionFixture:
    """Quarter-turn rotations; pi = (|z|^2, Im z^4 / 4, Re z^4) with z = x + iy."""
    return build_action(
        "C4",
        2,
        [[[0, -1], [1, 0]]],
        ["x1**2 + x2**2", "x1*x2*(x1**2 - x2**2)", "x1**4 - 6*x1**2*x2**2 + x2**4"],
        relations=["x3**2 + 16*x2**2 - x1**4"],
        inequalities=["x1"],
    )


ACTION_FIXTURES: Dict[str, Callable[[], ActionFixture]] = {
    "z2_plane": z2_plane,
    "trivial_plane": trivial_plane,
    "z2_x_squared": z2_x_squared,
    "c4_plane": c4_plane,
}


def action_names() -> List[str]:
    return sorted(ACTION_FIXTURES)


def get_action(name: str) -> ActionFixture:
    factory = ACTION_FIXTURES.get(name)
    if factory is None:
        raise FixtureNotFoundError("action", name, list(ACTION_FIXTURES))
    return factory()


def orbit_model(name: str, rng: np.random.Generator, count: int = 200) -> OrbitSpaceModel:
    """The orbit space of a bundled action, pushed forward from its upstairs space."""
    fixture = get_action(name)
    return orbit_pushforward(
        get_space(fixture.space), fixture.hilbert, fixture.action, rng, count=count
    )
