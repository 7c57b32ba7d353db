"""Bundled spaces used by the verification suites."""

import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..smooth.parser import parse_map
from ..utils.errors import FixtureNotFoundError
from .model import SpaceModel, coordinate_generators, make_space
from .predicates import parse_predicate
from .sampler import Branch, Sampler

TWO_PI = 2.0 * math.pi


def build_space(
    name: str,
    ambient_dim: int,
    membership: Optional[str],
    branches: Sequence[Tuple[Sequence[str], Sequence[Tuple[float, float]]]],
    points: Sequence[Sequence[float]] = (),
    generators: Optional[Sequence[str]] = None,
    locally_closed: bool = True,
) -> SpaceModel:
    """Build a space from text expressions; branch maps use x1.. for their parameters."""
    sampler_branches = tuple(
        Branch(parse_map(list(exprs), len(ranges)), tuple(ranges)) for exprs, ranges in branches
    )
    fixed = np.asarray(points, dtype=float).reshape(-1, ambient_dim) if len(points) else None
    sampler = Sampler(
        ambient_dim, sampler_branches, fixed if fixed is not None else np.zeros((0, ambient_dim))
    )
    if generators is None:
        gens = coordinate_generators(ambient_dim)
    else:
        gens = tuple(parse_map([text], ambient_dim) for text in generators)
    return make_space(
        ambient_dim,
        parse_predicate(membership, ambient_dim),
        sampler,
        gens,
        name=name,
        locally_closed=locally_closed,
    )


def plane() -> SpaceModel:
    return build_space("plane", 2, None, [(["x1", "x2"], [(-2.0, 2.0), (-2.0, 2.0)])], [[0, 0]])


def line() -> SpaceModel:
    return build_space("line", 1, None, [(["x1"], [(-2.0, 2.0)])], [[0]])


def interval() -> SpaceModel:
    return build_space("interval", 1, "-1 <= x1 <= 1", [(["x1"], [(-1.0, 1.0)])], [[-1], [0], [1]])


def circle() -> SpaceModel:
    return build_space(
        "circle",
        2,
        "x1**2 + x2**2 == 1",
        [(["cos(x1)", "sin(x1)"], [(0.0, TWO_PI)])],
        [[1, 0], [0, 1], [-1, 0], [0, -1]],
    )


def euclidean(n: int, half_width: float = 2.0) -> SpaceModel:
    """R^n sampled on the cube [-half_width, half_width]^n."""
    coords = [f"x{i}" for i in range(1, n + 1)]
    return build_space(f"R{n}", n, None, [(coords, [(-half_width, half_width)] * n)], [[0.0] * n])


def r3() -> SpaceModel:
    return euclidean(3)


def point() -> SpaceModel:
    sampler = Sampler(0, (), np.zeros((1, 0)))
    return make_space(0, None, sampler, [parse_map(["1"], 0)], name="point")


def singular_variety() -> SpaceModel:
    """{y^2 - h(x) y = 0} with h(x) = e^{-1/x^2}: the graph of h united with the x-axis."""
    return build_space(
        "singular_variety",
        2,
        "x2**2 - bump(x1)*x2 == 0",
        [(["x1", "bump(x1)"], [(-2.0, 2.0)]), (["x1", "0"], [(-2.0, 2.0)])],
        [[0, 0], [1, math.exp(-1.0)]],
    )


def disk_with_axis() -> SpaceModel:
    """Open disk of radius 1 about (0, 1) together with the x-axis; not locally closed."""
    return build_space(
        "disk_with_axis",
        2,
        "x1**2 + (1 - x2)**2 < 1 or x2 == 0",
        [
            (["x1*cos(x2)", "1 + x1*sin(x2)"], [(0.0, 0.999), (0.0, TWO_PI)]),
            (["x1", "0"], [(-2.0, 2.0)]),
        ],
        [[0, 0]],
        locally_closed=False,
    )


SPACE_FIXTURES: Dict[str, Callable[[], SpaceModel]] = {
    "plane": plane,
    "line": line,
    "interval": interval,
    "circle": circle,
    "point": point,
    "r3": r3,
    "singular_variety": singular_variety,
    "disk_with_axis": disk_with_axis,
}


def space_names() -> List[str]:
    return sorted(SPACE_FIXTURES)


def get_space(name: str) -> SpaceModel:
    factory = SPACE_FIXTURES.get(name)
    if factory is None:
        raise FixtureNotFoundError("space", name, list(SPACE_FIXTURES))
    return factory()
