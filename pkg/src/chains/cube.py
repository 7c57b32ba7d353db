"""Boxes and singular cubes."""

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..smooth.nodes import Const, Coord, Node
from ..smooth.smooth_map import SmoothMap, compose, identity, linear_map, projection
from ..space.model import SpaceModel, product_with_interval
from ..utils.errors import ChainError, DimensionMismatchError, MembershipError

# Grid fractions per axis: both ends and an irrational interior point.
GRID_FRACTIONS = (0.0, (3.0 - 5.0**0.5) / 2.0, 1.0)


@dataclass(frozen=True)
class Box:
    """Axis-parallel box prod_i [A_i^-, A_i^+]; the empty product is the point R^0."""

    bounds: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        for i, (lo, hi) in enumerate(bounds, start=1):
            if lo > hi:
                raise ChainError(f"Box axis {i} has lower bound {lo} above upper bound {hi}")
        object.__setattr__(self, "bounds", bounds)

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def delete_axis(self, i: int) -> "Box":
        """Drop axis i (1-based)."""
        return Box(self.bounds[: i - 1] + self.bounds[i:])

    def with_unit_interval(self) -> "Box":
        return Box(((0.0, 1.0),) + self.bounds)

    def grid(self) -> np.ndarray:
        """Deterministic sample grid used for extensional comparison of cubes."""
        if self.dim == 0:
            return np.zeros((1, 0))
        axes = [[lo + f * (hi - lo) for f in GRID_FRACTIONS] for lo, hi in self.bounds]
        return np.array(list(cartesian(*axes)), dtype=float)

    def __str__(self) -> str:
        if self.dim == 0:
            return "R^0"
        return " x ".join(f"[{lo:g}, {hi:g}]" for lo, hi in self.bounds)


def unit_box(p: int) -> Box:
    return Box(((0.0, 1.0),) * p)


@dataclass(frozen=True, eq=False)
class SingularCube:
    """sigma = f restricted to a box, with f smooth on an open neighbourhood of it."""

    box: Box
    representative: SmoothMap
    space: SpaceModel

    def __post_init__(self):
        if self.representative.input_dim != self.box.dim:
            raise DimensionMismatchError(
                f"Cube representative takes {self.representative.input_dim} arguments "
                f"but the box has dimension {self.box.dim}"
            )
        if self.representative.output_dim != self.space.ambient_dim:
            raise DimensionMismatchError(
                f"Cube maps into R^{self.representative.output_dim}, "
                f"{self.space.name} lives in R^{self.space.ambient_dim}"
            )

    @property
    def dim(self) -> int:
        return self.box.dim

    @cached_property
    def grid_values(self) -> np.ndarray:
        return self.representative.evaluate_batch(self.box.grid())

    def validate(self) -> "SingularCube":
        """Check that the grid points of the box land in the space."""
        images = self.grid_values
        inside = self.space.membership.contains(images, self.space.tolerance)
        if not np.all(inside):
            bad = images[~inside][0]
            raise MembershipError(
                f"Cube {self} reaches {np.array2string(bad, precision=6)} outside {self.space.name}"
            )
        return self

    def same_map(self, other: "SingularCube", tol: float = 1e-12) -> bool:
        """Equal boxes, same space and pointwise-equal maps on the grid."""
        if self.box != other.box or not self.space.same_as(other.space):
            return False
        return bool(np.max(np.abs(self.grid_values - other.grid_values), initial=0.0) <= tol)

    def sort_key(self) -> Tuple:
        return (self.dim, self.box.bounds, str(self.representative))

    def __str__(self) -> str:
        return f"{self.representative} on {self.box}"


def singular_cube(
    box: Box, representative: SmoothMap, space: SpaceModel, validate: bool = True
) -> SingularCube:
    cube = SingularCube(box, representative, space)
    return cube.validate() if validate else cube


def identity_cube(space: SpaceModel, box: Box) -> SingularCube:
    """The inclusion of a box of R^n into an n-dimensional space."""
    return singular_cube(box, identity(space.ambient_dim), space)


def point_cube(space: SpaceModel, x: Sequence[float]) -> SingularCube:
    components = tuple(Const(float(v)) for v in x)
    return singular_cube(Box(), SmoothMap(0, components), space)


def face(cube: SingularCube, i: int, sign: int) -> SingularCube:
    """sigma o phi_i^{+/-}: freeze axis i (1-based) at its upper (+1) or lower (-1) bound."""
    p = cube.dim
    if p == 0:
        raise ChainError("A 0-cube has no faces")
    if not 1 <= i <= p:
        raise ChainError(f"Face index {i} out of range 1..{p}")
    if sign not in (1, -1):
        raise ChainError(f"Face sign must be +1 or -1, got {sign}")
    lo, hi = cube.box.bounds[i - 1]
    frozen = Const(hi if sign > 0 else lo)
    inner: Tuple[Node, ...] = tuple(
        Coord(a) if a < i - 1 else frozen if a == i - 1 else Coord(a - 1) for a in range(p)
    )
    phi = SmoothMap(p - 1, inner)
    return SingularCube(cube.box.delete_axis(i), compose(cube.representative, phi), cube.space)


def prism(cube: SingularCube) -> SingularCube:
    """K(sigma)(t, s) = (t, sigma(s)) on [0, 1] x box, into I x S."""
    p = cube.dim
    tail = compose(cube.representative, projection(range(1, p + 1), p + 1))
    rep = SmoothMap(p + 1, (Coord(0),) + tail.components)
    return SingularCube(cube.box.with_unit_interval(), rep, product_with_interval(cube.space))


def endpoint_inclusion(i: int, cube: SingularCube) -> SingularCube:
    """u_i o sigma: x -> (i, sigma(x)) into I x S."""
    if i not in (0, 1):
        raise ChainError(f"Endpoint inclusion index must be 0 or 1, got {i}")
    rep = SmoothMap(cube.dim, (Const(float(i)),) + cube.representative.components)
    return SingularCube(cube.box, rep, product_with_interval(cube.space))


def map_cube(f: SmoothMap, cube: SingularCube, target: SpaceModel) -> SingularCube:
    """F o sigma as a cube of the target space."""
    return singular_cube(cube.box, compose(f, cube.representative), target)


def affine_cube(
    space: SpaceModel,
    origin: Sequence[float],
    edges: Sequence[Sequence[float]],
    validate: bool = True,
) -> SingularCube:
    """t -> origin + sum_i t_i e_i on the unit box, one edge vector per axis."""
    base = np.asarray(origin, dtype=float).reshape(-1)
    vectors = np.asarray(edges, dtype=float).reshape(len(edges), base.size)
    offset = SmoothMap(vectors.shape[0], tuple(Const(float(v)) for v in base))
    if vectors.shape[0] == 0:
        return singular_cube(Box(), offset, space, validate)
    rep = offset + linear_map(vectors.T)
    return singular_cube(unit_box(vectors.shape[0]), rep, space, validate)


def random_affine_cubes(
    space: SpaceModel,
    p: int,
    count: int,
    rng: np.random.Generator,
    radius: float = 1.0,
    center: Optional[Sequence[float]] = None,
) -> List[SingularCube]:
    """Affine p-cubes with origin within ``radius`` of the center and edges up to radius / 2."""
    n = space.ambient_dim
    middle = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    cubes = []
    for _ in range(count):
        origin = middle + rng.uniform(-radius, radius, size=n)
        edges = rng.uniform(-radius / 2.0, radius / 2.0, size=(p, n))
        cubes.append(affine_cube(space, origin, edges))
    return cubes
