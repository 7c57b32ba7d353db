"""Differential spaces (S, C^inf(S)) modelled inside R^n."""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..smooth.nodes import Node, as_node
from ..smooth.smooth_map import (
    SmoothMap,
    as_points,
    compose,
    constant,
    coordinate,
    shift_coordinates,
    stack,
)
from ..utils.errors import (
    DimensionMismatchError,
    DiffSpaceError,
    MembershipError,
    SpaceConstructionError,
)
from ..utils.logger import get_logger
from .predicates import AllOf, Everything, Predicate, unit_interval_predicate
from .sampler import Sampler

logger = get_logger(__name__)

MEMBERSHIP_TOLERANCE = 1e-8
EQUALITY_TOLERANCE = 1e-9

# Fixed stream used only to validate a definition at construction time.
_VALIDATION_SEED = 0
_VALIDATION_COUNT = 64

PointLike = Union[Sequence[float], np.ndarray]


@dataclass(frozen=True, eq=False)
class SpaceModel:
    """A subset S of R^n with the differential structure generated by ``generators``."""

    name: str
    ambient_dim: int
    membership: Predicate
    sampler: Sampler
    generators: Tuple[SmoothMap, ...]
    tolerance: float = MEMBERSHIP_TOLERANCE
    locally_closed: bool = True
    base: Optional["SpaceModel"] = None

    def contains(self, x: PointLike) -> Union[bool, np.ndarray]:
        points, single = as_points(x, self.ambient_dim)
        inside = self.membership.contains(points, self.tolerance)
        return bool(inside[0]) if single else inside

    def violation(self, x: PointLike) -> np.ndarray:
        points, _ = as_points(x, self.ambient_dim)
        return self.membership.violation(points)

    def require_member(self, x: PointLike, what: str = "point") -> np.ndarray:
        """Return the points as an (N, n) array, raising if any lies outside S."""
        points, _ = as_points(x, self.ambient_dim)
        inside = self.membership.contains(points, self.tolerance)
        if not np.all(inside):
            bad = points[~inside][0]
            raise MembershipError(
                f"{what} {np.array2string(bad, precision=6)} is not in {self.name}"
            )
        return points

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return self.sampler.sample(count, rng)

    def sample_near(
        self,
        center: PointLike,
        radius: float,
        rng: np.random.Generator,
        count: int = 64,
        depth: int = 6,
    ) -> np.ndarray:
        """Points of S within ``radius`` of ``center``, excluding the center itself.

        Combines a deterministic log-stratified radial grid (radii radius * 10^-k)
        with random draws in the ball and branch samples that fall inside it.
        """
        c = np.asarray(center, dtype=float).reshape(self.ambient_dim)
        n = self.ambient_dim
        if n == 0:
            return np.zeros((0, 0))
        axes = np.vstack([np.eye(n), -np.eye(n)])
        if n == 2:
            angles = np.arange(8) * np.pi / 4.0
            axes = np.vstack([axes, np.column_stack([np.cos(angles), np.sin(angles)])])
        levels = 0.999 * radius * 10.0 ** -np.arange(depth)
        grid = (c + levels[:, None, None] * axes[None, :, :]).reshape(-1, n)

        directions = rng.normal(size=(count, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        scales = radius * rng.random(count) ** (1.0 / n)
        ball = c + scales[:, None] * directions

        branch = self.sample(count * 4, rng)
        candidates = np.vstack([grid, ball, branch])
        distance = np.linalg.norm(candidates - c, axis=1)
        keep = (distance <= radius) & (distance > 0.0)
        candidates = candidates[keep]
        if candidates.shape[0] == 0:
            return candidates
        candidates = candidates[self.membership.contains(candidates, self.tolerance)]
        return np.unique(candidates, axis=0)

    def element(self, representative: Union[SmoothMap, Node, float]) -> "StructureElement":
        if not isinstance(representative, SmoothMap):
            representative = SmoothMap(self.ambient_dim, (as_node(representative),))
        return StructureElement(representative, self)

    def coordinate(self, index: int) -> "StructureElement":
        return StructureElement(coordinate(index, self.ambient_dim), self)

    def unit(self) -> "StructureElement":
        """The constant function 1 on S."""
        return StructureElement(constant(1.0, self.ambient_dim), self)

    @cached_property
    def signature(self) -> Tuple[object, ...]:
        """Name, dimension, rendered membership and rendered generators."""
        return (
            self.name,
            self.ambient_dim,
            self.membership.render(),
            tuple(str(g) for g in self.generators),
        )

    def same_as(self, other: "SpaceModel") -> bool:
        return self is other or self.signature == other.signature

    @cached_property
    def interval_product(self) -> "SpaceModel":
        return _build_interval_product(self)

    def __repr__(self) -> str:
        return f"SpaceModel(name={self.name!r}, ambient_dim={self.ambient_dim})"


@dataclass(frozen=True, eq=False)
class StructureElement:
    """A function on S given by an ambient representative."""

    representative: SmoothMap
    space: SpaceModel

    def __post_init__(self):
        rep = self.representative
        if not rep.is_scalar or rep.input_dim != self.space.ambient_dim:
            raise DimensionMismatchError(
                f"Element of {self.space.name} must be a scalar map on R^{self.space.ambient_dim}, "
                f"got R^{rep.input_dim} -> R^{rep.output_dim}"
            )

    @property
    def node(self) -> Node:
        return self.representative.node

    def __call__(self, x: PointLike) -> Union[float, np.ndarray]:
        values = self.representative.evaluate(x)
        return float(values[0]) if values.ndim == 1 else values[:, 0]

    def equals_on(
        self,
        other: "StructureElement",
        rng: Optional[np.random.Generator] = None,
        count: int = 256,
        tol: float = EQUALITY_TOLERANCE,
    ) -> bool:
        """Extensional equality on sampled points of S."""
        rng = rng if rng is not None else np.random.default_rng(_VALIDATION_SEED)
        points = self.space.sample(count, rng)
        if points.shape[0] == 0:
            return True
        mine = self.representative.evaluate_batch(points)
        theirs = other.representative.evaluate_batch(points)
        return bool(np.max(np.abs(mine - theirs)) <= tol)

    def _combine(self, other: Union["StructureElement", float], op) -> "StructureElement":
        if isinstance(other, StructureElement):
            if not self.space.same_as(other.space):
                raise DiffSpaceError(f"Elements of {self.space.name} and {other.space.name}")
            other_rep: Union[SmoothMap, float] = other.representative
        else:
            other_rep = float(other)
        return StructureElement(op(self.representative, other_rep), self.space)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._combine(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._combine(other, lambda a, b: b * a)

    def __neg__(self):
        return StructureElement(-self.representative, self.space)

    def __str__(self) -> str:
        return str(self.representative)


def make_space(
    ambient_dim: int,
    membership: Optional[Predicate],
    sampler: Sampler,
    generators: Sequence[SmoothMap],
    name: str = "S",
    tolerance: float = MEMBERSHIP_TOLERANCE,
    locally_closed: bool = True,
    base: Optional[SpaceModel] = None,
) -> SpaceModel:
    """Build a space and validate its sampler and generators on a fixed sample."""
    if not generators:
        raise SpaceConstructionError(f"Space {name} needs at least one generator")
    for g in generators:
        if g.input_dim != ambient_dim or not g.is_scalar:
            raise SpaceConstructionError(
                f"Generator {g} of {name} must be a scalar map on R^{ambient_dim}"
            )
    if sampler.ambient_dim != ambient_dim:
        raise SpaceConstructionError(
            f"Sampler of {name} produces points in R^{sampler.ambient_dim}, "
            f"expected R^{ambient_dim}"
        )
    space = SpaceModel(
        name=name,
        ambient_dim=ambient_dim,
        membership=membership if membership is not None else Everything(),
        sampler=sampler,
        generators=tuple(generators),
        tolerance=tolerance,
        locally_closed=locally_closed,
        base=base,
    )

    points = sampler.sample(_VALIDATION_COUNT, np.random.default_rng(_VALIDATION_SEED))
    if points.shape[0]:
        inside = space.membership.contains(points, tolerance)
        if not np.all(inside):
            bad = points[~inside][0]
            raise SpaceConstructionError(
                f"Sampler of {name} produced {np.array2string(bad, precision=6)} outside the space"
            )
        try:
            for g in generators:
                values = g.evaluate_batch(points)
                if not np.all(np.isfinite(values)):
                    raise SpaceConstructionError(f"Generator {g} of {name} is not finite on S")
        except DiffSpaceError as e:
            if isinstance(e, SpaceConstructionError):
                raise
            raise SpaceConstructionError(f"Generator of {name} undefined on S: {e}") from e

    logger.debug(f"Built space {name} in R^{ambient_dim} with {len(generators)} generators")
    return space


def coordinate_generators(ambient_dim: int) -> Tuple[SmoothMap, ...]:
    return tuple(coordinate(i, ambient_dim) for i in range(ambient_dim))


def generated_element(
    space: SpaceModel, outer: SmoothMap, indices: Sequence[int]
) -> StructureElement:
    """outer(g_{i_1}, ..., g_{i_k}) for the selected generators of the space."""
    if outer.input_dim != len(indices):
        raise DimensionMismatchError(
            f"Outer map takes {outer.input_dim} arguments, {len(indices)} generators selected"
        )
    if not indices:
        value = float(outer.evaluate(np.zeros(0))[0])
        return StructureElement(constant(value, space.ambient_dim), space)
    selected = stack([space.generators[i] for i in indices])
    return StructureElement(compose(outer, selected), space)


def compose_elements(outer: SmoothMap, elements: Sequence[StructureElement]) -> StructureElement:
    """outer(e_1, ..., e_k) for elements of one space (closure under smooth outer functions)."""
    if not elements:
        raise DimensionMismatchError("No elements to compose with")
    space = elements[0].space
    inner = stack([e.representative for e in elements])
    return StructureElement(compose(outer, inner), space)


def product_with_interval(space: SpaceModel) -> SpaceModel:
    """I x S with coordinates (t, x); generators t and the lifted generators of S.

    Built once per space instance.
    """
    return space.interval_product


def _build_interval_product(space: SpaceModel) -> SpaceModel:
    dim = space.ambient_dim + 1
    membership = AllOf((unit_interval_predicate(), space.membership.shifted(1)))
    generators = (coordinate(0, dim),) + tuple(
        shift_coordinates(g, 1, dim) for g in space.generators
    )
    return make_space(
        dim,
        membership,
        space.sampler.product_with_interval(),
        generators,
        name=f"I x {space.name}",
        tolerance=space.tolerance,
        locally_closed=space.locally_closed,
        base=space,
    )
